#include "geotrack/overlay.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include "geotrack/png_io.hpp"

namespace geotrack {
namespace {

std::string base64(const std::vector<unsigned char>& data) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < data.size(); i += 3) {
    const unsigned b0 = data[i];
    const unsigned b1 = i + 1 < data.size() ? data[i + 1] : 0;
    const unsigned b2 = i + 2 < data.size() ? data[i + 2] : 0;
    const unsigned triple = (b0 << 16) | (b1 << 8) | b2;
    out.push_back(alphabet[(triple >> 18) & 0x3F]);
    out.push_back(alphabet[(triple >> 12) & 0x3F]);
    out.push_back(i + 1 < data.size() ? alphabet[(triple >> 6) & 0x3F] : '=');
    out.push_back(i + 2 < data.size() ? alphabet[triple & 0x3F] : '=');
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

void circle(std::string& svg, const std::string& cls, const Point2D& p, double r,
            const std::string& fill, const std::string& stroke) {
  svg += "  <circle class=\"" + cls + "\" cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"" +
         fmt(r) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string render_overlay(const GrayImage* background, int width, int height,
                           const FrameDetections& pred, const FrameDetections& truth,
                           const EvalConfig& cfg) {
  if (background) {
    width = background->width;
    height = background->height;
  }
  const FrameScore score = match_frame(pred, truth, cfg);
  std::vector<char> pred_matched(pred.points.size(), 0);
  std::vector<char> truth_matched(truth.points.size(), 0);
  for (const auto& m : score.matches) {
    pred_matched[m.pred_index] = 1;
    truth_matched[m.truth_index] = 1;
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
  if (background) {
    svg += "  <image width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" href=\"data:image/png;base64," + base64(encode_gray_png(*background)) + "\"/>\n";
  } else {
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#101018\"/>\n";
  }

  // Blue ring for every truth point; red fill marks false negatives.
  for (std::size_t j = 0; j < truth.points.size(); ++j) {
    circle(svg, "truth", truth.points[j], 6.0, "none", "blue");
  }
  for (std::size_t j = 0; j < truth.points.size(); ++j) {
    if (!truth_matched[j]) circle(svg, "fn", truth.points[j], 3.0, "red", "none");
  }
  for (std::size_t i = 0; i < pred.points.size(); ++i) {
    if (pred_matched[i]) {
      circle(svg, "tp", pred.points[i], 3.0, "green", "none");
    } else {
      circle(svg, "fp", pred.points[i], 3.0, "yellow", "none");
    }
  }

  svg += "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"#e8e8e8\">\n";
  svg += "    <text x=\"8\" y=\"16\">blue: ground truth (" + std::to_string(truth.points.size()) +
         ")</text>\n";
  svg += "    <text x=\"8\" y=\"32\">green: true positive (" + std::to_string(score.tp) +
         ")</text>\n";
  svg += "    <text x=\"8\" y=\"48\">yellow: false positive (" + std::to_string(score.fp) +
         ")</text>\n";
  svg += "    <text x=\"8\" y=\"64\">red: false negative (" + std::to_string(score.fn) +
         ")</text>\n";
  svg += "  </g>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace geotrack
