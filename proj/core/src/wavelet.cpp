#include "geotrack/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geotrack {
namespace {

GrayImage pad_to_even(const GrayImage& img) {
  const int w = img.width + (img.width % 2);
  const int h = img.height + (img.height % 2);
  if (w == img.width && h == img.height) return img;
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    const int sy = std::min(y, img.height - 1);
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = img.at(std::min(x, img.width - 1), sy);
    }
  }
  return out;
}

struct Component {
  std::vector<int> pixels;  // linear indices
  double peak = 0.0;
};

// 8-connected flood fill over the thresholded image.
std::vector<Component> connected_components(const GrayImage& img, double threshold) {
  const int w = img.width;
  const int h = img.height;
  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<Component> components;
  std::vector<int> stack;

  for (int start = 0; start < w * h; ++start) {
    if (seen[start] || !(img.values[start] > threshold)) continue;
    Component comp;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      comp.pixels.push_back(idx);
      comp.peak = std::max(comp.peak, img.values[idx]);
      const int x = idx % w;
      const int y = idx / w;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          const int nidx = ny * w + nx;
          if (!seen[nidx] && img.values[nidx] > threshold) {
            seen[nidx] = 1;
            stack.push_back(nidx);
          }
        }
      }
    }
    components.push_back(std::move(comp));
  }
  return components;
}

}  // namespace

void DetectorConfig::validate() const {
  if (!(hf_gain >= 1.0)) throw std::invalid_argument("hf_gain must be >= 1");
  if (!(intensity_threshold > 0.0 && intensity_threshold < 1.0)) {
    throw std::invalid_argument("intensity_threshold must lie in (0, 1)");
  }
  if (min_component_area < 1) throw std::invalid_argument("min_component_area must be >= 1");
  if (max_candidates_per_frame < 1) {
    throw std::invalid_argument("max_candidates_per_frame must be >= 1");
  }
}

Subbands dwt2_haar(const GrayImage& img) {
  if (img.width % 2 != 0 || img.height % 2 != 0) {
    throw std::invalid_argument("dwt2_haar: image dimensions must be even");
  }
  const int hw = img.width / 2;
  const int hh = img.height / 2;
  Subbands sb{GrayImage(hw, hh), GrayImage(hw, hh), GrayImage(hw, hh), GrayImage(hw, hh)};
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double a = img.at(2 * x, 2 * y);
      const double b = img.at(2 * x + 1, 2 * y);
      const double c = img.at(2 * x, 2 * y + 1);
      const double d = img.at(2 * x + 1, 2 * y + 1);
      sb.ll.at(x, y) = (a + b + c + d) / 2.0;
      sb.lh.at(x, y) = (a + b - c - d) / 2.0;
      sb.hl.at(x, y) = (a - b + c - d) / 2.0;
      sb.hh.at(x, y) = (a - b - c + d) / 2.0;
    }
  }
  return sb;
}

GrayImage idwt2_haar(const Subbands& sb) {
  const int hw = sb.ll.width;
  const int hh = sb.ll.height;
  const auto same = [&](const GrayImage& p) { return p.width == hw && p.height == hh; };
  if (!same(sb.lh) || !same(sb.hl) || !same(sb.hh)) {
    throw std::invalid_argument("idwt2_haar: sub-band planes have mismatched dimensions");
  }
  GrayImage img(hw * 2, hh * 2);
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double ll = sb.ll.at(x, y);
      const double lh = sb.lh.at(x, y);
      const double hl = sb.hl.at(x, y);
      const double hhv = sb.hh.at(x, y);
      img.at(2 * x, 2 * y) = (ll + lh + hl + hhv) / 2.0;
      img.at(2 * x + 1, 2 * y) = (ll + lh - hl - hhv) / 2.0;
      img.at(2 * x, 2 * y + 1) = (ll - lh + hl - hhv) / 2.0;
      img.at(2 * x + 1, 2 * y + 1) = (ll - lh - hl + hhv) / 2.0;
    }
  }
  return img;
}

Subbands enhance(Subbands sb, const DetectorConfig& cfg) {
  cfg.validate();
  for (GrayImage* plane : {&sb.lh, &sb.hl, &sb.hh}) {
    for (double& v : plane->values) v *= cfg.hf_gain;
  }
  return sb;
}

std::vector<Point2D> detect_candidates(const GrayImage& img, const DetectorConfig& cfg) {
  cfg.validate();
  if (img.width < 1 || img.height < 1) return {};

  const GrayImage padded = pad_to_even(img);
  GrayImage enhanced = idwt2_haar(enhance(dwt2_haar(padded), cfg));

  // Crop back to the original size.
  if (enhanced.width != img.width || enhanced.height != img.height) {
    GrayImage cropped(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) cropped.at(x, y) = enhanced.at(x, y);
    }
    enhanced = std::move(cropped);
  }

  const auto [lo_it, hi_it] = std::minmax_element(enhanced.values.begin(), enhanced.values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return {};  // flat image
  for (double& v : enhanced.values) v = (v - lo) / (hi - lo);

  auto components = connected_components(enhanced, cfg.intensity_threshold);
  std::erase_if(components, [&](const Component& c) {
    return static_cast<int>(c.pixels.size()) < cfg.min_component_area;
  });
  // Stable: equal peaks keep scanline discovery order.
  std::stable_sort(components.begin(), components.end(),
                   [](const Component& a, const Component& b) { return a.peak > b.peak; });
  if (static_cast<int>(components.size()) > cfg.max_candidates_per_frame) {
    components.resize(cfg.max_candidates_per_frame);
  }

  std::vector<Point2D> candidates;
  candidates.reserve(components.size());
  for (const auto& comp : components) {
    double wsum = 0.0, xsum = 0.0, ysum = 0.0;
    for (int idx : comp.pixels) {
      const double w = enhanced.values[idx];
      wsum += w;
      xsum += w * (idx % enhanced.width);
      ysum += w * (idx / enhanced.width);
    }
    candidates.push_back({xsum / wsum, ysum / wsum, Provenance::Detected});
  }
  return candidates;
}

}  // namespace geotrack
