#include "geotrack/labeling.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace geotrack {

std::size_t BinaryMask::count() const {
  std::size_t n = 0;
  for (auto b : bits) n += b != 0;
  return n;
}

WindowPatch normalize_window(const GrayImage& img, int cx, int cy, int m) {
  if (m < 1) throw std::invalid_argument("normalize_window: m must be >= 1");
  if (!img.contains(cx, cy)) {
    throw std::invalid_argument("normalize_window: center lies outside the image");
  }
  const int x0 = std::max(0, cx - m);
  const int y0 = std::max(0, cy - m);
  const int x1 = std::min(img.width - 1, cx + m);
  const int y1 = std::min(img.height - 1, cy + m);

  WindowPatch patch;
  patch.x0 = x0;
  patch.y0 = y0;
  patch.values = GrayImage(x1 - x0 + 1, y1 - y0 + 1);

  double lo = img.at(x0, y0);
  double hi = lo;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      lo = std::min(lo, img.at(x, y));
      hi = std::max(hi, img.at(x, y));
    }
  }
  if (hi > lo) {
    const double span = hi - lo;
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        patch.values.at(x - x0, y - y0) = (img.at(x, y) - lo) / span;
      }
    }
  }
  return patch;
}

BinaryMask binarize(const GrayImage& window) {
  BinaryMask mask(window.width, window.height);
  for (int y = 0; y < window.height; ++y) {
    for (int x = 0; x < window.width; ++x) {
      if (window.at(x, y) > 0.5) mask.set(x, y);
    }
  }
  return mask;
}

BinaryMask dilate_circular(const BinaryMask& mask, int radius) {
  if (radius < 1) throw std::invalid_argument("dilate_circular: radius must be >= 1");
  std::vector<std::pair<int, int>> disc;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) disc.emplace_back(dx, dy);
    }
  }

  BinaryMask out(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.test(x, y)) continue;
      for (const auto& [dx, dy] : disc) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx >= 0 && nx < mask.width && ny >= 0 && ny < mask.height) out.set(nx, ny);
      }
    }
  }
  return out;
}

BinaryMask make_shape_label(const GrayImage& img, const std::vector<std::pair<int, int>>& centers,
                            int m) {
  std::vector<std::size_t> offenders;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!img.contains(centers[i].first, centers[i].second)) offenders.push_back(i);
  }
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "make_shape_label: centers outside the image at indices";
    for (auto i : offenders) msg << ' ' << i;
    throw std::invalid_argument(msg.str());
  }

  BinaryMask label(img.width, img.height);
  for (const auto& [cx, cy] : centers) {
    const WindowPatch patch = normalize_window(img, cx, cy, m);
    const BinaryMask local = dilate_circular(binarize(patch.values));
    for (int y = 0; y < local.height; ++y) {
      for (int x = 0; x < local.width; ++x) {
        if (local.test(x, y)) label.set(patch.x0 + x, patch.y0 + y);
      }
    }
  }
  return label;
}

}  // namespace geotrack
