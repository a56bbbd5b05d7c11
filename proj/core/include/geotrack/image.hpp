#pragma once

#include <cstdint>
#include <vector>

namespace geotrack {

/// Row-major grayscale raster with real-valued intensities.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }

  bool contains(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Row-major boolean raster.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  bool test(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool value = true) {
    bits[static_cast<std::size_t>(y) * width + x] = value ? 1 : 0;
  }

  std::size_t count() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
};

}  // namespace geotrack
