#pragma once

#include <string>
#include <vector>

#include "geotrack/image.hpp"

namespace geotrack {

/// Reads a PNG as 8-bit grayscale (color and palette inputs are converted,
/// 16-bit is narrowed). Values land in [0, 255].
GrayImage read_gray_png(const std::string& path);

/// Writes an 8-bit grayscale PNG; values are clamped to [0, 255] and
/// rounded.
void write_gray_png(const std::string& path, const GrayImage& img);

/// In-memory 8-bit grayscale PNG encoding (used for SVG embedding).
std::vector<unsigned char> encode_gray_png(const GrayImage& img);

/// Mask as a 0/255 grayscale PNG.
void write_mask_png(const std::string& path, const BinaryMask& mask);

}  // namespace geotrack
