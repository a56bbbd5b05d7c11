#include "geotrack/png_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

#include <png.h>

namespace geotrack {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::vector<unsigned char> to_bytes(const GrayImage& img) {
  if (img.width < 1 || img.height < 1) {
    throw std::invalid_argument("png: cannot encode an empty image");
  }
  std::vector<unsigned char> bytes(img.values.size());
  for (std::size_t i = 0; i < img.values.size(); ++i) {
    bytes[i] = static_cast<unsigned char>(std::lround(std::clamp(img.values[i], 0.0, 255.0)));
  }
  return bytes;
}

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* sink = static_cast<std::vector<unsigned char>*>(png_get_io_ptr(png));
  sink->insert(sink->end(), data, data + length);
}

void flush_noop(png_structp) {}

void encode_to(png_structp png, png_infop info, const GrayImage& img) {
  const auto bytes = to_bytes(img);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(y) * img.width));
  }
  png_write_end(png, nullptr);
}

}  // namespace

GrayImage read_gray_png(const std::string& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw std::runtime_error("png: cannot open " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: failed to allocate read struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png: failed to allocate info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png: failed to decode " + path);
  }

  png_init_io(png, file.get());
  png_read_info(png, info);

  // Normalize every input to 8-bit gray.
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  const png_byte color_type = png_get_color_type(png, info);
  if (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
      color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  }
  png_read_update_info(png, info);

  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  std::vector<unsigned char> row(png_get_rowbytes(png, info));

  GrayImage img(width, height);
  for (int y = 0; y < height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < width; ++x) img.at(x, y) = row[x];
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void write_gray_png(const std::string& path, const GrayImage& img) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw std::runtime_error("png: cannot create " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: failed to allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: failed to allocate info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png: failed to encode " + path);
  }

  png_init_io(png, file.get());
  encode_to(png, info, img);
  png_destroy_write_struct(&png, &info);
}

std::vector<unsigned char> encode_gray_png(const GrayImage& img) {
  std::vector<unsigned char> sink;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: failed to allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: failed to allocate info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png: in-memory encoding failed");
  }

  png_set_write_fn(png, &sink, append_bytes, flush_noop);
  encode_to(png, info, img);
  png_destroy_write_struct(&png, &info);
  return sink;
}

void write_mask_png(const std::string& path, const BinaryMask& mask) {
  GrayImage img(mask.width, mask.height);
  for (std::size_t i = 0; i < mask.bits.size(); ++i) img.values[i] = mask.bits[i] ? 255.0 : 0.0;
  write_gray_png(path, img);
}

}  // namespace geotrack
