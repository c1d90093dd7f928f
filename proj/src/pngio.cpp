#include "panolayout/pngio.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <vector>

namespace panolayout {

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

}  // namespace

Image read_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw std::runtime_error("read_png: cannot open " + path);
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("read_png: init failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("read_png: init failure");
  }
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("read_png: failed to decode " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_uint_32 width = png_get_image_width(png, info);
  png_uint_32 height = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS))
    png_set_strip_alpha(png);
  if (depth == 16) png_set_swap(png);  // little-endian samples below
  png_read_update_info(png, info);

  depth = png_get_bit_depth(png, info);
  int channels = png_get_channels(png, info);
  size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<png_byte> buf(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; y++) rows[y] = buf.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Image img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.channels = channels;
  img.data.resize(static_cast<size_t>(width) * height * channels);
  double scale = depth == 16 ? 65535.0 : 255.0;
  for (png_uint_32 y = 0; y < height; y++) {
    const png_byte* row = rows[y];
    for (size_t i = 0; i < static_cast<size_t>(width) * channels; i++) {
      double v;
      if (depth == 16) {
        v = row[2 * i] | (row[2 * i + 1] << 8);
      } else {
        v = row[i];
      }
      img.data[(static_cast<size_t>(y) * width * channels) + i] = v / scale;
    }
  }
  return img;
}

void write_png(const std::string& path, const Image& img, int bit_depth) {
  if (img.empty()) throw std::runtime_error("write_png: empty image");
  if (img.channels != 1 && img.channels != 3)
    throw std::runtime_error("write_png: expects 1 or 3 channels");
  if (bit_depth != 8 && bit_depth != 16)
    throw std::runtime_error("write_png: bit depth must be 8 or 16");
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw std::runtime_error("write_png: cannot open " + path);
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("write_png: init failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("write_png: init failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("write_png: failed to encode " + path);
  }
  png_init_io(png, fp.get());
  int color = img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  png_set_IHDR(png, info, img.width, img.height, bit_depth, color,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  double scale = bit_depth == 16 ? 65535.0 : 255.0;
  size_t row_samples = static_cast<size_t>(img.width) * img.channels;
  std::vector<png_byte> row(row_samples * (bit_depth / 8));
  for (int y = 0; y < img.height; y++) {
    for (size_t i = 0; i < row_samples; i++) {
      double v = img.data[static_cast<size_t>(y) * row_samples + i];
      v = std::min(std::max(v, 0.0), 1.0);
      unsigned q = static_cast<unsigned>(v * scale + 0.5);
      if (bit_depth == 16) {
        row[2 * i] = static_cast<png_byte>(q >> 8);  // network byte order
        row[2 * i + 1] = static_cast<png_byte>(q & 0xFF);
      } else {
        row[i] = static_cast<png_byte>(q);
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace panolayout
