#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace panolayout {

// Row-major interleaved raster with double samples in [0,1].
// Used both for panoramas (width = 2*height, row 0 = latitude +90deg side)
// and for square cubemap tiles.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<double> data;

  Image() = default;
  Image(int w, int h, int c = 1, double fill = 0.0)
      : width(w), height(h), channels(c),
        data(static_cast<size_t>(w) * h * c, fill) {}

  double& at(int x, int y, int c = 0) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  double at(int x, int y, int c = 0) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  bool empty() const { return data.empty(); }
  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

using EquirectImage = Image;  // invariant: width == 2 * height
using CubemapTile = Image;    // invariant: square, 90deg FoV

// Luma conversion (Rec.601); grayscale input passes through.
Image to_gray(const Image& img);

// Bilinear sample at a continuous pixel-center position. Columns wrap
// (panorama longitude), rows clamp (latitude).
double sample_wrap_clamp(const Image& img, double x, double y, int c = 0);

// Bilinear sample with clamping on both axes (tiles).
double sample_clamp(const Image& img, double x, double y, int c = 0);

}  // namespace panolayout
