#include "panolayout/image.hpp"

#include <algorithm>
#include <cmath>

namespace panolayout {

Image to_gray(const Image& img) {
  if (img.channels == 1) return img;
  Image out(img.width, img.height, 1);
  for (int y = 0; y < img.height; y++)
    for (int x = 0; x < img.width; x++) {
      if (img.channels >= 3) {
        out.at(x, y) = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                       0.114 * img.at(x, y, 2);
      } else {
        out.at(x, y) = img.at(x, y, 0);
      }
    }
  return out;
}

static int wrap_i(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

static int clamp_i(int i, int n) { return std::min(std::max(i, 0), n - 1); }

double sample_wrap_clamp(const Image& img, double x, double y, int c) {
  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  double fx = x - x0, fy = y - y0;
  int xa = wrap_i(x0, img.width), xb = wrap_i(x0 + 1, img.width);
  int ya = clamp_i(y0, img.height), yb = clamp_i(y0 + 1, img.height);
  double top = (1 - fx) * img.at(xa, ya, c) + fx * img.at(xb, ya, c);
  double bot = (1 - fx) * img.at(xa, yb, c) + fx * img.at(xb, yb, c);
  return (1 - fy) * top + fy * bot;
}

double sample_clamp(const Image& img, double x, double y, int c) {
  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  double fx = x - x0, fy = y - y0;
  int xa = clamp_i(x0, img.width), xb = clamp_i(x0 + 1, img.width);
  int ya = clamp_i(y0, img.height), yb = clamp_i(y0 + 1, img.height);
  double top = (1 - fx) * img.at(xa, ya, c) + fx * img.at(xb, ya, c);
  double bot = (1 - fx) * img.at(xa, yb, c) + fx * img.at(xb, yb, c);
  return (1 - fy) * top + fy * bot;
}

}  // namespace panolayout
