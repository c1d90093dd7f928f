#include "panolayout/hough.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panolayout {

double hough_classic(const FeatureMap& X, double rho, double theta) {
  int w = X.width, h = X.height;
  double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  double ct = std::cos(theta), st = std::sin(theta);
  // line: p(t) = rho * (-st, ct) + t * (ct, st), raster coords
  double px = -st * rho + cx, py = ct * rho + cy;
  // clip parameter range to the raster rectangle [0, w-1] x [0, h-1]
  double t0 = -1e300, t1 = 1e300;
  auto clip = [&](double p, double d, double lo, double hi) {
    if (std::fabs(d) < 1e-15) {
      if (p < lo || p > hi) t0 = 1, t1 = 0;  // parallel and outside
      return;
    }
    double a = (lo - p) / d, b = (hi - p) / d;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  };
  clip(px, ct, 0, w - 1);
  clip(py, st, 0, h - 1);
  if (t0 > t1) return 0;
  double sum = 0;
  int steps = static_cast<int>(std::floor(t1 - t0));
  for (int k = 0; k <= steps; k++) {
    double x = px + (t0 + k) * ct, y = py + (t0 + k) * st;
    // bilinear with zero-weight guard at the far raster edge
    int x0 = static_cast<int>(std::floor(x));
    int y0 = static_cast<int>(std::floor(y));
    double fx = x - x0, fy = y - y0;
    for (int dy = 0; dy < 2; dy++)
      for (int dx = 0; dx < 2; dx++) {
        double wgt = (dx ? fx : 1 - fx) * (dy ? fy : 1 - fy);
        int xi = x0 + dx, yi = y0 + dy;
        if (wgt == 0 || xi < 0 || xi >= w || yi < 0 || yi >= h) continue;
        sum += wgt * X.at(xi, yi);
      }
  }
  return sum;
}

ImagePoint center_bin_to_endpoint(int idx, int h, int w) {
  if (idx < 0 || idx >= 2 * (h + w))
    throw std::out_of_range("center_bin_to_endpoint: bad index");
  double hw = w / 2.0, hh = h / 2.0;
  if (idx < h) return {hw, idx - hh + 1};                       // right edge
  if (idx < h + w) return {hw - 1 - (idx - h), hh};             // bottom
  if (idx < 2 * h + w) return {-hw, hh - 1 - (idx - h - w)};    // left
  return {idx - 2 * h - w - hw + 1, -hh};                       // top
}

double border_arc_from_direction(double dx, double dy, int h, int w) {
  double hw = w / 2.0, hh = h / 2.0;
  double tx = dx != 0 ? hw / std::fabs(dx) : 1e300;
  double ty = dy != 0 ? hh / std::fabs(dy) : 1e300;
  double s;
  if (tx <= ty) {
    double yb = tx * dy;
    s = dx > 0 ? yb + hh - 1                    // right edge
               : h + w + (hh - 1 - yb);         // left edge
  } else {
    double xb = ty * dx;
    s = dy > 0 ? h + (hw - 1 - xb)              // bottom edge
               : 2 * h + w + (xb + hw - 1);     // top edge
  }
  double period = 2.0 * (h + w);
  s = std::fmod(s, period);
  return s < 0 ? s + period : s;
}

// Interpolated sum along the half-ray from the continuous image center
// (raster ((w-1)/2, (h-1)/2)) to border bin idx; x-major when |dy| <= |dx|.
static double c_ray_sum(const FeatureMap& X, int idx) {
  int w = X.width, h = X.height;
  ImagePoint e = center_bin_to_endpoint(idx, h, w);
  double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  double dx = e.qx, dy = e.qy;  // center is the origin of centered coords
  double sum = 0;
  // the continuous center lies between pixels, so integer major-axis
  // positions sit at half-integer offsets from it
  if (std::fabs(dy) <= std::fabs(dx)) {
    int dir = dx > 0 ? 1 : -1;
    double slope = dy / dx;
    int steps = w / 2;
    for (int k = 1; k <= steps; k++) {
      double x = cx + dir * (k - 0.5);
      double y = cy + (x - cx) * slope;
      int y0 = static_cast<int>(std::floor(y));
      double f = y - y0;
      int xi = static_cast<int>(std::lround(x));
      if (y0 >= 0 && y0 < h && 1 - f > 0) sum += (1 - f) * X.at(xi, y0);
      if (y0 + 1 >= 0 && y0 + 1 < h && f > 0) sum += f * X.at(xi, y0 + 1);
    }
  } else {
    int dir = dy > 0 ? 1 : -1;
    double slope = dx / dy;
    int steps = h / 2;
    for (int k = 1; k <= steps; k++) {
      double y = cy + dir * (k - 0.5);
      double x = cx + (y - cy) * slope;
      int x0 = static_cast<int>(std::floor(x));
      double f = x - x0;
      int yi = static_cast<int>(std::lround(y));
      if (x0 >= 0 && x0 < w && 1 - f > 0) sum += (1 - f) * X.at(x0, yi);
      if (x0 + 1 >= 0 && x0 + 1 < w && f > 0) sum += f * X.at(x0 + 1, yi);
    }
  }
  return sum;
}

static std::vector<double> aggregate(const std::vector<double>& v, int k) {
  if (k == 1) return v;
  std::vector<double> out(v.size() / k, 0.0);
  for (size_t i = 0; i < out.size(); i++) {
    double s = 0;
    for (int j = 0; j < k; j++) s += v[i * k + j];
    out[i] = s / k;
  }
  return out;
}

HoughVectors dmht(const FeatureMap& X, int bin_scale) {
  int w = X.width, h = X.height;
  if (bin_scale < 1 || h % bin_scale != 0 || w % bin_scale != 0)
    throw std::invalid_argument("dmht: bin_scale must divide the map size");
  std::vector<double> H(h, 0.0), V(w, 0.0), C(2 * (h + w), 0.0);
  for (int y = 0; y < h; y++) {
    double row = 0;
    for (int x = 0; x < w; x++) {
      double val = X.at(x, y);
      row += val;
      V[x] += val;
    }
    H[y] = row;
  }
  for (size_t i = 0; i < C.size(); i++) C[i] = c_ray_sum(X, static_cast<int>(i));
  HoughVectors out;
  out.H = aggregate(H, bin_scale);
  out.V = aggregate(V, bin_scale);
  out.C = aggregate(C, bin_scale);
  out.bin_scale = bin_scale;
  return out;
}

double line_to_bin_continuous(const ManhattanLine& line, int h, int w,
                              int bin_scale) {
  double k = bin_scale;
  switch (line.kind) {
    case LineKind::Horizontal: return (line.pos + (h - k) / 2.0) / k;
    case LineKind::Vertical: return (line.pos + (w - k) / 2.0) / k;
    case LineKind::Center: {
      double b = (line.pos - (k - 1) / 2.0) / k;
      double period = 2.0 * (h + w) / k;
      b = std::fmod(b, period);
      return b < 0 ? b + period : b;
    }
  }
  return 0;
}

int line_to_bin(const ManhattanLine& line, int h, int w, int bin_scale) {
  double b = line_to_bin_continuous(line, h, w, bin_scale);
  long r = std::lround(b);
  long len = (line.kind == LineKind::Horizontal ? h
              : line.kind == LineKind::Vertical ? w
                                                : 2 * (h + w)) /
             bin_scale;
  if (line.kind == LineKind::Center) return static_cast<int>(r % len);
  return static_cast<int>(std::min(std::max(r, 0L), len - 1));
}

double interp_vector(const std::vector<double>& v, double bin, bool cyclic) {
  int n = static_cast<int>(v.size());
  double b = bin;
  if (cyclic) {
    b = std::fmod(b, n);
    if (b < 0) b += n;
  }
  int i0 = static_cast<int>(std::floor(b));
  double f = b - i0;
  int ia, ib;
  if (cyclic) {
    ia = ((i0 % n) + n) % n;
    ib = (ia + 1) % n;
  } else {
    ia = std::min(std::max(i0, 0), n - 1);
    ib = std::min(std::max(i0 + 1, 0), n - 1);
  }
  return (1 - f) * v[ia] + f * v[ib];
}

}  // namespace panolayout
