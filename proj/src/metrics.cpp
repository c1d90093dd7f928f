#include "panolayout/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panolayout {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::array<double, 2>> polygon_points(
    const std::vector<double>& walls) {
  int n = static_cast<int>(walls.size());
  std::vector<std::array<double, 2>> pts(n);
  for (int i = 0; i < n; i++) pts[i] = floor_corner(walls, i);
  return pts;
}

// Even-odd crossing test with a +x ray. Callers only pass query points that
// are strictly off every grid line, so ties cannot occur.
bool point_in_polygon(const std::vector<std::array<double, 2>>& pts, double x,
                      double y) {
  int n = static_cast<int>(pts.size());
  int crossings = 0;
  for (int i = 0; i < n; i++) {
    const auto& a = pts[(i + n - 1) % n];
    const auto& b = pts[i];
    if (a[0] != b[0]) continue;  // only vertical edges can cross the ray
    double ylo = std::min(a[1], b[1]), yhi = std::max(a[1], b[1]);
    if (a[0] > x && ylo <= y && y < yhi) crossings++;
  }
  return crossings % 2 == 1;
}

struct PlanOverlap {
  double area_a = 0, area_b = 0, inter = 0;
};

// Exact rectilinear polygon boolean: every edge lies on a compressed grid
// line, so cell centers classify whole cells.
PlanOverlap plan_overlap(const LayoutParams& A, const LayoutParams& B) {
  auto pa = polygon_points(A.wall_distances);
  auto pb = polygon_points(B.wall_distances);
  std::vector<double> xs, ys;
  for (const auto& p : pa) xs.push_back(p[0]), ys.push_back(p[1]);
  for (const auto& p : pb) xs.push_back(p[0]), ys.push_back(p[1]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  PlanOverlap o;
  for (size_t i = 0; i + 1 < xs.size(); i++) {
    double cx = (xs[i] + xs[i + 1]) / 2, w = xs[i + 1] - xs[i];
    for (size_t j = 0; j + 1 < ys.size(); j++) {
      double cy = (ys[j] + ys[j + 1]) / 2, h = ys[j + 1] - ys[j];
      bool ia = point_in_polygon(pa, cx, cy);
      bool ib = point_in_polygon(pb, cx, cy);
      double cell = w * h;
      if (ia) o.area_a += cell;
      if (ib) o.area_b += cell;
      if (ia && ib) o.inter += cell;
    }
  }
  return o;
}

std::array<double, 2> corner_to_pixel(const std::array<double, 2>& c,
                                      int width, int height) {
  return {(c[0] + kPi) / (2 * kPi) * width - 0.5,
          (kPi / 2 - c[1]) / kPi * height - 0.5};
}

double wrapped_lon_diff(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, 2 * kPi - d);
}

void ring_error(std::vector<std::array<double, 2>> A,
                std::vector<std::array<double, 2>> B, int width, int height,
                double& total, int& count) {
  double diag = std::hypot(width, height);
  while (!A.empty() && !B.empty()) {
    size_t bi = 0, bj = 0;
    double best = 1e300;
    for (size_t i = 0; i < A.size(); i++)
      for (size_t j = 0; j < B.size(); j++) {
        double d = wrapped_lon_diff(A[i][0], B[j][0]);
        if (d < best) best = d, bi = i, bj = j;
      }
    auto qa = corner_to_pixel(A[bi], width, height);
    auto qb = corner_to_pixel(B[bj], width, height);
    double du = std::fabs(qa[0] - qb[0]);
    du = std::min(du, width - du);
    total += std::hypot(du, qa[1] - qb[1]);
    count++;
    A.erase(A.begin() + bi);
    B.erase(B.begin() + bj);
  }
  total += (A.size() + B.size()) * diag / 8;
  count += static_cast<int>(A.size() + B.size());
}

}  // namespace

double iou2d(const LayoutParams& A, const LayoutParams& B) {
  PlanOverlap o = plan_overlap(A, B);
  double uni = o.area_a + o.area_b - o.inter;
  return uni > 0 ? o.inter / uni : 0.0;
}

double iou3d(const LayoutParams& A, const LayoutParams& B) {
  PlanOverlap o = plan_overlap(A, B);
  double za0 = -A.camera_height, za1 = A.room_height - A.camera_height;
  double zb0 = -B.camera_height, zb1 = B.room_height - B.camera_height;
  double zov = std::max(0.0, std::min(za1, zb1) - std::max(za0, zb0));
  double vol_a = o.area_a * (za1 - za0);
  double vol_b = o.area_b * (zb1 - zb0);
  double inter = o.inter * zov;
  double uni = vol_a + vol_b - inter;
  return uni > 0 ? inter / uni : 0.0;
}

double corner_error(const RoomLayout& A, const RoomLayout& B, int width,
                    int height) {
  auto ring = [](const RoomLayout& L, bool ceiling) {
    int n = L.n_walls;
    std::vector<std::array<double, 2>> r(L.corners.begin() + (ceiling ? 0 : n),
                                         L.corners.begin() +
                                             (ceiling ? n : 2 * n));
    return r;
  };
  double total = 0;
  int count = 0;
  ring_error(ring(A, true), ring(B, true), width, height, total, count);
  ring_error(ring(A, false), ring(B, false), width, height, total, count);
  if (count == 0) return 0;
  double diag = std::hypot(width, height);
  return total / count / diag * 100.0;
}

LayoutParams params_from_corners(const RoomLayout& L, double camera_height) {
  int n = L.n_walls;
  if (n < 4 || n % 2 != 0 || static_cast<int>(L.corners.size()) != 2 * n)
    throw std::invalid_argument("params_from_corners: malformed layout");
  std::vector<double> xs(n), ys(n);
  double zc_sum = 0;
  for (int i = 0; i < n; i++) {
    double lon = L.corners[i][0];
    double lat_c = L.corners[i][1];
    double lat_f = L.corners[n + i][1];
    if (!(lat_f < 0))
      throw std::invalid_argument("params_from_corners: floor above horizon");
    double horiz = camera_height / std::tan(-lat_f);
    xs[i] = horiz * std::sin(lon);
    ys[i] = horiz * std::cos(lon);
    zc_sum += horiz * std::tan(lat_c);
  }
  LayoutParams T;
  T.camera_height = camera_height;
  T.room_height = camera_height + zc_sum / n;
  T.wall_distances.resize(n);
  for (int i = 0; i < n; i++) {
    int prev = (i + n - 1) % n;
    double a = i % 2 == 0 ? ys[prev] : xs[prev];
    double b = i % 2 == 0 ? ys[i] : xs[i];
    double t = (a + b) / 2;
    if (std::fabs(a - b) > 1e-6 * (1.0 + std::fabs(t)))
      throw std::invalid_argument("params_from_corners: corners not rectilinear");
    T.wall_distances[i] = t;
  }
  return T;
}

ColumnProfile column_profile(const LayoutParams& T, double lon) {
  int n = T.n_walls();
  double dx = std::sin(lon), dy = std::cos(lon);
  auto pts = polygon_points(T.wall_distances);
  ColumnProfile p;
  double best_t = 1e300;
  for (int i = 0; i < n; i++) {
    const auto& a = pts[(i + n - 1) % n];
    const auto& b = pts[i];
    double t, lo, hi, hit;
    if (i % 2 == 1) {  // wall x = t_i
      if (std::fabs(dx) < 1e-300) continue;
      t = T.wall_distances[i] / dx;
      lo = std::min(a[1], b[1]), hi = std::max(a[1], b[1]);
      hit = t * dy;
    } else {  // wall y = t_i
      if (std::fabs(dy) < 1e-300) continue;
      t = T.wall_distances[i] / dy;
      lo = std::min(a[0], b[0]), hi = std::max(a[0], b[0]);
      hit = t * dx;
    }
    if (t <= 1e-12 || t >= best_t) continue;
    if (hit < lo || hit > hi) continue;
    best_t = t;
    p.wall_index = i;
  }
  if (p.wall_index < 0)
    throw std::runtime_error("column_profile: ray misses polygon");
  p.wall_dist = best_t;
  p.lat_floor = std::atan2(-T.camera_height, best_t);
  p.lat_ceil = std::atan2(T.room_height - T.camera_height, best_t);
  return p;
}

int classify_latitude(const ColumnProfile& p, double lat) {
  if (lat > p.lat_ceil) return 0;
  if (lat < p.lat_floor) return 2;
  return 1;
}

double ray_depth(const LayoutParams& T, const ColumnProfile& p, double lat) {
  int cls = classify_latitude(p, lat);
  if (cls == 0) return (T.room_height - T.camera_height) / std::sin(lat);
  if (cls == 2) return T.camera_height / -std::sin(lat);
  return p.wall_dist / std::cos(lat);
}

double pixel_error(const RoomLayout& A, const RoomLayout& B, int width,
                   int height) {
  LayoutParams ta = params_from_corners(A);
  LayoutParams tb = params_from_corners(B);
  long long mismatch = 0;
  for (int x = 0; x < width; x++) {
    double lon = (x + 0.5) / width * 2 * kPi - kPi;
    ColumnProfile pa = column_profile(ta, lon);
    ColumnProfile pb = column_profile(tb, lon);
    for (int y = 0; y < height; y++) {
      double lat = kPi / 2 - (y + 0.5) / height * kPi;
      if (classify_latitude(pa, lat) != classify_latitude(pb, lat)) mismatch++;
    }
  }
  return 100.0 * mismatch / (static_cast<double>(width) * height);
}

double delta_i(const LayoutParams& A, const LayoutParams& B, int width,
               int height, int i) {
  double thr = std::pow(1.25, i);
  long long good = 0;
  for (int x = 0; x < width; x++) {
    double lon = (x + 0.5) / width * 2 * kPi - kPi;
    ColumnProfile pa = column_profile(A, lon);
    ColumnProfile pb = column_profile(B, lon);
    for (int y = 0; y < height; y++) {
      double lat = kPi / 2 - (y + 0.5) / height * kPi;
      double da = ray_depth(A, pa, lat);
      double db = ray_depth(B, pb, lat);
      double ratio = std::max(da / db, db / da);
      if (ratio < thr) good++;
    }
  }
  return static_cast<double>(good) / (static_cast<double>(width) * height);
}

MetricsReport evaluate(const LayoutParams& A, const LayoutParams& B, int width,
                       int height) {
  MetricsReport m;
  m.iou3d = iou3d(A, B);
  m.iou2d = iou2d(A, B);
  RoomLayout la = layout_to_corners(A);
  RoomLayout lb = layout_to_corners(B);
  m.corner_error = corner_error(la, lb, width, height);
  m.pixel_error = pixel_error(la, lb, width, height);
  m.delta_1 = delta_i(A, B, width, height, 1);
  return m;
}

}  // namespace panolayout
