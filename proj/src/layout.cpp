#include "panolayout/layout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panolayout {

namespace {

// ---------------------------------------------------------------------------
// Forward-mode scalar carrying partials w.r.t. (wall_0..wall_{n-1}, height).
// Fixed-width gradient array; unused slots stay zero.

constexpr int kMaxParams = 11;  // up to 10 walls + room height

struct Dual {
  double v = 0;
  std::array<double, kMaxParams> g{};

  Dual() = default;
  Dual(double x) : v(x) {}
  static Dual var(double x, int idx) {
    Dual d(x);
    d.g[idx] = 1.0;
    return d;
  }
};

inline Dual operator+(const Dual& a, const Dual& b) {
  Dual r(a.v + b.v);
  for (int i = 0; i < kMaxParams; i++) r.g[i] = a.g[i] + b.g[i];
  return r;
}
inline Dual operator-(const Dual& a, const Dual& b) {
  Dual r(a.v - b.v);
  for (int i = 0; i < kMaxParams; i++) r.g[i] = a.g[i] - b.g[i];
  return r;
}
inline Dual operator-(const Dual& a) {
  Dual r(-a.v);
  for (int i = 0; i < kMaxParams; i++) r.g[i] = -a.g[i];
  return r;
}
inline Dual operator*(const Dual& a, const Dual& b) {
  Dual r(a.v * b.v);
  for (int i = 0; i < kMaxParams; i++) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  return r;
}
inline Dual operator/(const Dual& a, const Dual& b) {
  Dual r(a.v / b.v);
  double inv2 = 1.0 / (b.v * b.v);
  for (int i = 0; i < kMaxParams; i++)
    r.g[i] = (a.g[i] * b.v - a.v * b.g[i]) * inv2;
  return r;
}

inline double val(double x) { return x; }
inline double val(const Dual& x) { return x.v; }

template <typename S>
inline S fabs_s(const S& x) {
  return val(x) < 0 ? S(0.0) - x : x;
}

// ---------------------------------------------------------------------------
// Wireframe construction and per-face projection, templated so the same
// arithmetic yields values (double) and gradients (Dual).

template <typename S>
struct Pt3 {
  S x, y, z;
};

template <typename S>
struct Seg3 {
  Pt3<S> a, b;
  int axis;  // 0 = x-parallel, 1 = y, 2 = z
};

// corner i joins wall i and wall i+1
template <typename S>
Pt3<S> corner_xy(const std::vector<S>& walls, int i, const S& z) {
  int n = static_cast<int>(walls.size());
  int j = (i + 1) % n;
  if (i % 2 == 0) return {walls[j], walls[i], z};
  return {walls[i], walls[j], z};
}

template <typename S>
std::vector<Seg3<S>> wireframe_segments(const std::vector<S>& walls,
                                        const S& ceil_z, double cam_h) {
  int n = static_cast<int>(walls.size());
  std::vector<Seg3<S>> segs;
  segs.reserve(3 * n);
  S floor_z(-cam_h);
  for (int i = 0; i < n; i++) {
    int j = (i + 1) % n;
    int ring_axis = (i % 2 == 0) ? 1 : 0;  // ring edge i->i+1 runs along this
    Pt3<S> ci_c = corner_xy(walls, i, ceil_z);
    Pt3<S> cj_c = corner_xy(walls, j, ceil_z);
    Pt3<S> ci_f = corner_xy(walls, i, floor_z);
    Pt3<S> cj_f = corner_xy(walls, j, floor_z);
    segs.push_back({ci_c, cj_c, ring_axis});
    segs.push_back({ci_f, cj_f, ring_axis});
    segs.push_back({ci_f, ci_c, 2});
  }
  return segs;
}

LineKind classify_kind(Face f, int axis) {
  switch (f) {
    case Face::Front:
    case Face::Back:
      return axis == 0   ? LineKind::Horizontal
             : axis == 1 ? LineKind::Center
                         : LineKind::Vertical;
    case Face::Right:
    case Face::Left:
      return axis == 1   ? LineKind::Horizontal
             : axis == 0 ? LineKind::Center
                         : LineKind::Vertical;
    case Face::Up:
    case Face::Down:
      return axis == 0   ? LineKind::Horizontal
             : axis == 1 ? LineKind::Vertical
                         : LineKind::Center;
  }
  return LineKind::Horizontal;
}

// Continuous border arc position of the half-ray through (dx, dy); same
// enumeration as center_bin_to_endpoint, branch decided on values.
template <typename S>
S border_arc_s(const S& dx, const S& dy, int h, int w) {
  double hw = w / 2.0, hh = h / 2.0;
  S adx = fabs_s(dx), ady = fabs_s(dy);
  S s(0.0);
  if (hw * val(ady) <= hh * val(adx)) {  // hits a vertical (left/right) edge
    S yb = dy * (hw / 1.0) / adx;
    s = val(dx) > 0 ? yb + (hh - 1) : S(h + w + hh - 1) - yb;
  } else {
    S xb = dx * (hh / 1.0) / ady;
    s = val(dy) > 0 ? S(h + hw - 1) - xb : xb + (2 * h + w + hw - 1);
  }
  double period = 2.0 * (h + w);
  double shift = std::floor(val(s) / period) * period;
  return s - shift;
}

template <typename S>
struct FaceLine {
  int face;
  LineKind kind;
  S coord;  // row / column offset, or border arc position
};

constexpr double kClipEps = 1e-9;
constexpr double kMinSpan = 1e-7;

template <typename S>
void project_segments(const std::vector<Seg3<S>>& segs, int size,
                      std::vector<FaceLine<S>>& out) {
  double half = size / 2.0;
  for (int fi = 0; fi < kFaceCount; fi++) {
    Face face = kAllFaces[fi];
    FaceBasis basis = face_basis(face);
    for (const auto& seg : segs) {
      S rax, ray_, raz, rbx, rby, rbz;
      face_observe(basis, seg.a.x, seg.a.y, seg.a.z, rax, ray_, raz);
      face_observe(basis, seg.b.x, seg.b.y, seg.b.z, rbx, rby, rbz);
      // clip the parameter range to the face frustum: ry >= eps, |rx| <= ry,
      // |rz| <= ry. All constraints are linear along the segment.
      double t0 = 0, t1 = 1;
      auto clip = [&](double ga, double gb) {
        if (t0 > t1) return;
        double d = gb - ga;
        if (std::fabs(d) < 1e-300) {
          if (ga < 0) t0 = 1, t1 = 0;
          return;
        }
        double tc = ga / (ga - gb);
        if (d > 0)
          t0 = std::max(t0, tc);
        else
          t1 = std::min(t1, tc);
      };
      clip(val(ray_) - kClipEps, val(rby) - kClipEps);
      clip(val(ray_) - val(rax), val(rby) - val(rbx));
      clip(val(ray_) + val(rax), val(rby) + val(rbx));
      clip(val(ray_) - val(raz), val(rby) - val(rbz));
      clip(val(ray_) + val(raz), val(rby) + val(rbz));
      if (t1 - t0 < kMinSpan) continue;

      LineKind kind = classify_kind(face, seg.axis);
      auto observe_at = [&](double t, S& rx, S& ry, S& rz) {
        S px = seg.a.x + (seg.b.x - seg.a.x) * S(t);
        S py = seg.a.y + (seg.b.y - seg.a.y) * S(t);
        S pz = seg.a.z + (seg.b.z - seg.a.z) * S(t);
        face_observe(basis, px, py, pz, rx, ry, rz);
      };
      if (kind == LineKind::Horizontal || kind == LineKind::Vertical) {
        S rx, ry, rz;
        observe_at((t0 + t1) / 2, rx, ry, rz);
        S coord = kind == LineKind::Horizontal ? (S(0.0) - rz) * half / ry
                                               : rx * half / ry;
        out.push_back({fi, kind, coord});
      } else {
        // radial line: the projected points share a ray (or two opposite
        // rays when the projection spans the image center)
        S r0x, r0y, r0z, r1x, r1y, r1z;
        observe_at(t0, r0x, r0y, r0z);
        observe_at(t1, r1x, r1y, r1z);
        S q0x = r0x * half / r0y, q0y = (S(0.0) - r0z) * half / r0y;
        S q1x = r1x * half / r1y, q1y = (S(0.0) - r1z) * half / r1y;
        double n0 = std::hypot(val(q0x), val(q0y));
        double n1 = std::hypot(val(q1x), val(q1y));
        double dot = val(q0x) * val(q1x) + val(q0y) * val(q1y);
        if (std::max(n0, n1) < 1e-9) continue;  // projects onto the center
        if (n0 > 1e-9 && n1 > 1e-9 && dot < 0) {
          out.push_back({fi, kind, border_arc_s(q0x, q0y, size, size)});
          out.push_back({fi, kind, border_arc_s(q1x, q1y, size, size)});
        } else if (n0 >= n1) {
          out.push_back({fi, kind, border_arc_s(q0x, q0y, size, size)});
        } else {
          out.push_back({fi, kind, border_arc_s(q1x, q1y, size, size)});
        }
      }
    }
  }
}

template <typename S>
S bin_coordinate(LineKind kind, const S& coord, int size, int bin_scale) {
  double k = bin_scale;
  switch (kind) {
    case LineKind::Horizontal:
    case LineKind::Vertical:
      return (coord + (size - k) / 2.0) / k;
    case LineKind::Center: {
      S b = (coord - (k - 1) / 2.0) / k;
      double period = 2.0 * (size + size) / k;
      double shift = std::floor(val(b) / period) * period;
      return b - shift;
    }
  }
  return S(0.0);
}

// Linear interpolation with clamped or cyclic ends. At exact integer
// positions the slope is the mean of the two adjacent slopes so that a
// target peak has zero gradient.
template <typename S>
S interp_conf(const std::vector<double>& v, const S& bin, bool cyclic) {
  int n = static_cast<int>(v.size());
  double bv = val(bin);
  int i0 = static_cast<int>(std::floor(bv));
  S f = bin - double(i0);
  auto idx = [&](int i) {
    if (cyclic) return ((i % n) + n) % n;
    return std::min(std::max(i, 0), n - 1);
  };
  if (val(f) == 0.0) {
    double slope = (v[idx(i0 + 1)] - v[idx(i0 - 1)]) / 2.0;
    return S(v[idx(i0)]) + f * slope;
  }
  return (S(1.0) - f) * v[idx(i0)] + f * v[idx(i0 + 1)];
}

template <typename S>
std::vector<FaceLine<S>> lines_from_params(const std::vector<S>& walls,
                                           const S& ceil_z, double cam_h,
                                           int size) {
  auto segs = wireframe_segments(walls, ceil_z, cam_h);
  std::vector<FaceLine<S>> lines;
  project_segments(segs, size, lines);
  return lines;
}

template <typename S>
S score_impl(const std::vector<S>& walls, const S& ceil_z, double cam_h,
             const LineTargets& S_vecs, int size, int bin_scale,
             int* n_lines) {
  auto lines = lines_from_params(walls, ceil_z, cam_h, size);
  if (n_lines) *n_lines = static_cast<int>(lines.size());
  S total(0.0);
  for (const auto& ln : lines) {
    S b = bin_coordinate(ln.kind, ln.coord, size, bin_scale);
    const HoughVectors& hv = S_vecs[ln.face];
    const std::vector<double>& vec = ln.kind == LineKind::Horizontal ? hv.H
                                     : ln.kind == LineKind::Vertical ? hv.V
                                                                     : hv.C;
    total = total + interp_conf(vec, b, ln.kind == LineKind::Center);
  }
  return total;
}

int targets_tile_size(const LineTargets& S) {
  return static_cast<int>(S[0].H.size()) * S[0].bin_scale;
}

// -------------------------------------------------------------------------
// Floor-plan polygon checks (axis-aligned edges).

struct Edge2 {
  double x0, y0, x1, y1;
  bool vertical;
};

std::vector<Edge2> polygon_edges(const std::vector<double>& walls) {
  int n = static_cast<int>(walls.size());
  std::vector<Edge2> edges(n);
  for (int i = 0; i < n; i++) {
    auto a = floor_corner(walls, (i + n - 1) % n);
    auto b = floor_corner(walls, i);
    edges[i] = {a[0], a[1], b[0], b[1], i % 2 == 1};  // odd wall: x = const
  }
  return edges;
}

bool ranges_overlap(double a0, double a1, double b0, double b1) {
  if (a0 > a1) std::swap(a0, a1);
  if (b0 > b1) std::swap(b0, b1);
  return a0 <= b1 && b0 <= a1;
}

bool edges_touch(const Edge2& e, const Edge2& f) {
  if (e.vertical && f.vertical)
    return e.x0 == f.x0 && ranges_overlap(e.y0, e.y1, f.y0, f.y1);
  if (!e.vertical && !f.vertical)
    return e.y0 == f.y0 && ranges_overlap(e.x0, e.x1, f.x0, f.x1);
  const Edge2& v = e.vertical ? e : f;
  const Edge2& h = e.vertical ? f : e;
  double ylo = std::min(v.y0, v.y1), yhi = std::max(v.y0, v.y1);
  double xlo = std::min(h.x0, h.x1), xhi = std::max(h.x0, h.x1);
  return v.x0 >= xlo && v.x0 <= xhi && h.y0 >= ylo && h.y0 <= yhi;
}

}  // namespace

std::array<double, 2> floor_corner(const std::vector<double>& walls, int i) {
  int n = static_cast<int>(walls.size());
  int j = (i + 1) % n;
  if (i % 2 == 0) return {walls[j], walls[i]};
  return {walls[i], walls[j]};
}

bool layout_valid(const LayoutParams& T) {
  int n = T.n_walls();
  if (n < 4 || n % 2 != 0 || n > kMaxParams - 1) return false;
  if (!(T.camera_height > 0) || !(T.room_height > T.camera_height))
    return false;
  for (double t : T.wall_distances)
    if (!std::isfinite(t)) return false;
  auto edges = polygon_edges(T.wall_distances);
  for (int i = 0; i < n; i++) {
    const Edge2& e = edges[i];
    double len = e.vertical ? std::fabs(e.y1 - e.y0) : std::fabs(e.x1 - e.x0);
    if (len < 1e-9) return false;
    for (int j = i + 2; j < n; j++) {
      if (i == 0 && j == n - 1) continue;  // adjacent around the wrap
      if (edges_touch(edges[i], edges[j])) return false;
    }
  }
  // camera strictly inside: odd crossings of the +x ray, plus a margin
  int crossings = 0;
  double min_dist = 1e300;
  for (const Edge2& e : edges) {
    if (e.vertical) {
      double ylo = std::min(e.y0, e.y1), yhi = std::max(e.y0, e.y1);
      if (e.x0 > 0 && ylo <= 0 && 0 < yhi) crossings++;
      if (ylo <= 0 && 0 <= yhi) min_dist = std::min(min_dist, std::fabs(e.x0));
    } else {
      double xlo = std::min(e.x0, e.x1), xhi = std::max(e.x0, e.x1);
      if (xlo <= 0 && 0 <= xhi) min_dist = std::min(min_dist, std::fabs(e.y0));
    }
  }
  if (crossings % 2 == 0) return false;
  return min_dist > 1e-6;
}

RoomLayout layout_to_corners(const LayoutParams& T) {
  if (!layout_valid(T))
    throw std::invalid_argument("layout_to_corners: invalid layout");
  int n = T.n_walls();
  double zc = T.room_height - T.camera_height;
  RoomLayout L;
  L.n_walls = n;
  L.corners.resize(2 * n);
  for (int i = 0; i < n; i++) {
    auto c = floor_corner(T.wall_distances, i);
    double lon = std::atan2(c[0], c[1]);
    double horiz = std::hypot(c[0], c[1]);
    L.corners[i] = {lon, std::atan2(zc, horiz)};
    L.corners[n + i] = {lon, std::atan2(-T.camera_height, horiz)};
  }
  return L;
}

std::array<std::vector<ManhattanLine>, kFaceCount> corners_to_tile_lines(
    const RoomLayout& L, int size) {
  int n = L.n_walls;
  if (n < 4 || static_cast<int>(L.corners.size()) != 2 * n)
    throw std::invalid_argument("corners_to_tile_lines: malformed layout");
  // reconstruct the wireframe up to scale; line positions are scale-free
  double ch = kCameraHeight;
  std::vector<double> xs(n), ys(n);
  double zc_sum = 0;
  for (int i = 0; i < n; i++) {
    double lon = L.corners[i][0];
    double lat_c = L.corners[i][1];
    double lat_f = L.corners[n + i][1];
    if (!(lat_f < 0))
      throw std::invalid_argument("corners_to_tile_lines: floor above horizon");
    double horiz = ch / std::tan(-lat_f);
    xs[i] = horiz * std::sin(lon);
    ys[i] = horiz * std::cos(lon);
    zc_sum += horiz * std::tan(lat_c);
  }
  double zc = zc_sum / n;
  std::vector<Seg3<double>> segs;
  segs.reserve(3 * n);
  for (int i = 0; i < n; i++) {
    int j = (i + 1) % n;
    int ring_axis = (i % 2 == 0) ? 1 : 0;
    segs.push_back({{xs[i], ys[i], zc}, {xs[j], ys[j], zc}, ring_axis});
    segs.push_back({{xs[i], ys[i], -ch}, {xs[j], ys[j], -ch}, ring_axis});
    segs.push_back({{xs[i], ys[i], -ch}, {xs[i], ys[i], zc}, 2});
  }
  std::vector<FaceLine<double>> lines;
  project_segments(segs, size, lines);
  std::array<std::vector<ManhattanLine>, kFaceCount> out;
  for (const auto& ln : lines)
    out[ln.face].push_back({ln.kind, ln.coord, 1.0});
  return out;
}

std::vector<double> smooth_target(const std::vector<double>& positions,
                                  int length, double decay, bool cyclic) {
  std::vector<double> v(length, 0.0);
  if (positions.empty()) return v;
  for (int i = 0; i < length; i++) {
    double best = 1e300;
    for (double p : positions) {
      double d = std::fabs(i - p);
      if (cyclic) d = std::min(d, length - d);
      best = std::min(best, d);
    }
    v[i] = std::exp(-decay * best);
  }
  return v;
}

double bce_loss(const std::vector<double>& pred,
                const std::vector<double>& target) {
  if (pred.size() != target.size())
    throw std::invalid_argument("bce_loss: length mismatch");
  const double eps = 1e-7;
  double loss = 0;
  for (size_t i = 0; i < pred.size(); i++) {
    double p = std::min(std::max(pred[i], eps), 1.0 - eps);
    loss -= target[i] * std::log(p) + (1.0 - target[i]) * std::log(1.0 - p);
  }
  return loss;
}

std::vector<ProjectedLine> project_layout(const LayoutParams& T, int size,
                                          int bin_scale) {
  if (!layout_valid(T))
    throw std::invalid_argument("project_layout: invalid layout");
  std::vector<double> walls = T.wall_distances;
  double zc = T.room_height - T.camera_height;
  auto lines = lines_from_params(walls, zc, T.camera_height, size);
  std::vector<ProjectedLine> out;
  out.reserve(lines.size());
  for (const auto& ln : lines)
    out.push_back({ln.face, static_cast<int>(ln.kind),
                   bin_coordinate(ln.kind, ln.coord, size, bin_scale)});
  return out;
}

double score(const LayoutParams& T, const LineTargets& S) {
  int size = targets_tile_size(S);
  std::vector<double> walls = T.wall_distances;
  double zc = T.room_height - T.camera_height;
  return score_impl(walls, zc, T.camera_height, S, size, S[0].bin_scale,
                    nullptr);
}

ScoreGrad score_gradient(const LayoutParams& T, const LineTargets& S) {
  int n = T.n_walls();
  if (n + 1 > kMaxParams)
    throw std::invalid_argument("score_gradient: too many walls");
  int size = targets_tile_size(S);
  std::vector<Dual> walls(n);
  for (int i = 0; i < n; i++) walls[i] = Dual::var(T.wall_distances[i], i);
  Dual zc = Dual::var(T.room_height - T.camera_height, n);
  ScoreGrad sg;
  Dual total = score_impl(walls, zc, T.camera_height, S, size,
                          S[0].bin_scale, &sg.n_lines);
  sg.value = total.v;
  sg.grad.assign(total.g.begin(), total.g.begin() + n + 1);
  return sg;
}

LayoutParams sgd_optimize(const LayoutParams& T0, const LineTargets& S,
                          double lr, int steps) {
  if (!layout_valid(T0))
    throw std::invalid_argument("sgd_optimize: invalid start");
  LayoutParams cur = T0;
  LayoutParams best = cur;
  double best_score = score(cur, S);
  int n = cur.n_walls();
  const double kStencil0 = 0.1;       // initial half-width of the FD stencil
  const double kStencilHalflife = 12; // stencil halves every this many steps
  const double kBeta1 = 0.8, kBeta2 = 0.99;  // moment averaging factors
  const double kStepScale = 2.0;
  std::vector<double> m(n + 1, 0.0), v(n + 1, 0.0);
  for (int k = 0; k < steps; k++) {
    double h = kStencil0 * std::pow(2.0, -k / kStencilHalflife);
    std::vector<double> g(n + 1, 0.0);
    if (h < 1e-5) {
      g = score_gradient(cur, S).grad;
    } else {
      double s0 = 0;
      bool have_s0 = false;
      for (int i = 0; i <= n; i++) {
        LayoutParams P = cur, M = cur;
        (i < n ? P.wall_distances[i] : P.room_height) += h;
        (i < n ? M.wall_distances[i] : M.room_height) -= h;
        bool pv = layout_valid(P), mv = layout_valid(M);
        if (pv && mv) {
          g[i] = (score(P, S) - score(M, S)) / (2 * h);
        } else if (pv || mv) {
          // stencil straddles the valid-layout boundary: one-sided difference
          if (!have_s0) {
            s0 = score(cur, S);
            have_s0 = true;
          }
          g[i] = pv ? (score(P, S) - s0) / h : (s0 - score(M, S)) / h;
        }
      }
    }
    double norm2 = 0;
    for (double x : g) norm2 += x * x;
    if (std::sqrt(norm2) < 1e-12) continue;  // flat here; stencil keeps shrinking
    LayoutParams nxt = cur;
    for (int i = 0; i <= n; i++) {
      m[i] = kBeta1 * m[i] + (1 - kBeta1) * g[i];
      v[i] = kBeta2 * v[i] + (1 - kBeta2) * g[i] * g[i];
      double mh = m[i] / (1 - std::pow(kBeta1, k + 1));
      double vh = v[i] / (1 - std::pow(kBeta2, k + 1));
      double step = kStepScale * lr * mh / (std::sqrt(vh) + 1e-12);
      if (i < n)
        nxt.wall_distances[i] += step;
      else
        nxt.room_height += step;
    }
    if (!layout_valid(nxt)) continue;  // reject steps that break the floor plan
    cur = nxt;
    double sc = score(cur, S);
    if (sc > best_score) {
      best_score = sc;
      best = cur;
    }
  }
  return best;
}

std::optional<std::vector<double>> init_distances(
    const std::array<std::vector<ManhattanLine>, kFaceCount>& lines,
    double camera_height, int size, double max_dist_factor) {
  // horizontal faces in counterclockwise wall order; azimuth convention
  // puts the u=+90deg (Right) view on the -x axis
  const Face order[4] = {Face::Front, Face::Right, Face::Back, Face::Left};
  const double sign[4] = {1, -1, -1, 1};
  std::vector<double> dists(4);
  for (int k = 0; k < 4; k++) {
    const auto& face_lines = lines[static_cast<int>(order[k])];
    double best_conf = -1, best_rho = 0;
    for (const auto& ln : face_lines) {
      if (ln.kind != LineKind::Horizontal || ln.pos <= 0) continue;
      if (ln.conf > best_conf) {
        best_conf = ln.conf;
        best_rho = ln.pos;
      }
    }
    if (best_conf < 0) return std::nullopt;
    double d = camera_height * (size / 2.0) / best_rho;
    if (d > max_dist_factor * camera_height) return std::nullopt;
    dists[k] = sign[k] * d;
  }
  return dists;
}

namespace {

double rect_iou(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  // rectangles as (y_front, x_left, y_back, x_right) signed intercepts
  auto area = [](const std::array<double, 4>& r) {
    return (r[0] - r[2]) * (r[3] - r[1]);
  };
  double ix = std::min(a[3], b[3]) - std::max(a[1], b[1]);
  double iy = std::min(a[0], b[0]) - std::max(a[2], b[2]);
  double inter = std::max(0.0, ix) * std::max(0.0, iy);
  double uni = area(a) + area(b) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

}  // namespace

double init_height(
    const std::array<std::vector<ManhattanLine>, kFaceCount>& lines,
    const std::vector<double>& floor_distances, double camera_height,
    int size) {
  const Face order[4] = {Face::Front, Face::Right, Face::Back, Face::Left};
  double half = size / 2.0;
  std::array<double, 4> ceil_rho{};  // |row offset| of ceiling line per face
  std::array<bool, 4> have{};
  int count = 0;
  for (int k = 0; k < 4; k++) {
    const auto& face_lines = lines[static_cast<int>(order[k])];
    double best_conf = -1, best_rho = 0;
    for (const auto& ln : face_lines) {
      if (ln.kind != LineKind::Horizontal || ln.pos >= 0) continue;
      if (ln.conf > best_conf) {
        best_conf = ln.conf;
        best_rho = -ln.pos;
      }
    }
    if (best_conf >= 0) {
      ceil_rho[k] = best_rho;
      have[k] = true;
      count++;
    }
  }
  if (count == 0)
    throw std::invalid_argument("init_height: no ceiling lines");

  if (count == 4 && floor_distances.size() == 4) {
    std::array<double, 4> fr{
        std::fabs(floor_distances[0]), -std::fabs(floor_distances[1]),
        -std::fabs(floor_distances[2]), std::fabs(floor_distances[3])};
    auto iou_at = [&](double ratio) {
      double zc = ratio * camera_height;
      std::array<double, 4> cr = {zc * half / ceil_rho[0],
                                  -zc * half / ceil_rho[1],
                                  -zc * half / ceil_rho[2],
                                  zc * half / ceil_rho[3]};
      return rect_iou(cr, fr);
    };
    // golden-section maximization on the ratio of ceiling to floor distance
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double lo = 0.25, hi = 4.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = iou_at(x1), f2 = iou_at(x2);
    for (int it = 0; it < 60; it++) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = iou_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = iou_at(x1);
      }
    }
    return camera_height * (1.0 + (lo + hi) / 2);
  }

  // degenerate frame: median of per-face elevation ratios
  std::vector<double> ratios;
  for (int k = 0; k < 4; k++) {
    if (!have[k]) continue;
    double floor_rho = 0;
    if (floor_distances.size() == 4 && floor_distances[k] != 0)
      floor_rho = camera_height * half / std::fabs(floor_distances[k]);
    if (floor_rho <= 0) continue;
    ratios.push_back(ceil_rho[k] / floor_rho);
  }
  if (ratios.empty())
    throw std::invalid_argument("init_height: no usable ceiling/floor pair");
  std::sort(ratios.begin(), ratios.end());
  double med = ratios[ratios.size() / 2];
  if (ratios.size() % 2 == 0)
    med = (ratios[ratios.size() / 2 - 1] + ratios[ratios.size() / 2]) / 2;
  return camera_height * (1.0 + med);
}

}  // namespace panolayout
