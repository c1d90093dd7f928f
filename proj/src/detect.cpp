#include "panolayout/detect.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace panolayout {

namespace {

constexpr double kPi = 3.14159265358979323846;

Image gaussian5(const Image& in) {
  // separable 5x5, sigma 1, replicated borders
  double w[3] = {1.0, std::exp(-0.5), std::exp(-2.0)};
  double norm = w[0] + 2 * (w[1] + w[2]);
  for (double& x : w) x /= norm;
  int W = in.width, H = in.height;
  Image tmp = in, out = in;
  auto cl = [](int v, int n) { return std::min(std::max(v, 0), n - 1); };
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++) {
      double s = 0;
      for (int k = -2; k <= 2; k++)
        s += w[std::abs(k)] * in.at(cl(x + k, W), y);
      tmp.at(x, y) = s;
    }
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++) {
      double s = 0;
      for (int k = -2; k <= 2; k++)
        s += w[std::abs(k)] * tmp.at(x, cl(y + k, H));
      out.at(x, y) = s;
    }
  return out;
}

}  // namespace

EdgeMap canny(const Image& gray, double low, double high) {
  if (gray.channels != 1)
    throw std::invalid_argument("canny: expects a single-channel image");
  int W = gray.width, H = gray.height;
  Image blur = gaussian5(gray);
  std::vector<double> mag(static_cast<size_t>(W) * H, 0.0);
  std::vector<double> ang(static_cast<size_t>(W) * H, 0.0);
  auto cl = [](int v, int n) { return std::min(std::max(v, 0), n - 1); };
  auto b = [&](int x, int y) { return blur.at(cl(x, W), cl(y, H)); };
  double max_mag = 0;
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++) {
      double gx = -b(x - 1, y - 1) + b(x + 1, y - 1) - 2 * b(x - 1, y) +
                  2 * b(x + 1, y) - b(x - 1, y + 1) + b(x + 1, y + 1);
      double gy = -b(x - 1, y - 1) - 2 * b(x, y - 1) - b(x + 1, y - 1) +
                  b(x - 1, y + 1) + 2 * b(x, y + 1) + b(x + 1, y + 1);
      double m = std::hypot(gx, gy);
      mag[static_cast<size_t>(y) * W + x] = m;
      ang[static_cast<size_t>(y) * W + x] = std::atan2(gy, gx);
      max_mag = std::max(max_mag, m);
    }
  auto m_at = [&](int x, int y) {
    if (x < 0 || x >= W || y < 0 || y >= H) return 0.0;
    return mag[static_cast<size_t>(y) * W + x];
  };
  // non-maximum suppression along the gradient, 4 direction sectors
  std::vector<uint8_t> thin(mag.size(), 0);
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++) {
      double m = mag[static_cast<size_t>(y) * W + x];
      if (m <= 0) continue;
      double a = ang[static_cast<size_t>(y) * W + x];
      if (a < 0) a += kPi;  // gradient direction mod pi
      int sector = static_cast<int>(std::floor(a / (kPi / 4) + 0.5)) % 4;
      double n1, n2;
      switch (sector) {
        case 0: n1 = m_at(x - 1, y), n2 = m_at(x + 1, y); break;
        case 1: n1 = m_at(x + 1, y + 1), n2 = m_at(x - 1, y - 1); break;
        case 2: n1 = m_at(x, y - 1), n2 = m_at(x, y + 1); break;
        default: n1 = m_at(x - 1, y + 1), n2 = m_at(x + 1, y - 1); break;
      }
      if (m >= n1 && m >= n2) thin[static_cast<size_t>(y) * W + x] = 1;
    }
  // hysteresis from strong seeds over weak 8-neighbors
  double t_high = high * max_mag, t_low = low * max_mag;
  EdgeMap edges;
  edges.width = W;
  edges.height = H;
  edges.channels = 1;
  edges.data.assign(mag.size(), 0.0);
  // featureless image: max gradient is pure rounding noise, not structure
  if (max_mag < 1e-12) return edges;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++) {
      size_t i = static_cast<size_t>(y) * W + x;
      if (thin[i] && mag[i] >= t_high && edges.data[i] == 0.0) {
        edges.data[i] = 1.0;
        stack.push_back({x, y});
        while (!stack.empty()) {
          auto [px, py] = stack.back();
          stack.pop_back();
          for (int dy = -1; dy <= 1; dy++)
            for (int dx = -1; dx <= 1; dx++) {
              int nx = px + dx, ny = py + dy;
              if (nx < 0 || nx >= W || ny < 0 || ny >= H) continue;
              size_t j = static_cast<size_t>(ny) * W + nx;
              if (thin[j] && mag[j] >= t_low && edges.data[j] == 0.0) {
                edges.data[j] = 1.0;
                stack.push_back({nx, ny});
              }
            }
        }
      }
    }
  return edges;
}

namespace {

struct Accumulator {
  int n_rho = 0, rho_off = 0;
  std::vector<int> acc;  // [rho][theta], 180 theta bins

  explicit Accumulator(int w, int h) {
    int max_rho = static_cast<int>(std::ceil(std::hypot(w, h) / 2)) + 1;
    rho_off = max_rho;
    n_rho = 2 * max_rho + 1;
    acc.assign(static_cast<size_t>(n_rho) * 180, 0);
  }
  int& at(int r, int t) { return acc[static_cast<size_t>(r) * 180 + t]; }
  int rho_index(double cx, double cy, double sin_t, double cos_t) const {
    return static_cast<int>(std::lround(-cx * sin_t + cy * cos_t)) + rho_off;
  }
};

struct Trig {
  double s[180], c[180];
  Trig() {
    for (int t = 0; t < 180; t++) {
      s[t] = std::sin(t * kPi / 180);
      c[t] = std::cos(t * kPi / 180);
      // snap the axis angles exact so half-integer offsets from the image
      // center do not split their votes between two rho bins
      for (double* v : {&s[t], &c[t]}) {
        if (std::fabs(*v) < 1e-12) *v = 0.0;
        if (std::fabs(std::fabs(*v) - 1.0) < 1e-12) *v = *v < 0 ? -1.0 : 1.0;
      }
    }
  }
};
const Trig& trig() {
  static Trig t;
  return t;
}

}  // namespace

std::vector<HoughLine> ht_standard(const EdgeMap& edges, int threshold) {
  int W = edges.width, H = edges.height;
  double cx0 = (W - 1) / 2.0, cy0 = (H - 1) / 2.0;
  Accumulator A(W, H);
  const Trig& tg = trig();
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++) {
      if (edges.at(x, y) == 0.0) continue;
      double cx = x - cx0, cy = y - cy0;
      for (int t = 0; t < 180; t++)
        A.at(A.rho_index(cx, cy, tg.s[t], tg.c[t]), t)++;
    }
  std::vector<HoughLine> out;
  for (int r = 0; r < A.n_rho; r++)
    for (int t = 0; t < 180; t++) {
      int v = A.at(r, t);
      if (v <= threshold) continue;
      // 4-neighbor maximum; ties broken toward the lower index
      if (r > 0 && A.at(r - 1, t) >= v) continue;
      if (r + 1 < A.n_rho && A.at(r + 1, t) > v) continue;
      if (t > 0 && A.at(r, t - 1) >= v) continue;
      if (t + 1 < 180 && A.at(r, t + 1) > v) continue;
      out.push_back({static_cast<double>(r - A.rho_off), t * kPi / 180, v});
    }
  std::sort(out.begin(), out.end(), [](const HoughLine& a, const HoughLine& b) {
    if (a.votes != b.votes) return a.votes > b.votes;
    if (a.rho != b.rho) return a.rho < b.rho;
    return a.theta < b.theta;
  });
  return out;
}

std::vector<LineSegment> ht_probabilistic(const EdgeMap& edges, int threshold,
                                          double min_len, double max_gap,
                                          uint64_t seed) {
  int W = edges.width, H = edges.height;
  double cx0 = (W - 1) / 2.0, cy0 = (H - 1) / 2.0;
  std::vector<uint8_t> present(static_cast<size_t>(W) * H, 0);
  std::vector<uint8_t> voted(present.size(), 0);
  std::vector<std::pair<int, int>> points;
  for (int y = 0; y < H; y++)
    for (int x = 0; x < W; x++)
      if (edges.at(x, y) != 0.0) {
        present[static_cast<size_t>(y) * W + x] = 1;
        points.push_back({x, y});
      }
  Accumulator A(W, H);
  const Trig& tg = trig();
  std::mt19937_64 rng(seed);
  std::vector<LineSegment> out;
  int gap_steps = static_cast<int>(std::floor(max_gap));

  while (!points.empty()) {
    std::uniform_int_distribution<size_t> pick(0, points.size() - 1);
    size_t idx = pick(rng);
    auto [x, y] = points[idx];
    points[idx] = points.back();
    points.pop_back();
    size_t pi = static_cast<size_t>(y) * W + x;
    if (!present[pi]) continue;
    double cx = x - cx0, cy = y - cy0;
    int best_t = 0, best_v = -1;
    for (int t = 0; t < 180; t++) {
      int v = ++A.at(A.rho_index(cx, cy, tg.s[t], tg.c[t]), t);
      if (v > best_v) best_v = v, best_t = t;
    }
    voted[pi] = 1;
    if (best_v < threshold) continue;

    // trace the supporting run through the current edge set
    double dx = tg.c[best_t], dy = tg.s[best_t];
    std::array<std::pair<int, int>, 2> ends = {{{x, y}, {x, y}}};
    std::vector<std::pair<int, int>> run = {{x, y}};
    for (int side = 0; side < 2; side++) {
      double sgn = side == 0 ? 1.0 : -1.0;
      int gap = 0;
      for (int step = 1;; step++) {
        int px = static_cast<int>(std::lround(x + sgn * step * dx));
        int py = static_cast<int>(std::lround(y + sgn * step * dy));
        if (px < 0 || px >= W || py < 0 || py >= H) break;
        if (present[static_cast<size_t>(py) * W + px]) {
          gap = 0;
          ends[side] = {px, py};
          run.push_back({px, py});
        } else if (++gap > gap_steps) {
          break;
        }
      }
    }
    double len = std::hypot(ends[0].first - ends[1].first,
                            ends[0].second - ends[1].second);
    // retire the traced pixels either way; un-vote the ones that had voted
    for (auto [rx, ry] : run) {
      size_t ri = static_cast<size_t>(ry) * W + rx;
      if (!present[ri]) continue;
      present[ri] = 0;
      if (voted[ri]) {
        double rcx = rx - cx0, rcy = ry - cy0;
        for (int t = 0; t < 180; t++)
          A.at(A.rho_index(rcx, rcy, tg.s[t], tg.c[t]), t)--;
        voted[ri] = 0;
      }
    }
    if (len >= min_len)
      out.push_back({ends[1].first - cx0, ends[1].second - cy0,
                     ends[0].first - cx0, ends[0].second - cy0});
  }
  return out;
}

std::vector<HoughLine> segments_to_lines(
    const std::vector<LineSegment>& segs) {
  std::vector<HoughLine> out;
  out.reserve(segs.size());
  for (const auto& s : segs) {
    double dx = s.x1 - s.x0, dy = s.y1 - s.y0;
    double len = std::hypot(dx, dy);
    if (len <= 0) continue;
    double theta = std::atan2(dy, dx);
    if (theta < 0) theta += kPi;
    if (theta >= kPi) theta -= kPi;
    double mx = (s.x0 + s.x1) / 2, my = (s.y0 + s.y1) / 2;
    double rho = -mx * std::sin(theta) + my * std::cos(theta);
    out.push_back({rho, theta, static_cast<int>(std::lround(len))});
  }
  return out;
}

std::vector<ManhattanLine> filter_manhattan(const std::vector<HoughLine>& in,
                                            int h, int w) {
  int max_votes = 0;
  for (const auto& ln : in) max_votes = std::max(max_votes, ln.votes);
  std::vector<ManhattanLine> out;
  if (max_votes <= 0) return out;
  for (const auto& ln : in) {
    double conf = static_cast<double>(ln.votes) / max_votes;
    double s = std::sin(ln.theta), c = std::cos(ln.theta);
    if (std::fabs(c) > 0 && std::fabs(s / c) < 0.05) {
      out.push_back({LineKind::Horizontal, ln.rho / c, conf});
    } else if (std::fabs(s) > 0 && std::fabs(c / s) < 0.05) {
      out.push_back({LineKind::Vertical, -ln.rho / s, conf});
    } else if (std::fabs(ln.rho) < 5.0) {
      out.push_back(
          {LineKind::Center, border_arc_from_direction(c, s, h, w), conf});
      out.push_back(
          {LineKind::Center, border_arc_from_direction(-c, -s, h, w), conf});
    }
  }
  return out;
}

std::vector<ManhattanLine> group_and_select(
    const std::vector<ManhattanLine>& lines, int size) {
  // groups: H above/below, V left/right, C per border side
  std::array<const ManhattanLine*, 8> best{};
  for (const auto& ln : lines) {
    int g;
    switch (ln.kind) {
      case LineKind::Horizontal: g = ln.pos < 0 ? 0 : 1; break;
      case LineKind::Vertical: g = ln.pos < 0 ? 2 : 3; break;
      default: {
        int side = static_cast<int>(std::floor(ln.pos / size));
        g = 4 + std::min(std::max(side, 0), 3);
        break;
      }
    }
    if (!best[g] || ln.conf > best[g]->conf) best[g] = &ln;
  }
  std::vector<ManhattanLine> out;
  for (const ManhattanLine* p : best)
    if (p) out.push_back(*p);
  return out;
}

HoughVectors vectors_from_lines(const std::vector<ManhattanLine>& lines,
                                int h, int w, int bin_scale, double decay) {
  HoughVectors v;
  v.bin_scale = bin_scale;
  v.H.assign(h / bin_scale, 0.0);
  v.V.assign(w / bin_scale, 0.0);
  v.C.assign(2 * (h + w) / bin_scale, 0.0);
  for (const auto& ln : lines) {
    double b = line_to_bin_continuous(ln, h, w, bin_scale);
    std::vector<double>* vec = ln.kind == LineKind::Horizontal ? &v.H
                               : ln.kind == LineKind::Vertical ? &v.V
                                                               : &v.C;
    bool cyclic = ln.kind == LineKind::Center;
    int n = static_cast<int>(vec->size());
    for (int i = 0; i < n; i++) {
      double d = std::fabs(i - b);
      if (cyclic) d = std::min(d, n - d);
      (*vec)[i] = std::max((*vec)[i], ln.conf * std::exp(-decay * d));
    }
  }
  return v;
}

std::vector<std::pair<int, double>> find_peaks(const std::vector<double>& v,
                                               const PeakConfig& cfg) {
  int n = static_cast<int>(v.size());
  struct Peak {
    int idx;
    double height, prominence;
  };
  std::vector<Peak> peaks;
  for (int i = 1; i + 1 < n; i++) {
    if (!(v[i] > v[i - 1] && v[i] > v[i + 1])) continue;
    // base on each side: lowest point before the next higher sample
    double left_min = v[i], right_min = v[i];
    for (int j = i - 1; j >= 0; j--) {
      left_min = std::min(left_min, v[j]);
      if (v[j] > v[i]) break;
    }
    for (int j = i + 1; j < n; j++) {
      right_min = std::min(right_min, v[j]);
      if (v[j] > v[i]) break;
    }
    double prom = v[i] - std::max(left_min, right_min);
    if (prom >= cfg.min_prominence) peaks.push_back({i, v[i], prom});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.height != b.height) return a.height > b.height;
    return a.idx < b.idx;
  });
  std::vector<std::pair<int, double>> out;
  for (const Peak& p : peaks) {
    if (static_cast<int>(out.size()) >= cfg.max_peaks) break;
    bool ok = true;
    for (const auto& q : out)
      if (std::abs(q.first - p.idx) < cfg.min_separation) ok = false;
    if (ok) out.push_back({p.idx, p.height});
  }
  return out;
}

}  // namespace panolayout
