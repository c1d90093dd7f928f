#include "panolayout/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace panolayout {

namespace {

constexpr double kPi = 3.14159265358979323846;

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double noise01(int x, int y, uint64_t seed) {
  uint64_t h = splitmix64(seed ^ (static_cast<uint64_t>(x) * 0x9E3779B97F4A7C15ULL));
  h = splitmix64(h ^ (static_cast<uint64_t>(y) * 0xC2B2AE3D27D4EB4FULL));
  return (h >> 11) * (1.0 / 9007199254740992.0);
}

struct V2 {
  double x, y;
};

}  // namespace

RoomSpec random_room(uint64_t seed, int n_walls) {
  if (n_walls != 4 && n_walls != 6 && n_walls != 8 && n_walls != 10)
    throw std::invalid_argument("random_room: n_walls must be 4, 6, 8 or 10");
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  // base cuboid extents: front (+y), left (-x), back (-y), right (+x)
  double a = uniform(2.6, 3.4);
  double b = uniform(2.6, 3.4);
  double c = uniform(2.6, 3.4);
  double d = uniform(2.6, 3.4);
  // counterclockwise floor plan, starting at the top-left corner
  std::vector<V2> verts = {{-b, a}, {-b, -c}, {d, -c}, {d, a}};
  const V2 dir_in[4] = {{-1, 0}, {0, -1}, {1, 0}, {0, 1}};
  const V2 dir_out[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
  const double bound_in[4] = {b, c, d, a};
  const double bound_out[4] = {a, b, c, d};

  int notches = (n_walls - 4) / 2;
  std::array<int, 4> ids = {0, 1, 2, 3};
  for (int i = 3; i > 0; i--) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(ids[i], ids[pick(rng)]);
  }
  std::vector<int> chosen(ids.begin(), ids.begin() + notches);
  std::sort(chosen.begin(), chosen.end());
  // cut sizes keep every wall intercept magnitude >= 2.0
  std::vector<double> s_in(notches), s_out(notches);
  for (int k = 0; k < notches; k++) {
    s_in[k] = uniform(0.5, bound_in[chosen[k]] - 2.0);
    s_out[k] = uniform(0.5, bound_out[chosen[k]] - 2.0);
  }
  for (int k = notches - 1; k >= 0; k--) {  // descending keeps indices valid
    int v = chosen[k];
    V2 p = verts[v];
    V2 p1 = {p.x - s_in[k] * dir_in[v].x, p.y - s_in[k] * dir_in[v].y};
    V2 p2 = {p1.x + s_out[k] * dir_out[v].x, p1.y + s_out[k] * dir_out[v].y};
    V2 p3 = {p.x + s_out[k] * dir_out[v].x, p.y + s_out[k] * dir_out[v].y};
    verts.erase(verts.begin() + v);
    verts.insert(verts.begin() + v, {p1, p2, p3});
  }

  int nv = static_cast<int>(verts.size());
  int front = -1;
  for (int k = 0; k < nv; k++) {
    const V2& p = verts[k];
    const V2& q = verts[(k + 1) % nv];
    if (p.y == q.y && p.y > 0 && std::min(p.x, q.x) <= 0 &&
        std::max(p.x, q.x) >= 0)
      front = k;
  }
  if (front < 0) throw std::logic_error("random_room: no front wall");

  RoomSpec spec;
  spec.rng_seed = seed;
  spec.params.camera_height = kCameraHeight;
  spec.params.room_height = kCameraHeight * uniform(1.5, 2.2);
  spec.params.wall_distances.resize(nv);
  for (int k = 0; k < nv; k++) {
    const V2& p = verts[(front + k) % nv];
    const V2& q = verts[(front + k + 1) % nv];
    bool horizontal = p.y == q.y;
    if (horizontal != (k % 2 == 0))
      throw std::logic_error("random_room: wall orientation parity broken");
    spec.params.wall_distances[k] = horizontal ? p.y : p.x;
  }
  if (!layout_valid(spec.params))
    throw std::logic_error("random_room: generated layout invalid");
  return spec;
}

double shade_level(int cls) {
  switch (cls) {
    case 0: return 0.85;  // ceiling
    case 1: return 0.55;  // wall
    default: return 0.25;  // floor
  }
}

int shade_class(double value) {
  int best = 0;
  double best_d = 1e300;
  for (int cls = 0; cls < 3; cls++) {
    double d = std::fabs(value - shade_level(cls));
    if (d < best_d) best_d = d, best = cls;
  }
  return best;
}

RenderResult render_equirect(const RoomSpec& spec, int width, int height) {
  const LayoutParams& T = spec.params;
  if (!layout_valid(T))
    throw std::invalid_argument("render_equirect: invalid layout");
  int n = T.n_walls();
  std::vector<ColumnProfile> prof(width);
  for (int x = 0; x < width; x++) {
    double lon = (x + 0.5) / width * 2 * kPi - kPi;
    prof[x] = column_profile(T, lon);
  }
  // visible surface id per pixel: walls 0..n-1, floor n, ceiling n+1
  std::vector<int> id(static_cast<size_t>(width) * height);
  for (int y = 0; y < height; y++) {
    double lat = kPi / 2 - (y + 0.5) / height * kPi;
    for (int x = 0; x < width; x++) {
      int cls = classify_latitude(prof[x], lat);
      id[static_cast<size_t>(y) * width + x] =
          cls == 0 ? n + 1 : (cls == 2 ? n : prof[x].wall_index);
    }
  }

  RenderResult out;
  out.pano.width = width;
  out.pano.height = height;
  out.pano.channels = 1;
  out.pano.data.assign(id.size(), 0.0);
  int radius = std::max(1, static_cast<int>(std::lround(spec.line_width / 2)));
  for (int y = 0; y < height; y++) {
    for (int x = 0; x < width; x++) {
      int self = id[static_cast<size_t>(y) * width + x];
      double value;
      if (spec.style == RenderStyle::Wireframe) {
        bool stroke = false;
        for (int dy = -radius; dy <= radius && !stroke; dy++) {
          int yy = std::min(std::max(y + dy, 0), height - 1);
          for (int dx = -radius; dx <= radius && !stroke; dx++) {
            int xx = (x + dx + width) % width;  // longitude wraps
            if (id[static_cast<size_t>(yy) * width + xx] != self) stroke = true;
          }
        }
        value = stroke ? 0.08 : 0.9;
      } else {
        int cls = self == n + 1 ? 0 : (self == n ? 2 : 1);
        value = shade_level(cls);
        if (spec.style == RenderStyle::TexturedNoise)
          value += (noise01(x, y, spec.rng_seed) - 0.5) * 0.16;
        value = std::min(std::max(value, 0.0), 1.0);
      }
      out.pano.at(x, y) = value;
    }
  }
  out.gt = layout_to_corners(T);
  return out;
}

LineTargets oracle_targets(const LayoutParams& T, int size, int bin_scale,
                           double decay) {
  auto lines = corners_to_tile_lines(layout_to_corners(T), size);
  LineTargets targets;
  for (int f = 0; f < kFaceCount; f++) {
    std::vector<double> ph, pv, pc;
    for (const auto& ln : lines[f]) {
      double bin = line_to_bin(ln, size, size, bin_scale);
      if (ln.kind == LineKind::Horizontal)
        ph.push_back(bin);
      else if (ln.kind == LineKind::Vertical)
        pv.push_back(bin);
      else
        pc.push_back(bin);
    }
    int len_hv = size / bin_scale;
    int len_c = 2 * (size + size) / bin_scale;
    targets[f].H = smooth_target(ph, len_hv, decay, false);
    targets[f].V = smooth_target(pv, len_hv, decay, false);
    targets[f].C = smooth_target(pc, len_c, decay, true);
    targets[f].bin_scale = bin_scale;
  }
  return targets;
}

}  // namespace panolayout
