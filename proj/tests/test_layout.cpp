#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <tuple>

#include "doctest.h"
#include "oracles.hpp"
#include "panolayout/layout.hpp"
#include "panolayout/metrics.hpp"
#include "panolayout/serialize.hpp"
#include "panolayout/synth.hpp"

using namespace panolayout;

namespace {
const double kLn2 = std::log(2.0);

LayoutParams make_layout(std::vector<double> walls, double rh,
                         double ch = kCameraHeight) {
  LayoutParams T;
  T.wall_distances = std::move(walls);
  T.room_height = rh;
  T.camera_height = ch;
  return T;
}
}  // namespace

TEST_CASE("floor corners interleave the wall intercepts") {
  std::vector<double> w = {3, -3, -3, 3};
  CHECK(floor_corner(w, 0) == std::array<double, 2>{-3, 3});
  CHECK(floor_corner(w, 1) == std::array<double, 2>{-3, -3});
  CHECK(floor_corner(w, 2) == std::array<double, 2>{3, -3});
  CHECK(floor_corner(w, 3) == std::array<double, 2>{3, 3});
}

TEST_CASE("layout validity") {
  CHECK(layout_valid(make_layout({3, -3, -3, 3}, 3.2)));
  CHECK(layout_valid(make_layout({3, -3, -3, 3, 1, 1.5}, 3.2)));
  // wrong parity / count
  CHECK(!layout_valid(make_layout({3, -3, -3}, 3.2)));
  CHECK(!layout_valid(make_layout({3, -3, -3, 3, 1}, 3.2)));
  CHECK(!layout_valid(make_layout({3, -3}, 3.2)));
  // ceiling at or below the camera
  CHECK(!layout_valid(make_layout({3, -3, -3, 3}, 1.0)));
  CHECK(!layout_valid(make_layout({3, -3, -3, 3}, 1.6)));
  // camera outside the floor plan
  CHECK(!layout_valid(make_layout({3, 1, -3, 3}, 3.2)));
  // notch collapsing to a zero-length edge, then one whose raised back wall
  // crosses the front wall (self-intersecting floor plan)
  CHECK(!layout_valid(make_layout({3, -3, -3, 3, 3, 1.5}, 3.2)));
  CHECK(!layout_valid(make_layout({3, -3, -3, 1.5, 3.5, 3}, 3.2)));
  // the same raised back wall kept clear of the front wall is a legal alcove
  CHECK(layout_valid(make_layout({3, -3, -3, 3, 3.5, 1.5}, 3.2)));
  // non-finite
  CHECK(!layout_valid(make_layout({3, -3, -3, std::nan("")}, 3.2)));
}

TEST_CASE("panorama corners of a symmetric cuboid") {
  const double a = 2.0;
  LayoutParams T = make_layout({a, -a, -a, a}, 3.2);
  RoomLayout L = layout_to_corners(T);
  REQUIRE(L.n_walls == 4);
  REQUIRE(L.corners.size() == 8);
  const double kPi = 3.14159265358979323846;
  double lat_c = std::atan2(1.6, a * std::sqrt(2.0));
  double lat_f = std::atan2(-1.6, a * std::sqrt(2.0));
  const double lons[4] = {-0.25 * kPi, -0.75 * kPi, 0.75 * kPi, 0.25 * kPi};
  for (int i = 0; i < 4; i++) {
    CHECK(L.corners[i][0] == doctest::Approx(lons[i]).epsilon(1e-12));
    CHECK(L.corners[i][1] == doctest::Approx(lat_c).epsilon(1e-12));
    CHECK(L.corners[4 + i][0] == doctest::Approx(lons[i]).epsilon(1e-12));
    CHECK(L.corners[4 + i][1] == doctest::Approx(lat_f).epsilon(1e-12));
  }
  CHECK_THROWS_AS(layout_to_corners(make_layout({3, 1, -3, 3}, 3.2)),
                  std::invalid_argument);
}

TEST_CASE("tile lines of a wide cuboid, front face") {
  // front wall at y=3, side walls at x=+-2
  LayoutParams T = make_layout({3, -2, -3, 2}, 3.2);
  auto lines = corners_to_tile_lines(layout_to_corners(T), 512);
  std::vector<double> hs, vs, cs;
  for (const auto& ln : lines[static_cast<int>(Face::Front)]) {
    if (ln.kind == LineKind::Horizontal) hs.push_back(ln.pos);
    if (ln.kind == LineKind::Vertical) vs.push_back(ln.pos);
    if (ln.kind == LineKind::Center) cs.push_back(ln.pos);
  }
  std::sort(hs.begin(), hs.end());
  std::sort(vs.begin(), vs.end());
  std::sort(cs.begin(), cs.end());
  REQUIRE(hs.size() == 2);
  REQUIRE(vs.size() == 2);
  REQUIRE(cs.size() == 4);
  double rho = 1.6 * 256 / 3;  // wall-floor row offset
  CHECK(hs[0] == doctest::Approx(-rho).epsilon(1e-9));
  CHECK(hs[1] == doctest::Approx(rho).epsilon(1e-9));
  CHECK(vs[0] == doctest::Approx(-256.0 * 2 / 3).epsilon(1e-9));
  CHECK(vs[1] == doctest::Approx(256.0 * 2 / 3).epsilon(1e-9));
  // side-wall floor/ceiling edges pass through the image center; their
  // border arcs follow from the corner projections at (+-256, +-204.8)
  CHECK(cs[0] == doctest::Approx(50.2).epsilon(1e-9));
  CHECK(cs[1] == doctest::Approx(459.8).epsilon(1e-9));
  CHECK(cs[2] == doctest::Approx(1074.2).epsilon(1e-9));
  CHECK(cs[3] == doctest::Approx(1483.8).epsilon(1e-9));
}

TEST_CASE("tile lines of a small cuboid, up and down faces") {
  // close walls so the ceiling ring enters the up-face frustum
  LayoutParams T = make_layout({1.2, -1.2, -1.2, 1.2}, 3.2);
  auto lines = corners_to_tile_lines(layout_to_corners(T), 512);
  for (Face f : {Face::Up, Face::Down}) {
    std::vector<double> hs, vs, cs;
    for (const auto& ln : lines[static_cast<int>(f)]) {
      if (ln.kind == LineKind::Horizontal) hs.push_back(ln.pos);
      if (ln.kind == LineKind::Vertical) vs.push_back(ln.pos);
      if (ln.kind == LineKind::Center) cs.push_back(ln.pos);
    }
    std::sort(hs.begin(), hs.end());
    std::sort(vs.begin(), vs.end());
    std::sort(cs.begin(), cs.end());
    REQUIRE(hs.size() == 2);
    REQUIRE(vs.size() == 2);
    REQUIRE(cs.size() == 4);
    CHECK(hs[0] == doctest::Approx(-192.0).epsilon(1e-9));
    CHECK(hs[1] == doctest::Approx(192.0).epsilon(1e-9));
    CHECK(vs[0] == doctest::Approx(-192.0).epsilon(1e-9));
    CHECK(vs[1] == doctest::Approx(192.0).epsilon(1e-9));
    // wall-wall verticals exit through the four tile corners
    CHECK(cs[0] == doctest::Approx(511.0).epsilon(1e-9));
    CHECK(cs[1] == doctest::Approx(1023.0).epsilon(1e-9));
    CHECK(cs[2] == doctest::Approx(1535.0).epsilon(1e-9));
    CHECK(cs[3] == doctest::Approx(2047.0).epsilon(1e-9));
  }
}

TEST_CASE("parametric projection agrees with the corner-based path") {
  for (uint64_t seed : {1u, 2u, 3u, 4u})
    for (int n : {4, 6, 8, 10}) {
      LayoutParams T = random_room(seed * 100 + n, n).params;
      for (int bs : {1, 2}) {
        auto par = project_layout(T, 256, bs);
        auto faces = corners_to_tile_lines(layout_to_corners(T), 256);
        std::vector<std::tuple<int, int, double>> a, b;
        for (const auto& p : par) a.emplace_back(p.face, p.vec, p.bin);
        for (int f = 0; f < kFaceCount; f++)
          for (const auto& ln : faces[f])
            b.emplace_back(f, static_cast<int>(ln.kind),
                           line_to_bin_continuous(ln, 256, 256, bs));
        REQUIRE(a.size() == b.size());
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (size_t i = 0; i < a.size(); i++) {
          CHECK(std::get<0>(a[i]) == std::get<0>(b[i]));
          CHECK(std::get<1>(a[i]) == std::get<1>(b[i]));
          CHECK(std::fabs(std::get<2>(a[i]) - std::get<2>(b[i])) < 1e-6);
        }
      }
    }
}

TEST_CASE("smoothed target pins") {
  auto v = smooth_target({3}, 7, kLn2);
  REQUIRE(v.size() == 7);
  CHECK(v[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(v[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v[4] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v[5] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(v[0] == doctest::Approx(0.125).epsilon(1e-12));

  auto c = smooth_target({0}, 8, kLn2, true);
  CHECK(c[7] == doctest::Approx(0.5).epsilon(1e-12));  // wraps around
  CHECK(c[4] == doctest::Approx(0.0625).epsilon(1e-12));

  auto z = smooth_target({}, 5, kLn2);
  for (double x : z) CHECK(x == 0.0);
}

TEST_CASE("cross entropy pins") {
  CHECK(bce_loss({0.5}, {0.5}) == doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(std::fabs(bce_loss({0.5}, {0.5}) - kLn2) < 1e-12);
  // summed over bins, clamped away from the log singularities
  CHECK(bce_loss({0.5, 0.5}, {0.5, 0.5}) ==
        doctest::Approx(2 * kLn2).epsilon(1e-12));
  CHECK(bce_loss({1.0}, {1.0}) < 1.1e-7);
  CHECK(bce_loss({0.0}, {1.0}) > 16.0);
  CHECK_THROWS_AS(bce_loss({0.5}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("score is exact when target peaks sit on the layout bins") {
  // dyadic heights make every projected horizontal land exactly on an
  // integer bin and every vertical on the flat clamped half-bin at the tile
  // edge, so targets built from the quantized bins score exactly 1 per line
  const double ch = 255.0 / 128.0;
  LayoutParams T = make_layout({4, -4, -4, 4}, 255.0 / 64.0, ch);
  auto lines = project_layout(T, 512, 1);
  REQUIRE(lines.size() == 16);
  std::array<std::array<std::vector<double>, 3>, kFaceCount> peaks{};
  for (const auto& ln : lines) {
    int len = ln.vec == 2 ? 2048 : 512;
    double q = static_cast<double>(std::lround(ln.bin));
    if (ln.vec == 2)
      q = std::fmod(std::fmod(q, len) + len, len);
    else
      q = std::min(std::max(q, 0.0), len - 1.0);
    peaks[ln.face][ln.vec].push_back(q);
  }
  LineTargets S{};
  for (int f = 0; f < kFaceCount; f++) {
    S[f].bin_scale = 1;
    S[f].H = smooth_target(peaks[f][0], 512, kLn2);
    S[f].V = smooth_target(peaks[f][1], 512, kLn2);
    S[f].C = smooth_target(peaks[f][2], 2048, kLn2, true);
  }
  CHECK(score(T, S) == 16.0);
  ScoreGrad sg = score_gradient(T, S);
  CHECK(sg.value == 16.0);
  CHECK(sg.n_lines == 16);
  REQUIRE(sg.grad.size() == 5);
  for (double g : sg.grad) CHECK(g == 0.0);
  // a stationary start leaves the optimizer exactly in place
  LayoutParams out = sgd_optimize(T, S, 0.01, 50);
  CHECK(out.wall_distances == T.wall_distances);
  CHECK(out.room_height == T.room_height);
}

TEST_CASE("analytic gradient matches central differences") {
  LayoutParams T = make_layout({3.05, -2.95, -3.1, 3.0}, 3.15);
  LayoutParams Tgt = make_layout({2.9, -3.05, -2.95, 3.1}, 3.3);
  LineTargets S = oracle_targets(Tgt, 512, 1, kLn2);
  ScoreGrad sg = score_gradient(T, S);
  const double h = 1e-5;
  int checked = 0;
  for (int i = 0; i <= 4; i++) {
    LayoutParams P = T, M = T;
    if (i < 4) {
      P.wall_distances[i] += h;
      M.wall_distances[i] -= h;
    } else {
      P.room_height += h;
      M.room_height -= h;
    }
    double fd = (score(P, S) - score(M, S)) / (2 * h);
    if (std::fabs(fd) < 1e-4 && std::fabs(sg.grad[i]) < 1e-4) continue;
    CHECK(std::fabs(fd - sg.grad[i]) / std::max(std::fabs(fd),
                                                std::fabs(sg.grad[i])) < 2e-3);
    checked++;
  }
  CHECK(checked >= 3);
}

TEST_CASE("optimizer honors steps=0 and never returns a worse iterate") {
  LayoutParams T0 = make_layout({2.6, -3.2, -2.9, 3.1}, 3.0);
  LineTargets S = oracle_targets(make_layout({2.8, -3.0, -3.0, 2.9}, 3.2),
                                 512, 1, kLn2);
  LayoutParams same = sgd_optimize(T0, S, 0.01, 0);
  CHECK(same.wall_distances == T0.wall_distances);
  for (double lr : {0.002, 0.01, 0.05})
    for (int steps : {1, 10, 100})
      CHECK(score(sgd_optimize(T0, S, lr, steps), S) >= score(T0, S) - 1e-12);
}

TEST_CASE("optimizer pulls a perturbed cuboid back onto the target") {
  LayoutParams Tt = make_layout({2.8, -3.1, -2.9, 3.0}, 3.1);
  LineTargets S = oracle_targets(Tt, 512, 1, kLn2);
  LayoutParams T0 = Tt;
  for (double& w : T0.wall_distances) w *= 1.05;
  T0.room_height = Tt.camera_height + (Tt.room_height - Tt.camera_height) * 0.94;
  LayoutParams out = sgd_optimize(T0, S, 0.01, 100);
  CHECK(iou3d(out, Tt) >= 0.99);
  CHECK(score(out, S) > score(T0, S));
}

TEST_CASE("wall distances from detected wall-floor lines") {
  LayoutParams T = make_layout({2.5, -3.0, -2.0, 2.2}, 3.0);
  auto lines = corners_to_tile_lines(layout_to_corners(T), 512);
  auto d = init_distances(lines, kCameraHeight, 512);
  REQUIRE(d.has_value());
  REQUIRE(d->size() == 4);
  for (int i = 0; i < 4; i++)
    CHECK((*d)[i] == doctest::Approx(T.wall_distances[i]).epsilon(1e-9));

  std::array<std::vector<ManhattanLine>, kFaceCount> none{};
  CHECK(!init_distances(none, kCameraHeight, 512).has_value());
  // over-distance rejection: every wall is farther than 1x camera height
  CHECK(!init_distances(lines, kCameraHeight, 512, 1.0).has_value());
}

TEST_CASE("room height from the ceiling/floor line ratio") {
  LayoutParams T = make_layout({2.5, -3.0, -2.0, 2.2}, 3.0);
  auto lines = corners_to_tile_lines(layout_to_corners(T), 512);
  auto d = init_distances(lines, kCameraHeight, 512);
  REQUIRE(d.has_value());
  double rh = init_height(lines, *d, kCameraHeight, 512);
  CHECK(rh == doctest::Approx(3.0).epsilon(1e-6));

  std::array<std::vector<ManhattanLine>, kFaceCount> floor_only{};
  for (int f = 0; f < 4; f++)
    floor_only[f].push_back({LineKind::Horizontal, 100.0, 1.0});
  CHECK_THROWS_AS(init_height(floor_only, *d, kCameraHeight, 512),
                  std::invalid_argument);
}

TEST_CASE("layout json round trip") {
  LayoutParams T = make_layout({2.5, -3.0, -2.0, 2.2, 1.1, 1.4}, 3.0);
  std::string js = layout_to_json(T);
  LayoutParams back = layout_from_json(js);
  REQUIRE(back.n_walls() == 6);
  for (int i = 0; i < 6; i++)
    CHECK(back.wall_distances[i] == doctest::Approx(T.wall_distances[i]));
  CHECK(back.room_height == doctest::Approx(3.0));
  CHECK(back.camera_height == doctest::Approx(kCameraHeight));
  CHECK(js.find("corners") != std::string::npos);

  std::string bad = R"({"camera_height":1.6,"room_height":3.0,
    "walls":[{"axis":"y","dist":3.0},{"axis":"x","dist":-3.0},
             {"axis":"y","dist":-3.0},{"axis":"x","dist":3.0}]})";
  CHECK_THROWS_AS(layout_from_json(bad), std::invalid_argument);
}

TEST_CASE("target vectors json round trip") {
  LineTargets S = oracle_targets(make_layout({2.8, -3.0, -3.0, 2.9}, 3.2),
                                 256, 2, kLn2);
  LineTargets back = targets_from_json(targets_to_json(S));
  for (int f = 0; f < kFaceCount; f++) {
    CHECK(back[f].bin_scale == S[f].bin_scale);
    REQUIRE(back[f].H == S[f].H);
    REQUIRE(back[f].V == S[f].V);
    REQUIRE(back[f].C == S[f].C);
  }
  HoughVectors hv = S[0];
  HoughVectors hb = hough_vectors_from_json(hough_vectors_to_json(hv));
  CHECK(hb.H == hv.H);
  CHECK(hb.V == hv.V);
  CHECK(hb.C == hv.C);
  CHECK(hb.bin_scale == hv.bin_scale);
}
