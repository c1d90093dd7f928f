#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "panolayout/detect.hpp"

using namespace panolayout;

namespace {
constexpr double kPi = 3.14159265358979323846;

EdgeMap empty_edges(int n) { return EdgeMap(n, n); }

int edge_count(const EdgeMap& e) {
  int c = 0;
  for (double v : e.data) c += v > 0.5;
  return c;
}
}  // namespace

TEST_CASE("canny marks a vertical step edge and nothing else") {
  Image img(32, 32);
  for (int y = 0; y < 32; y++)
    for (int x = 16; x < 32; x++) img.at(x, y) = 1.0;
  EdgeMap e = canny(img);
  CHECK(edge_count(e) > 10);
  for (int y = 0; y < 32; y++)
    for (int x = 0; x < 32; x++)
      if (e.at(x, y) > 0.5) CHECK(std::fabs(x - 15.5) < 2.5);
}

TEST_CASE("canny on a constant image finds no edges") {
  Image img(32, 32, 1, 0.6);
  CHECK(edge_count(canny(img)) == 0);
}

TEST_CASE("standard transform recovers drawn axis-aligned lines") {
  EdgeMap e = empty_edges(64);
  for (int x = 0; x < 64; x++) e.at(x, 20) = 1.0;  // centered row -11.5
  auto lines = ht_standard(e, 50);
  REQUIRE(!lines.empty());
  CHECK(lines[0].votes == 64);
  CHECK(lines[0].theta == doctest::Approx(0.0));
  CHECK(std::fabs(lines[0].rho - (-11.5)) <= 0.5);

  e = empty_edges(64);
  for (int y = 0; y < 64; y++) e.at(20, y) = 1.0;  // centered column -11.5
  lines = ht_standard(e, 50);
  REQUIRE(!lines.empty());
  CHECK(lines[0].votes == 64);
  CHECK(lines[0].theta == doctest::Approx(kPi / 2));
  CHECK(std::fabs(lines[0].rho - 11.5) <= 0.5);
}

TEST_CASE("probabilistic transform recovers two separated segments") {
  EdgeMap e = empty_edges(64);
  for (int x = 5; x <= 40; x++) e.at(x, 10) = 1.0;
  for (int x = 20; x <= 60; x++) e.at(x, 40) = 1.0;
  auto segs = ht_probabilistic(e, 20, 20, 5, 1);
  REQUIRE(segs.size() == 2);
  for (const auto& s : segs) {
    CHECK(std::fabs(s.y0 - s.y1) < 2.0);
    double row = s.y0 < 0 ? -21.5 : 8.5;
    CHECK(std::fabs(s.y0 - row) < 2.0);
    double lo = std::min(s.x0, s.x1), hi = std::max(s.x0, s.x1);
    if (row < 0) {
      CHECK(std::fabs(lo - (5 - 31.5)) < 3.0);
      CHECK(std::fabs(hi - (40 - 31.5)) < 3.0);
    } else {
      CHECK(std::fabs(lo - (20 - 31.5)) < 3.0);
      CHECK(std::fabs(hi - (60 - 31.5)) < 3.0);
    }
  }
}

TEST_CASE("probabilistic transform is deterministic per seed") {
  EdgeMap e = empty_edges(64);
  std::mt19937 rng(17);
  for (int x = 4; x < 60; x++) e.at(x, 12) = 1.0;
  for (int y = 4; y < 60; y++) e.at(33, y) = 1.0;
  for (int i = 0; i < 40; i++) e.at(rng() % 64, rng() % 64) = 1.0;
  auto a = ht_probabilistic(e, 25, 20, 3, 7);
  auto b = ht_probabilistic(e, 25, 20, 3, 7);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); i++) {
    CHECK(a[i].x0 == b[i].x0);
    CHECK(a[i].y0 == b[i].y0);
    CHECK(a[i].x1 == b[i].x1);
    CHECK(a[i].y1 == b[i].y1);
  }
}

TEST_CASE("probabilistic transform drops short segments") {
  EdgeMap e = empty_edges(64);
  for (int x = 30; x < 40; x++) e.at(x, 10) = 1.0;  // length 10
  CHECK(ht_probabilistic(e, 5, 30, 5, 3).empty());
}

TEST_CASE("segment to normal form pins") {
  auto lines = segments_to_lines({{-5, 2, 5, 2}, {3, -4, 3, 6}});
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].theta == doctest::Approx(0.0));
  CHECK(lines[0].rho == doctest::Approx(2.0));
  CHECK(lines[0].votes == 10);
  CHECK(lines[1].theta == doctest::Approx(kPi / 2));
  CHECK(lines[1].rho == doctest::Approx(-3.0));
  CHECK(lines[1].votes == 10);
}

TEST_CASE("manhattan filter keeps the three restricted families") {
  std::vector<HoughLine> in = {
      {-11.5, 0.0, 64},          // horizontal at row -11.5
      {11.5, kPi / 2, 32},       // vertical at column -11.5
      {20.0, kPi / 4, 60},       // slanted, off center: dropped
      {0.5, kPi / 4, 16},        // through the center: two half-rays
  };
  auto out = filter_manhattan(in, 64, 64);
  REQUIRE(out.size() == 4);
  CHECK(out[0].kind == LineKind::Horizontal);
  CHECK(out[0].pos == doctest::Approx(-11.5));
  CHECK(out[0].conf == doctest::Approx(1.0));
  CHECK(out[1].kind == LineKind::Vertical);
  CHECK(out[1].pos == doctest::Approx(-11.5));
  CHECK(out[1].conf == doctest::Approx(0.5));
  CHECK(out[2].kind == LineKind::Center);
  CHECK(out[3].kind == LineKind::Center);
  std::vector<double> arcs = {out[2].pos, out[3].pos};
  std::sort(arcs.begin(), arcs.end());
  // the 45deg diagonal exits at the bottom-right and top-left corners
  CHECK(arcs[0] == doctest::Approx(63.0).epsilon(1e-9));
  CHECK(arcs[1] == doctest::Approx(191.0).epsilon(1e-9));
}

TEST_CASE("group selection keeps the best line per region") {
  std::vector<ManhattanLine> in = {
      {LineKind::Horizontal, -10, 0.3}, {LineKind::Horizontal, -20, 0.9},
      {LineKind::Horizontal, -15, 0.5}, {LineKind::Horizontal, 12, 0.4},
      {LineKind::Vertical, -8, 0.6},    {LineKind::Vertical, -3, 0.2},
      {LineKind::Center, 10, 0.4},      {LineKind::Center, 50, 0.6},
      {LineKind::Center, 100, 0.7},
  };
  auto out = group_and_select(in, 64);
  REQUIRE(out.size() == 5);
  auto has = [&](LineKind k, double pos) {
    for (const auto& ln : out)
      if (ln.kind == k && ln.pos == pos) return true;
    return false;
  };
  CHECK(has(LineKind::Horizontal, -20));  // best of the three above center
  CHECK(has(LineKind::Horizontal, 12));
  CHECK(has(LineKind::Vertical, -8));
  CHECK(has(LineKind::Center, 50));   // best on the first border side
  CHECK(has(LineKind::Center, 100));  // different side survives
  CHECK(!has(LineKind::Horizontal, -10));
  CHECK(!has(LineKind::Center, 10));
}

TEST_CASE("line vectors decay away from the line and combine by max") {
  const double ln2 = std::log(2.0);
  auto v = vectors_from_lines({{LineKind::Horizontal, 0.0, 0.8}}, 64, 64, 1, ln2);
  REQUIRE(v.H.size() == 64);
  CHECK(v.H[31] == doctest::Approx(0.8 * std::pow(2, -0.5)).epsilon(1e-12));
  CHECK(v.H[32] == doctest::Approx(0.8 * std::pow(2, -0.5)).epsilon(1e-12));
  CHECK(v.H[30] == doctest::Approx(0.8 * std::pow(2, -1.5)).epsilon(1e-12));
  for (double x : v.V) CHECK(x == 0.0);

  v = vectors_from_lines({{LineKind::Horizontal, 0.0, 0.8},
                          {LineKind::Horizontal, 1.0, 0.5}},
                         64, 64, 1, ln2);
  CHECK(v.H[32] == doctest::Approx(0.8 * std::pow(2, -0.5)).epsilon(1e-12));

  // center bins wrap around
  v = vectors_from_lines({{LineKind::Center, 0.0, 1.0}}, 64, 64, 1, ln2);
  REQUIRE(v.C.size() == 256);
  CHECK(v.C[0] == doctest::Approx(1.0));
  CHECK(v.C[255] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v.C[128] == doctest::Approx(std::pow(2, -128.0)));
}

TEST_CASE("peak finding matches the naive reference") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> len(5, 64);
  for (int trial = 0; trial < 200; trial++) {
    std::vector<double> v(len(rng));
    for (double& x : v) x = u(rng);
    PeakConfig cfg;
    cfg.min_prominence = 0.05 + 0.3 * u(rng);
    cfg.min_separation = 1 + static_cast<int>(rng() % 8);
    cfg.max_peaks = 1 + static_cast<int>(rng() % 8);
    auto got = find_peaks(v, cfg);
    auto ref = oracles::naive_peaks(v, cfg.min_prominence, cfg.min_separation,
                                    cfg.max_peaks);
    REQUIRE(got.size() == ref.size());
    for (size_t i = 0; i < got.size(); i++) {
      CHECK(got[i].first == ref[i].first);
      CHECK(got[i].second == ref[i].second);
    }
  }
}

TEST_CASE("plateaus are not strict maxima") {
  CHECK(find_peaks({0, 1, 1, 0}, PeakConfig{0.01, 1, 8}).empty());
  auto p = find_peaks({0, 1, 0, 0.2, 0.9, 0.1}, PeakConfig{0.1, 1, 8});
  REQUIRE(p.size() == 2);
  CHECK(p[0].first == 1);
  CHECK(p[1].first == 4);
}
