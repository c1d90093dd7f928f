#pragma once

#include <array>
#include <optional>
#include <vector>

#include "panolayout/hough.hpp"

namespace panolayout {

inline constexpr double kCameraHeight = 1.6;  // world units, not optimized

// Parametric Manhattan room seen from a camera at the origin.
// wall_distances are signed axis intercepts in counterclockwise floor-plan
// order starting from the wall crossing the +y (front) axis: even-indexed
// walls lie on y = t[i] (parallel to x), odd-indexed on x = t[i].
// Corner i joins wall i and wall i+1. Floor at z = -camera_height, ceiling
// at z = room_height - camera_height.
struct LayoutParams {
  std::vector<double> wall_distances;
  double room_height = 3.2;
  double camera_height = kCameraHeight;

  int n_walls() const { return static_cast<int>(wall_distances.size()); }
};

// Panorama-space layout: (longitude, latitude) corner pairs, the n ceiling
// corners first, then the n floor corners, both in wall order and sharing
// longitudes corner-for-corner.
struct RoomLayout {
  std::vector<std::array<double, 2>> corners;
  int n_walls = 0;
};

// Per-face smoothed ground-truth (or detected) confidence vectors.
using LineTargets = std::array<HoughVectors, kFaceCount>;

// Floor-plan corner (x, y) of corner i (between wall i and i+1).
std::array<double, 2> floor_corner(const std::vector<double>& walls, int i);

// True when the floor polygon is simple, non-degenerate, counterclockwise
// traversable and strictly contains the camera, and heights are sane.
bool layout_valid(const LayoutParams& T);

// Projects the 3D wireframe corners onto the panorama.
// Throws std::invalid_argument on invalid layouts.
RoomLayout layout_to_corners(const LayoutParams& T);

// Per-face Manhattan lines of the layout wireframe: every wall-wall,
// wall-floor and wall-ceiling segment is clipped against each face frustum
// and classified as Horizontal / Vertical / Center with the single
// coordinate that family keeps. Scale-free: works from panorama corners.
std::array<std::vector<ManhattanLine>, kFaceCount> corners_to_tile_lines(
    const RoomLayout& L, int size);

// v[i] = exp(-decay * distance(i, nearest position)); empty positions give
// the zero vector. Cyclic distance for border (C) vectors.
std::vector<double> smooth_target(const std::vector<double>& positions,
                                  int length, double decay,
                                  bool cyclic = false);

// Binary cross entropy with predictions clamped to [1e-7, 1 - 1e-7].
double bce_loss(const std::vector<double>& pred,
                const std::vector<double>& target);

// One projected wireframe line of a layout, located on a confidence vector.
struct ProjectedLine {
  int face = 0;  // index into kAllFaces
  int vec = 0;   // 0 = H, 1 = V, 2 = C
  double bin = 0;  // continuous aggregated-bin coordinate
};

// layout_to_corners -> corners_to_tile_lines -> continuous bin positions.
std::vector<ProjectedLine> project_layout(const LayoutParams& T, int size,
                                          int bin_scale);

// Sum over projected lines of linearly interpolated confidence; the
// optimizer minimizes the negative of this.
double score(const LayoutParams& T, const LineTargets& S);

// score plus its analytic gradient with respect to (wall_distances...,
// room_height), differentiated through projection and interpolation. At
// integer bin positions the interpolation slope is the mean of the two
// adjacent slopes, so exact peaks have zero gradient.
struct ScoreGrad {
  double value = 0;
  std::vector<double> grad;  // size n_walls + 1
  int n_lines = 0;
};
ScoreGrad score_gradient(const LayoutParams& T, const LineTargets& S);

// Gradient-ascent refinement of T0 against S. The score landscape is
// piecewise linear with narrow peaks one bin wide, so the gradient is
// estimated by central differences over a stencil that starts wide (0.1,
// seeing across nearby false ridges) and halves every 12 steps until it
// matches the analytic gradient; steps use per-coordinate adaptive scaling
// (first/second moment averaging) with base step size lr. The iterate
// sequence depends only on the step index, so a longer run extends a
// shorter one, and the best-scoring iterate is returned (never worse than
// T0). Steps that would leave the valid-layout region are rejected.
LayoutParams sgd_optimize(const LayoutParams& T0, const LineTargets& S,
                          double lr = 0.01, int steps = 100);

// Wall distances from detected wall-floor lines: a floor line at positive
// row offset rho in a horizontal face gives distance
// camera_height * (size/2) / rho along that face's view axis (equivalently
// camera_height / tan(-elevation)). Cuboid assembly from the four
// horizontal faces; fails (nullopt) when fewer than 4 wall-floor lines are
// found or a distance exceeds max_dist_factor * camera_height.
std::optional<std::vector<double>> init_distances(
    const std::array<std::vector<ManhattanLine>, kFaceCount>& lines,
    double camera_height, int size, double max_dist_factor = 40.0);

// Ceiling/floor distance-ratio search: golden-section over ratio in
// [0.25, 4.0] (60 iterations) maximizing 2D IoU between the ratio-scaled
// ceiling frame and the floor frame; falls back to the per-line ratio
// median when no closed four-line ceiling frame exists. Returns
// camera_height * (1 + best ratio).
double init_height(
    const std::array<std::vector<ManhattanLine>, kFaceCount>& lines,
    const std::vector<double>& floor_distances, double camera_height,
    int size);

}  // namespace panolayout
