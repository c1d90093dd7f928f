#pragma once

#include "panolayout/layout.hpp"

namespace panolayout {

struct MetricsReport {
  double iou3d = 0;
  double iou2d = 0;
  double corner_error = 0;  // % of panorama diagonal
  double pixel_error = 0;   // % of pixels
  double delta_1 = 0;
};

// Volume IoU of the two layout prisms (floor polygon x height interval).
// Exact: rectilinear polygon boolean via coordinate-compressed grid.
double iou3d(const LayoutParams& A, const LayoutParams& B);

// Floor-polygon area IoU.
double iou2d(const LayoutParams& A, const LayoutParams& B);

// Mean Euclidean pixel distance between matched corners on a width x height
// panorama, as % of the image diagonal. Ceiling and floor rings are matched
// separately by greedy nearest-longitude pairing; unmatched corners are
// charged diagonal/8.
double corner_error(const RoomLayout& A, const RoomLayout& B,
                    int width = 1024, int height = 512);

// 3-class (ceiling/wall/floor) rasterization mismatch, % of pixels.
double pixel_error(const RoomLayout& A, const RoomLayout& B,
                   int width = 1024, int height = 512);

// Fraction of panorama rays whose layout-depth ratio is within 1.25^i.
double delta_i(const LayoutParams& A, const LayoutParams& B,
               int width = 1024, int height = 512, int i = 1);

MetricsReport evaluate(const LayoutParams& A, const LayoutParams& B,
                       int width = 1024, int height = 512);

// Shared per-ray classifier. Splits the panorama column at longitude lon
// into ceiling/wall/floor by the boundary latitudes of the visible wall.
// Exposed for the renderer and the rasterizing metrics so their classes
// agree exactly.
struct ColumnProfile {
  double wall_dist = 0;   // horizontal distance to the visible wall
  int wall_index = -1;    // polygon edge hit
  double lat_floor = 0;   // wall-floor boundary latitude (< 0)
  double lat_ceil = 0;    // wall-ceiling boundary latitude (> 0)
};
ColumnProfile column_profile(const LayoutParams& T, double lon);

// 0 = ceiling, 1 = wall, 2 = floor.
int classify_latitude(const ColumnProfile& p, double lat);

// Depth along the ray (lon, lat) to the layout surface.
double ray_depth(const LayoutParams& T, const ColumnProfile& p, double lat);

// Reconstructs signed-intercept layout parameters from panorama corners
// (fixes the scale with camera_height). Used by corner-based metrics and
// the GT ingestion path.
LayoutParams params_from_corners(const RoomLayout& L,
                                 double camera_height = kCameraHeight);

}  // namespace panolayout
