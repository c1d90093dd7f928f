#pragma once

#include <string>
#include <vector>

#include "panolayout/detect.hpp"
#include "panolayout/layout.hpp"
#include "panolayout/metrics.hpp"

namespace panolayout {

// JSON formats:
//   HoughVectors   {"H":[...],"V":[...],"C":[...],"bin_scale":k}
//   LineTargets    {"faces":{"front":{...},...}}
//   layout         {"camera_height":1.6,"room_height":...,
//                   "walls":[{"axis":"x","dist":...},...],
//                   "corners":[[lon,lat],...]}
//                  walls in counterclockwise order; "axis" is the axis the
//                  wall runs parallel to; corners are the n ceiling corners
//                  then the n floor corners.
//   tile lines     {"face":"front","lines":[{"kind":"horizontal",
//                   "rho":...,"conf":...},...]}  (center lines carry
//                   "border_pos" instead of "rho")
//   metrics        {"iou3d":...,"iou2d":...,"corner_error":...,
//                   "pixel_error":...,"delta_1":...}

std::string hough_vectors_to_json(const HoughVectors& v);
HoughVectors hough_vectors_from_json(const std::string& text);

std::string targets_to_json(const LineTargets& t);
LineTargets targets_from_json(const std::string& text);

std::string layout_to_json(const LayoutParams& T);
LayoutParams layout_from_json(const std::string& text);

std::string tile_lines_to_json(
    const std::array<std::vector<ManhattanLine>, kFaceCount>& lines);

std::string metrics_to_json(const MetricsReport& m);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace panolayout
