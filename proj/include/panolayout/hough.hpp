#pragma once

#include <array>
#include <vector>

#include "panolayout/geometry.hpp"

namespace panolayout {

// Single-channel real-valued grid voted over by the Manhattan transform.
using FeatureMap = Image;

// The three restricted line families of one tile, as confidence vectors:
//   H[i]  horizontal lines, one bin per (aggregated) pixel row
//   V[i]  vertical lines, one bin per pixel column
//   C[i]  lines through the image center, one bin per half-ray ending at an
//         integer border position; length 2*(h+w) before aggregation
// bin_scale k >= 1 averages k adjacent raw bins into one.
struct HoughVectors {
  std::vector<double> H, V, C;
  int bin_scale = 1;
};

enum class LineKind { Horizontal = 0, Vertical, Center };

// A Manhattan-constrained tile line.
//   Horizontal: pos = signed pixel row offset from tile center (y down)
//   Vertical:   pos = signed pixel column offset from tile center
//   Center:     pos = continuous border arc position in [0, 2*(h+w)),
//               identifying the half-ray from the center
struct ManhattanLine {
  LineKind kind = LineKind::Horizontal;
  double pos = 0;
  double conf = 1.0;
};

// Sum of bilinearly sampled values along the line with normal-form
// rho = -x sin(theta) + y cos(theta) (origin at image center, y down,
// theta = line direction angle), unit sample spacing, in-bounds samples only.
double hough_classic(const FeatureMap& X, double rho, double theta);

// The Manhattan Hough voting operator: H = row sums, V = column sums,
// C[i] = interpolated sum along the half-ray from the image center to border
// bin i, stepping per integer x when |dy| <= |dx| else per integer y.
// Throws std::invalid_argument when bin_scale does not divide h and w.
HoughVectors dmht(const FeatureMap& X, int bin_scale = 1);

// Fixed clockwise enumeration of integer border positions, starting at
// (w/2, -h/2 + 1) and walking down the right edge. Centered coordinates.
ImagePoint center_bin_to_endpoint(int idx, int h, int w);

// Continuous border arc position of the border crossing of the half-ray
// from the center through direction (dx, dy). Inverse of the enumeration
// above at integer values; continuous and cyclic across tile corners.
double border_arc_from_direction(double dx, double dy, int h, int w);

// Continuous aggregated-bin coordinate of a line (rounding-free); the
// integer bin is the nearest one. For Center lines the coordinate is cyclic
// with period 2*(h+w)/bin_scale.
double line_to_bin_continuous(const ManhattanLine& line, int h, int w,
                              int bin_scale);
int line_to_bin(const ManhattanLine& line, int h, int w, int bin_scale);

// Linear interpolation into a confidence vector at a continuous bin
// coordinate; clamped at the ends, or cyclic (Center vectors).
double interp_vector(const std::vector<double>& v, double bin, bool cyclic);

}  // namespace panolayout
