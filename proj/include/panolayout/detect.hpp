#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "panolayout/hough.hpp"

namespace panolayout {

// Binary edge grid; values are exactly 0 or 1.
using EdgeMap = Image;

// Gaussian blur + Sobel gradients + non-maximum suppression + hysteresis.
// low/high are fractions of the maximum gradient magnitude.
EdgeMap canny(const Image& gray, double low = 0.1, double high = 0.2);

// Accumulator line in normal form rho = -x sin(theta) + y cos(theta),
// origin at image center, y down, theta = direction angle in [0, pi).
struct HoughLine {
  double rho = 0;
  double theta = 0;
  int votes = 0;
};

// Standard Hough transform: 1 px rho bins, 1 degree theta bins, local
// maxima above the vote threshold, sorted by votes descending.
std::vector<HoughLine> ht_standard(const EdgeMap& edges, int threshold = 100);

struct LineSegment {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // centered coordinates
};

// Progressive probabilistic Hough transform: random edge points vote until
// an accumulator bin crosses the threshold, then the supporting segment is
// traced (gaps up to max_gap) and its pixels retired. Deterministic per
// seed.
std::vector<LineSegment> ht_probabilistic(const EdgeMap& edges,
                                          int threshold = 50,
                                          double min_len = 30,
                                          double max_gap = 5,
                                          uint64_t seed = 0);

// Normal-form line of a segment, votes = rounded length.
std::vector<HoughLine> segments_to_lines(const std::vector<LineSegment>& segs);

// Keeps horizontal (|tan theta| < 0.05), vertical (|cot theta| < 0.05) and
// center-passing (|rho| < 5 px) lines, converted to ManhattanLine with
// confidence = votes / max votes. A center line yields its two half-rays.
std::vector<ManhattanLine> filter_manhattan(const std::vector<HoughLine>& in,
                                            int h, int w);

// Partitions by (kind x image half): horizontal above/below center,
// vertical left/right, center rays by border side; keeps the highest-
// confidence line of each of the 8 groups. size is the square tile side.
std::vector<ManhattanLine> group_and_select(
    const std::vector<ManhattanLine>& lines, int size);

// Confidence vectors from discrete lines: each line contributes
// conf * exp(-decay * bin distance), combined pointwise by max.
HoughVectors vectors_from_lines(const std::vector<ManhattanLine>& lines,
                                int h, int w, int bin_scale, double decay);

struct PeakConfig {
  double min_prominence = 0.1;
  int min_separation = 8;
  int max_peaks = 8;
};

// Strict local maxima with topographic prominence >= min_prominence,
// greedily thinned to pairwise separation >= min_separation, at most
// max_peaks, sorted by height descending.
std::vector<std::pair<int, double>> find_peaks(const std::vector<double>& v,
                                               const PeakConfig& cfg);

}  // namespace panolayout
