#pragma once

#include <cstdint>

#include "panolayout/layout.hpp"
#include "panolayout/metrics.hpp"

namespace panolayout {

enum class RenderStyle { Wireframe = 0, Shaded, TexturedNoise };

// Synthetic Manhattan room: layout parameters plus rendering knobs.
struct RoomSpec {
  LayoutParams params;
  RenderStyle style = RenderStyle::Wireframe;
  double line_width = 2.0;  // px, wireframe stroke width
  uint64_t rng_seed = 0;
};

// Random rectilinear room with n_walls in {4,6,8,10}: a cuboid with
// (n_walls-4)/2 corner notches. Camera strictly inside; wall intercept
// magnitudes kept in a band that keeps every wall-floor line comfortably
// inside the cubemap tiles. Deterministic per seed.
RoomSpec random_room(uint64_t seed, int n_walls);

struct RenderResult {
  EquirectImage pano;   // grayscale
  RoomLayout gt;        // exact corner ground truth
};

// Per-pixel ray-cast render of the room prism (exact occlusion).
// Wireframe: dark strokes where the visible surface changes within
// line_width; shaded: flat gray per class; textured-noise: shaded plus
// seeded per-pixel noise.
RenderResult render_equirect(const RoomSpec& spec, int width, int height);

// Shaded-style gray levels and their class decode (0 ceiling, 1 wall,
// 2 floor), shared with tests.
double shade_level(int cls);
int shade_class(double value);

// Ground-truth confidence vectors: corners_to_tile_lines on the layout,
// then exponential smoothing around each line's bin.
LineTargets oracle_targets(const LayoutParams& T, int size, int bin_scale,
                           double decay);

}  // namespace panolayout
