#pragma once

#include <string>

#include "panolayout/image.hpp"

namespace panolayout {

// PNG I/O for grayscale/RGB rasters at 8 or 16 bits. Values map linearly
// between [0,1] and the integer sample range; palette/alpha inputs are
// expanded/stripped on read. Throws std::runtime_error on I/O or format
// failure.
Image read_png(const std::string& path);
void write_png(const std::string& path, const Image& img, int bit_depth = 8);

}  // namespace panolayout
