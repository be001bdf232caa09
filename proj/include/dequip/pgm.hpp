#pragma once

#include <string>

#include "dequip/image.hpp"

namespace dequip {

// Reads a P2 (ASCII) or P5 (binary) PGM file, maxval <= 65535. Intensities
// are rescaled linearly so that maxval maps to 255.0. '#' comment lines are
// tolerated between header tokens.
Image load_pgm(const std::string& path);

// Writes a P5 PGM with maxval 255. Intensities are clamped to [0,255] and
// rounded half-up.
void save_pgm(const Image& image, const std::string& path);

}  // namespace dequip
