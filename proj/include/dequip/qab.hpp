#pragma once

#include "dequip/image.hpp"

namespace dequip {

// Single-particle baseline: one Hamiltonian per tile over a pre-smoothed
// image, hard truncation to the `keep` lowest-energy basis vectors.
struct QabParams {
  double beta = 1.0;
  double smooth_sigma = 0.0;  // Gaussian pre-filter, pixels
  int keep = 1;               // 1..tile_side^2
  int tile_side = 63;         // <= 96 (dense solver cap)
};

// Separable Gaussian convolution, kernel radius ceil(3*sigma), kernel
// renormalized at borders; sigma = 0 is the identity.
Image gaussian_smooth(const Image& image, double sigma);

// Per tile: smooth -> Hamiltonian over the smoothed tile -> project the raw
// noisy tile -> keep lowest coefficients -> reconstruct; non-overlapping
// clamped tiles aggregated by uniform averaging.
Image qab_denoise(const Image& image, const QabParams& params, int threads = 1);

}  // namespace dequip
