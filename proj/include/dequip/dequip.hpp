#pragma once

#include <span>
#include <vector>

#include "dequip/image.hpp"
#include "dequip/spectral.hpp"

namespace dequip {

// Everything the patch-interaction denoiser consumes.
struct DenoiseParams {
  int patch_side = 7;
  int window_side = 21;
  double p = 0.0;        // interaction proportionality constant
  int d = 1;             // retained subspace dimensionality, 1..patch_side^2
  double f_factor = 1.0; // converts the patch intensity range into beta
  int target_stride = 3;
  int neighbor_stride = 1;
};

void validate_params(const DenoiseParams& params, const Image& image);

// Projection coefficients <patch, psi_k> for every basis vector.
std::vector<double> project(const Patch& patch, const EigenBasis& basis);

// Sum of coeffs[k] * psi_k over the given coefficients; origin (row, col).
Patch reconstruct(std::span<const double> coeffs, const EigenBasis& basis, int row, int col);

// One pass of the interactive-patch pipeline for the target patch at
// (row, col): collect neighbors, accumulate the interaction field, build the
// Hamiltonian of the effective potential with beta = f_factor * (max - min)
// of the raw target patch, keep the d lowest-energy basis vectors, project
// the raw patch and reconstruct. A constant patch falls back to
// beta = f_factor.
Patch denoise_patch(const Image& image, int row, int col, const DenoiseParams& params);

// denoise_patch over the clamped target grid, aggregated by uniform
// averaging. Deterministic for any thread count.
Image denoise_image(const Image& image, const DenoiseParams& params, int threads = 1);

}  // namespace dequip
