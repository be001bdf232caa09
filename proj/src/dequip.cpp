#include "dequip/dequip.hpp"

#include <algorithm>
#include <thread>

#include "dequip/errors.hpp"
#include "dequip/interaction.hpp"

namespace dequip {

void validate_params(const DenoiseParams& params, const Image& image) {
  validate_image(image);
  const int side = params.patch_side;
  if (side <= 0 || side > image.width || side > image.height) {
    throw ValidationError("patch side must be in [1, min(image dims)]");
  }
  if (params.window_side < side) throw ValidationError("window side must be >= patch side");
  if (params.window_side % 2 == 0) throw ValidationError("window side must be odd");
  if (params.p < 0.0) throw ValidationError("p must be non-negative");
  if (params.d < 1 || params.d > side * side) throw ValidationError("d must be in [1, patch_side^2]");
  if (params.f_factor <= 0.0) throw ValidationError("f_factor must be positive");
  if (params.target_stride < 1 || params.neighbor_stride < 1) {
    throw ValidationError("strides must be >= 1");
  }
}

std::vector<double> project(const Patch& patch, const EigenBasis& basis) {
  if (basis.dim != patch.dim()) throw ValidationError("basis dimension does not match patch");
  std::vector<double> coeffs(basis.count());
  for (int k = 0; k < basis.count(); ++k) {
    auto psi = basis.vec(k);
    double c = 0.0;
    for (int i = 0; i < basis.dim; ++i) c += patch.values[i] * psi[i];
    coeffs[k] = c;
  }
  return coeffs;
}

Patch reconstruct(std::span<const double> coeffs, const EigenBasis& basis, int row, int col) {
  if (static_cast<int>(coeffs.size()) > basis.count()) {
    throw ValidationError("more coefficients than basis vectors");
  }
  int side = 0;
  while (side * side < basis.dim) ++side;
  if (side * side != basis.dim) throw ValidationError("basis dimension is not a perfect square");

  Patch patch;
  patch.side = side;
  patch.row = row;
  patch.col = col;
  patch.values.assign(basis.dim, 0.0);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    auto psi = basis.vec(static_cast<int>(k));
    for (int i = 0; i < basis.dim; ++i) patch.values[i] += coeffs[k] * psi[i];
  }
  return patch;
}

Patch denoise_patch(const Image& image, int row, int col, const DenoiseParams& params) {
  Neighborhood nbhd = collect_neighbors(image, row, col, params.patch_side, params.window_side,
                                        params.neighbor_stride);
  InteractionField field = total_interaction(nbhd, params.p);
  Patch veff = effective_potential(nbhd.target, field);

  const auto [lo, hi] = std::minmax_element(nbhd.target.values.begin(), nbhd.target.values.end());
  double range = *hi - *lo;
  double beta = params.f_factor * (range > 0.0 ? range : 1.0);

  EigenBasis basis = eigendecompose(build_hamiltonian(veff, beta), params.d);
  std::vector<double> coeffs = project(nbhd.target, basis);
  return reconstruct(coeffs, basis, row, col);
}

Image denoise_image(const Image& image, const DenoiseParams& params, int threads) {
  validate_params(params, image);
  PatchGrid grid = patch_grid(image.width, image.height, params.patch_side, params.target_stride);

  std::vector<Patch> denoised(grid.positions.size());
  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(grid.positions.size())));

  auto worker = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      auto [r, c] = grid.positions[i];
      denoised[i] = denoise_patch(image, r, c, params);
    }
  };
  if (n_threads == 1) {
    worker(0, grid.positions.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (grid.positions.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      size_t begin = t * chunk;
      size_t end = std::min(begin + chunk, grid.positions.size());
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Patches are merged in row-major grid order, independent of scheduling.
  return aggregate_patches(denoised, image.width, image.height);
}

}  // namespace dequip
