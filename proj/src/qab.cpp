#include "dequip/qab.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "dequip/dequip.hpp"
#include "dequip/errors.hpp"
#include "dequip/spectral.hpp"

namespace dequip {

namespace {
// One-dimensional pass with border renormalization.
void smooth_axis(const std::vector<double>& kernel, int radius, bool rows, const Image& in,
                 Image& out) {
  const int height = in.height, width = in.width;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      double acc = 0.0, wsum = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        int rr = rows ? r + k : r;
        int cc = rows ? c : c + k;
        if (rr < 0 || rr >= height || cc < 0 || cc >= width) continue;
        double w = kernel[k + radius];
        acc += w * in.at(rr, cc);
        wsum += w;
      }
      out.at(r, c) = acc / wsum;
    }
  }
}
}  // namespace

Image gaussian_smooth(const Image& image, double sigma) {
  validate_image(image);
  if (sigma < 0.0) throw ValidationError("sigma must be non-negative");
  if (sigma == 0.0) return image;

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
    sum += kernel[k + radius];
  }
  for (double& w : kernel) w /= sum;

  Image tmp(image.width, image.height);
  Image out(image.width, image.height);
  smooth_axis(kernel, radius, true, image, tmp);
  smooth_axis(kernel, radius, false, tmp, out);
  return out;
}

Image qab_denoise(const Image& image, const QabParams& params, int threads) {
  validate_image(image);
  if (params.tile_side < 1) throw ValidationError("tile side must be >= 1");
  if (params.tile_side > 96) {
    throw CapacityError("tile side " + std::to_string(params.tile_side) +
                        " exceeds the dense solver cap of 96");
  }
  const int tile = std::min({params.tile_side, image.width, image.height});
  if (params.keep < 1 || params.keep > tile * tile) {
    throw ValidationError("keep must be in [1, tile_side^2]");
  }
  if (params.beta <= 0.0) throw ValidationError("beta must be positive");

  Image smoothed = gaussian_smooth(image, params.smooth_sigma);
  PatchGrid grid = patch_grid(image.width, image.height, tile, tile);

  std::vector<Patch> restored(grid.positions.size());
  auto worker = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      auto [r, c] = grid.positions[i];
      Patch potential = extract_patch(smoothed, r, c, tile, false);
      EigenBasis basis = eigendecompose(build_hamiltonian(potential, params.beta), params.keep);
      Patch noisy = extract_patch(image, r, c, tile, false);
      std::vector<double> coeffs = project(noisy, basis);
      restored[i] = reconstruct(coeffs, basis, r, c);
    }
  };

  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(grid.positions.size())));
  if (n_threads == 1) {
    worker(0, restored.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (restored.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      size_t begin = t * chunk;
      size_t end = std::min(begin + chunk, restored.size());
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return aggregate_patches(restored, image.width, image.height);
}

}  // namespace dequip
