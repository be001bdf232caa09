#pragma once

#include <cstdint>
#include <random>

#include "dequip/image.hpp"

namespace dequip {

// Deterministic sampling built on a seeded mt19937_64. Gaussian variates use
// Box-Muller on explicit uniforms and Poisson variates use sequential-search
// inversion (means above 25 are split into independent chunks, which is
// exact), so the output stream is fixed by the seed alone.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double uniform();             // (0, 1)
  double gaussian();            // standard normal
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// 10*log10(sum clean^2 / sum (noisy-clean)^2); +infinity when noisy == clean.
double measure_snr(const Image& clean, const Image& noisy);

// y = x + n with i.i.d. zero-mean Gaussian n scaled to hit the target SNR.
// An infinite target returns the input unchanged.
Image add_awgn(const Image& image, double target_snr_db, uint64_t seed);

// y = Poisson(eta * x) / eta with eta solved so the expected SNR matches the
// target; requires x >= 0.
Image add_poisson(const Image& image, double target_snr_db, uint64_t seed);

// Multiplicative speckle y = x * (1 + n), n Gaussian with
// sigma = 10^(-SNR/20); requires x >= 0.
Image add_speckle(const Image& image, double target_snr_db, uint64_t seed);

}  // namespace dequip
