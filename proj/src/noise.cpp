#include "dequip/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dequip/errors.hpp"

namespace dequip {

double Rng::uniform() {
  // 53-bit mantissa in (0, 1); zero is excluded for the Box-Muller log.
  uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean)) throw ValidationError("poisson mean must be finite and >= 0");
  std::uint64_t total = 0;
  // Poisson(a + b) = Poisson(a) + Poisson(b) for independent draws, so large
  // means are split into chunks small enough for sequential-search inversion.
  constexpr double kChunk = 25.0;
  while (mean > kChunk) {
    total += poisson(kChunk);
    mean -= kChunk;
  }
  if (mean == 0.0) return total;
  double p = std::exp(-mean);
  double cumulative = p;
  double u = uniform();
  std::uint64_t x = 0;
  while (u > cumulative) {
    ++x;
    p *= mean / static_cast<double>(x);
    cumulative += p;
    if (p == 0.0) break;  // exhausted double precision in the far tail
  }
  return total + x;
}

namespace {

double sum_squares(const Image& image) {
  double s = 0.0;
  for (double v : image.data) s += v * v;
  return s;
}

void require_same_dims(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height) {
    throw ValidationError("images must have equal dimensions");
  }
}

}  // namespace

double measure_snr(const Image& clean, const Image& noisy) {
  validate_image(clean);
  validate_image(noisy);
  require_same_dims(clean, noisy);
  double signal = sum_squares(clean);
  double noise = 0.0;
  for (size_t i = 0; i < clean.size(); ++i) {
    double d = noisy.data[i] - clean.data[i];
    noise += d * d;
  }
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / noise);
}

Image add_awgn(const Image& image, double target_snr_db, uint64_t seed) {
  validate_image(image);
  if (std::isinf(target_snr_db) && target_snr_db > 0) return image;
  double signal = sum_squares(image);
  if (signal == 0.0) throw ValidationError("cannot target an SNR on an all-zero image");
  double sigma = std::sqrt(signal / (image.size() * std::pow(10.0, target_snr_db / 10.0)));
  Rng rng(seed);
  Image noisy = image;
  for (double& v : noisy.data) v += sigma * rng.gaussian();
  return noisy;
}

Image add_poisson(const Image& image, double target_snr_db, uint64_t seed) {
  validate_image(image);
  double sum = 0.0, sum2 = 0.0;
  for (double v : image.data) {
    if (v < 0.0) throw ValidationError("poisson noise requires non-negative intensities");
    sum += v;
    sum2 += v * v;
  }
  if (sum2 == 0.0) throw ValidationError("cannot target an SNR on an all-zero image");
  // E[sum (y-x)^2] = sum x/eta, so SNR = eta * sum2 / sum in expectation.
  double eta = std::pow(10.0, target_snr_db / 10.0) * sum / sum2;
  Rng rng(seed);
  Image noisy = image;
  for (double& v : noisy.data) {
    v = static_cast<double>(rng.poisson(eta * v)) / eta;
  }
  return noisy;
}

Image add_speckle(const Image& image, double target_snr_db, uint64_t seed) {
  validate_image(image);
  for (double v : image.data) {
    if (v < 0.0) throw ValidationError("speckle requires non-negative intensities");
  }
  // Noise power E[sum (x n)^2] = sigma^2 sum x^2, hence sigma = 10^(-SNR/20).
  double sigma = std::pow(10.0, -target_snr_db / 20.0);
  Rng rng(seed);
  Image noisy = image;
  for (double& v : noisy.data) v *= 1.0 + sigma * rng.gaussian();
  return noisy;
}

}  // namespace dequip
