#include "dequip/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "dequip/errors.hpp"

namespace dequip {

namespace {
void require_same_dims(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height) {
    throw ValidationError("images must have equal dimensions");
  }
}
}  // namespace

double psnr(const Image& reference, const Image& test, double peak) {
  validate_image(reference);
  validate_image(test);
  require_same_dims(reference, test);
  if (peak <= 0.0) throw ValidationError("peak must be positive");
  double mse = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    double d = test.data[i] - reference.data[i];
    mse += d * d;
  }
  mse /= static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const Image& reference, const Image& test) {
  validate_image(reference);
  validate_image(test);
  require_same_dims(reference, test);
  constexpr int kWindow = 11;
  constexpr double kSigma = 1.5;
  constexpr double kL = 255.0;
  constexpr double kC1 = (0.01 * kL) * (0.01 * kL);
  constexpr double kC2 = (0.03 * kL) * (0.03 * kL);
  if (reference.width < kWindow || reference.height < kWindow) {
    throw ValidationError("ssim requires min image side >= 11");
  }

  // 11x11 Gaussian weights, unit sum.
  constexpr int half = kWindow / 2;
  double weights[kWindow][kWindow];
  double wsum = 0.0;
  for (int r = 0; r < kWindow; ++r) {
    for (int c = 0; c < kWindow; ++c) {
      double dr = r - half, dc = c - half;
      weights[r][c] = std::exp(-(dr * dr + dc * dc) / (2.0 * kSigma * kSigma));
      wsum += weights[r][c];
    }
  }
  for (auto& row : weights) {
    for (double& w : row) w /= wsum;
  }

  // mean over all fully-interior window positions
  double total = 0.0;
  long count = 0;
  for (int r = 0; r + kWindow <= reference.height; ++r) {
    for (int c = 0; c + kWindow <= reference.width; ++c) {
      double mx = 0, my = 0;
      for (int i = 0; i < kWindow; ++i) {
        for (int j = 0; j < kWindow; ++j) {
          mx += weights[i][j] * reference.at(r + i, c + j);
          my += weights[i][j] * test.at(r + i, c + j);
        }
      }
      double vx = 0, vy = 0, cov = 0;
      for (int i = 0; i < kWindow; ++i) {
        for (int j = 0; j < kWindow; ++j) {
          double dx = reference.at(r + i, c + j) - mx;
          double dy = test.at(r + i, c + j) - my;
          vx += weights[i][j] * dx * dx;
          vy += weights[i][j] * dy * dy;
          cov += weights[i][j] * dx * dy;
        }
      }
      double numerator = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
      double denominator = (mx * mx + my * my + kC1) * (vx + vy + kC2);
      total += numerator / denominator;
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

namespace {
struct RoiStats {
  double mean;
  double var;  // population variance
};

RoiStats roi_stats(const Image& image, const Roi& roi) {
  if (roi.height <= 0 || roi.width <= 0 || roi.top < 0 || roi.left < 0 ||
      roi.top + roi.height > image.height || roi.left + roi.width > image.width) {
    throw ValidationError("ROI must lie inside the image");
  }
  double sum = 0.0;
  long n = static_cast<long>(roi.height) * roi.width;
  for (int r = roi.top; r < roi.top + roi.height; ++r) {
    for (int c = roi.left; c < roi.left + roi.width; ++c) sum += image.at(r, c);
  }
  double mean = sum / n;
  double var = 0.0;
  for (int r = roi.top; r < roi.top + roi.height; ++r) {
    for (int c = roi.left; c < roi.left + roi.width; ++c) {
      double d = image.at(r, c) - mean;
      var += d * d;
    }
  }
  return {mean, var / n};
}

bool overlaps(const Roi& a, const Roi& b) {
  bool row = a.top < b.top + b.height && b.top < a.top + a.height;
  bool col = a.left < b.left + b.width && b.left < a.left + a.width;
  return row && col;
}
}  // namespace

double cnr(const Image& image, const Roi& roi_a, const Roi& roi_b) {
  validate_image(image);
  if (overlaps(roi_a, roi_b)) throw ValidationError("CNR ROIs must be disjoint");
  RoiStats a = roi_stats(image, roi_a);
  RoiStats b = roi_stats(image, roi_b);
  double denom = std::sqrt(a.var + b.var);
  if (denom == 0.0) throw ValidationError("CNR undefined: both ROIs have zero variance");
  return std::abs(a.mean - b.mean) / denom;
}

}  // namespace dequip
