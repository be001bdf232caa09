#pragma once

#include "dequip/image.hpp"

namespace dequip {

// Rectangular region of interest, fully inside the image.
struct Roi {
  int top = 0;
  int left = 0;
  int height = 0;
  int width = 0;
};

// 10*log10(peak^2 / MSE); +infinity when the images are identical.
double psnr(const Image& reference, const Image& test, double peak = 255.0);

// Mean local SSIM, 11x11 Gaussian window sigma 1.5, K1=0.01, K2=0.03,
// dynamic range 255. Requires min(width, height) >= 11.
double ssim(const Image& reference, const Image& test);

// |mu_a - mu_b| / sqrt(var_a + var_b) over two disjoint ROIs.
double cnr(const Image& image, const Roi& roi_a, const Roi& roi_b);

}  // namespace dequip
