#pragma once

#include <utility>
#include <vector>

namespace dequip {

// 2-D grayscale image, row-major, real intensities on a nominal [0,255] scale.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Image() = default;
  Image(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  double& at(int row, int col) { return data[static_cast<size_t>(row) * width + col]; }
  double at(int row, int col) const { return data[static_cast<size_t>(row) * width + col]; }
  size_t size() const { return data.size(); }
};

// Square sub-grid of an image together with its grid position.
struct Patch {
  int side = 0;
  int row = 0;  // origin (top-left) in the source image
  int col = 0;
  std::vector<double> values;  // row-major, side*side entries

  int dim() const { return side * side; }
};

// Row-major ordered patch origins covering an image.
struct PatchGrid {
  int side = 0;
  int stride = 0;
  std::vector<std::pair<int, int>> positions;  // (row, col)
};

// Throws ValidationError if the image dimensions/data are inconsistent or non-finite.
void validate_image(const Image& image);

// Copies a side x side patch at (row, col). With cyclic=true indices wrap
// modulo the image dimensions; otherwise out-of-bounds is a ValidationError.
Patch extract_patch(const Image& image, int row, int col, int side, bool cyclic);

// Origins at multiples of stride, last origin per axis clamped to dim - side
// so that every pixel is covered.
PatchGrid patch_grid(int width, int height, int side, int stride);

// Per-pixel arithmetic mean of all covering patches, accumulated in the
// order of the input sequence. Uncovered pixel -> ValidationError.
Image aggregate_patches(const std::vector<Patch>& patches, int width, int height);

}  // namespace dequip
