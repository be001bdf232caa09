#include "dequip/image.hpp"

#include <cmath>
#include <string>

#include "dequip/errors.hpp"

namespace dequip {

void validate_image(const Image& image) {
  if (image.width <= 0 || image.height <= 0) {
    throw ValidationError("image dimensions must be positive");
  }
  if (image.data.size() != static_cast<size_t>(image.width) * image.height) {
    throw ValidationError("image data length does not match width*height");
  }
  for (double v : image.data) {
    if (!std::isfinite(v)) throw ValidationError("image contains non-finite intensity");
  }
}

namespace {
int wrap(int i, int n) {
  int m = i % n;
  return m < 0 ? m + n : m;
}
}  // namespace

Patch extract_patch(const Image& image, int row, int col, int side, bool cyclic) {
  if (side <= 0 || side > image.width || side > image.height) {
    throw ValidationError("patch side must be in [1, min(image dims)]");
  }
  if (!cyclic && (row < 0 || col < 0 || row + side > image.height || col + side > image.width)) {
    throw ValidationError("patch at (" + std::to_string(row) + "," + std::to_string(col) +
                          ") side " + std::to_string(side) + " exceeds image bounds");
  }
  Patch patch;
  patch.side = side;
  patch.row = row;
  patch.col = col;
  patch.values.resize(static_cast<size_t>(side) * side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      int sr = cyclic ? wrap(row + r, image.height) : row + r;
      int sc = cyclic ? wrap(col + c, image.width) : col + c;
      patch.values[static_cast<size_t>(r) * side + c] = image.at(sr, sc);
    }
  }
  return patch;
}

namespace {
std::vector<int> axis_origins(int dim, int side, int stride) {
  std::vector<int> origins;
  for (int o = 0; o + side <= dim; o += stride) origins.push_back(o);
  if (origins.empty() || origins.back() + side < dim) origins.push_back(dim - side);
  return origins;
}
}  // namespace

PatchGrid patch_grid(int width, int height, int side, int stride) {
  if (side <= 0 || side > width || side > height) {
    throw ValidationError("patch side must be in [1, min(width, height)]");
  }
  if (stride < 1) throw ValidationError("stride must be >= 1");
  PatchGrid grid;
  grid.side = side;
  grid.stride = stride;
  auto rows = axis_origins(height, side, stride);
  auto cols = axis_origins(width, side, stride);
  grid.positions.reserve(rows.size() * cols.size());
  for (int r : rows) {
    for (int c : cols) grid.positions.emplace_back(r, c);
  }
  return grid;
}

Image aggregate_patches(const std::vector<Patch>& patches, int width, int height) {
  Image sum(width, height, 0.0);
  std::vector<int> count(sum.size(), 0);
  for (const Patch& patch : patches) {
    if (patch.row < 0 || patch.col < 0 || patch.row + patch.side > height ||
        patch.col + patch.side > width) {
      throw ValidationError("patch exceeds output bounds in aggregation");
    }
    for (int r = 0; r < patch.side; ++r) {
      for (int c = 0; c < patch.side; ++c) {
        size_t idx = static_cast<size_t>(patch.row + r) * width + (patch.col + c);
        sum.data[idx] += patch.values[static_cast<size_t>(r) * patch.side + c];
        ++count[idx];
      }
    }
  }
  for (size_t i = 0; i < sum.size(); ++i) {
    if (count[i] == 0) throw ValidationError("aggregation left an uncovered pixel");
    sum.data[i] /= count[i];
  }
  return sum;
}

}  // namespace dequip
