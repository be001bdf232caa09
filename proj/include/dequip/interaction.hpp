#pragma once

#include <vector>

#include "dequip/image.hpp"

namespace dequip {

struct Neighbor {
  Patch patch;
  double distance = 0.0;  // window-relative Euclidean distance, pixels
};

// A target patch with the patches collected from its cyclic search window.
struct Neighborhood {
  Patch target;
  std::vector<Neighbor> neighbors;
  int window_side = 0;
};

// Per-pixel total interaction acting on a patch.
using InteractionField = std::vector<double>;

// Euclidean distance between two patch origins, pixels.
double patch_distance(int row_a, int col_a, int row_b, int col_b);

// Inverse-square interaction: element i equals p * |a_i - b_i| / distance^2.
std::vector<double> pair_interaction(const Patch& a, const Patch& b, double distance, double p);

// All patches on the neighbor_stride lattice inside the window_side x
// window_side window centered on the target origin, extracted with cyclic
// wrap; the target itself is excluded. Distances come from the unwrapped
// window offsets. window_side == side is the degenerate window that contains
// only the target, giving zero neighbors.
Neighborhood collect_neighbors(const Image& image, int target_row, int target_col, int side,
                               int window_side, int neighbor_stride);

// Elementwise sum of pair_interaction over all neighbors.
InteractionField total_interaction(const Neighborhood& nbhd, double p);

// target + field, elementwise, origin preserved.
Patch effective_potential(const Patch& target, const InteractionField& field);

}  // namespace dequip
