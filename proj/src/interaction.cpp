#include "dequip/interaction.hpp"

#include <cmath>

#include "dequip/errors.hpp"

namespace dequip {

double patch_distance(int row_a, int col_a, int row_b, int col_b) {
  double dr = row_a - row_b;
  double dc = col_a - col_b;
  return std::sqrt(dr * dr + dc * dc);
}

std::vector<double> pair_interaction(const Patch& a, const Patch& b, double distance, double p) {
  if (distance <= 0.0) throw ValidationError("interaction distance must be positive");
  if (a.side != b.side) throw ValidationError("interacting patches must have equal sides");
  if (p < 0.0) throw ValidationError("interaction constant p must be non-negative");
  const double inv_d2 = p / (distance * distance);
  std::vector<double> field(a.values.size());
  for (size_t i = 0; i < field.size(); ++i) {
    field[i] = inv_d2 * std::abs(a.values[i] - b.values[i]);
  }
  return field;
}

Neighborhood collect_neighbors(const Image& image, int target_row, int target_col, int side,
                               int window_side, int neighbor_stride) {
  if (window_side < side) throw ValidationError("window side must be >= patch side");
  if (window_side % 2 == 0) throw ValidationError("window side must be odd");
  if (neighbor_stride < 1) throw ValidationError("neighbor stride must be >= 1");

  Neighborhood nbhd;
  nbhd.window_side = window_side;
  nbhd.target = extract_patch(image, target_row, target_col, side, true);

  // The degenerate window holds only the target patch itself.
  if (window_side == side) return nbhd;

  const int half = (window_side - 1) / 2;
  for (int dr = -half; dr <= half; dr += neighbor_stride) {
    for (int dc = -half; dc <= half; dc += neighbor_stride) {
      if (dr == 0 && dc == 0) continue;
      Neighbor nb;
      nb.patch = extract_patch(image, target_row + dr, target_col + dc, side, true);
      nb.distance = patch_distance(0, 0, dr, dc);
      nbhd.neighbors.push_back(std::move(nb));
    }
  }
  return nbhd;
}

InteractionField total_interaction(const Neighborhood& nbhd, double p) {
  InteractionField total(nbhd.target.values.size(), 0.0);
  for (const Neighbor& nb : nbhd.neighbors) {
    std::vector<double> term = pair_interaction(nbhd.target, nb.patch, nb.distance, p);
    for (size_t i = 0; i < total.size(); ++i) total[i] += term[i];
  }
  return total;
}

Patch effective_potential(const Patch& target, const InteractionField& field) {
  if (field.size() != target.values.size()) {
    throw ValidationError("interaction field length does not match patch");
  }
  Patch result = target;
  for (size_t i = 0; i < field.size(); ++i) result.values[i] += field[i];
  return result;
}

}  // namespace dequip
