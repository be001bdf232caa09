#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dequip/dequip.hpp"

namespace dequip {

enum class NoiseModel { gaussian, poisson };

NoiseModel parse_noise_model(const std::string& name);
std::string to_string(NoiseModel model);

// Fitted constants of the hyperparameter selection rules for one
// (noise model, patch side) combination.
struct FitConstants {
  NoiseModel model;
  int patch_side;
  double m1, c1;      // p = m1 * SNR + c1
  double m2, c2;      // d = round(m2 * SNR + c2)
  double l1, l2, l3;  // F_factor = l1 + l3 / (d - l2)
};

// The six built-in (model, side) rows for sides 5, 7 and 11.
const std::vector<FitConstants>& builtin_constants();

// Loads rows from a JSON array of objects with keys
// {model, side, m1, c1, m2, c2, l1, l2, l3}.
std::vector<FitConstants> load_constants(const std::string& json_path);

// Row lookup; unknown (model, side) -> ValidationError.
const FitConstants& find_constants(const std::vector<FitConstants>& table, NoiseModel model,
                                   int patch_side);

// max(0, m1 * snr + c1); the interaction law requires p >= 0.
double estimate_p(double snr_db, const FitConstants& constants);

// round-half-up(m2 * snr + c2), clamped to [1, p_dim].
int estimate_d(double snr_db, const FitConstants& constants, int p_dim);

// l1 + l3 / (d - l2). |d - l2| < 0.5 is inside the pole guard of the fitted
// hyperbola -> NumericalError; a non-positive result is also a NumericalError.
double estimate_f_factor(int d, const FitConstants& constants);

// 5 -> 15, 7 -> 21, 11 -> 33; other sides use 3 * side rounded up to odd.
int default_window(int patch_side);

// Chains the rules above into a full parameter set. A custom constants table
// may be supplied; built-ins are used otherwise.
DenoiseParams auto_params(double snr_db, int patch_side, NoiseModel model,
                          const std::vector<FitConstants>* table = nullptr);

}  // namespace dequip
