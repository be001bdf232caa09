#include "dequip/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "dequip/errors.hpp"

namespace dequip {

NoiseModel parse_noise_model(const std::string& name) {
  if (name == "gaussian") return NoiseModel::gaussian;
  if (name == "poisson") return NoiseModel::poisson;
  throw ValidationError("unknown noise model '" + name + "'");
}

std::string to_string(NoiseModel model) {
  return model == NoiseModel::gaussian ? "gaussian" : "poisson";
}

const std::vector<FitConstants>& builtin_constants() {
  static const std::vector<FitConstants> table = {
      {NoiseModel::gaussian, 5, 12.84e-4, -35.96e-4, 0.7783, 0.7315, 0.5287, -4.4551, 20.6204},
      {NoiseModel::gaussian, 7, 30.96e-4, 13.56e-3, 1.7000, 0.5345, 1.2630, -4.1915, 13.9698},
      {NoiseModel::gaussian, 11, 16.46e-4, 50.40e-3, 4.2500, 4.8210, 1.9161, 6.8223, 9.7995},
      {NoiseModel::poisson, 5, 60.33e-5, -21.85e-4, 0.8202, 0.8621, 0.8083, -3.8975, 16.8476},
      {NoiseModel::poisson, 7, 21.00e-4, 36.31e-4, 1.6030, 0.5800, 1.5391, -4.4288, 10.1560},
      {NoiseModel::poisson, 11, 16.64e-4, 44.23e-3, 4.3990, 2.8900, 1.8587, 11.6517, 3.9798},
  };
  return table;
}

std::vector<FitConstants> load_constants(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open constants file " + json_path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid constants JSON in " + json_path + ": " + e.what());
  }
  if (!doc.is_array()) throw FormatError("constants file must hold a JSON array");
  std::vector<FitConstants> table;
  for (const auto& row : doc) {
    try {
      FitConstants fc{};
      fc.model = parse_noise_model(row.at("model").get<std::string>());
      fc.patch_side = row.at("side").get<int>();
      fc.m1 = row.at("m1").get<double>();
      fc.c1 = row.at("c1").get<double>();
      fc.m2 = row.at("m2").get<double>();
      fc.c2 = row.at("c2").get<double>();
      fc.l1 = row.at("l1").get<double>();
      fc.l2 = row.at("l2").get<double>();
      fc.l3 = row.at("l3").get<double>();
      table.push_back(fc);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("bad constants row in " + json_path + ": " + e.what());
    }
  }
  return table;
}

const FitConstants& find_constants(const std::vector<FitConstants>& table, NoiseModel model,
                                   int patch_side) {
  for (const auto& row : table) {
    if (row.model == model && row.patch_side == patch_side) return row;
  }
  throw ValidationError("no fit constants for model " + to_string(model) + ", patch side " +
                        std::to_string(patch_side));
}

double estimate_p(double snr_db, const FitConstants& constants) {
  return std::max(0.0, constants.m1 * snr_db + constants.c1);
}

int estimate_d(double snr_db, const FitConstants& constants, int p_dim) {
  double fit = constants.m2 * snr_db + constants.c2;
  int d = static_cast<int>(std::floor(fit + 0.5));  // half-up
  return std::clamp(d, 1, p_dim);
}

double estimate_f_factor(int d, const FitConstants& constants) {
  if (std::abs(d - constants.l2) < 0.5) {
    throw NumericalError("d = " + std::to_string(d) + " is inside the pole guard of the F_factor fit");
  }
  double f = constants.l1 + constants.l3 / (d - constants.l2);
  if (f <= 0.0) throw NumericalError("F_factor fit produced a non-positive value");
  return f;
}

int default_window(int patch_side) {
  switch (patch_side) {
    case 5: return 15;
    case 7: return 21;
    case 11: return 33;
    default: {
      int w = 3 * patch_side;
      return w % 2 == 0 ? w + 1 : w;
    }
  }
}

DenoiseParams auto_params(double snr_db, int patch_side, NoiseModel model,
                          const std::vector<FitConstants>* table) {
  const auto& constants = find_constants(table ? *table : builtin_constants(), model, patch_side);
  DenoiseParams params;
  params.patch_side = patch_side;
  params.window_side = default_window(patch_side);
  params.p = estimate_p(snr_db, constants);
  params.d = estimate_d(snr_db, constants, patch_side * patch_side);
  params.f_factor = estimate_f_factor(params.d, constants);
  params.target_stride = std::max(1, patch_side / 2);
  params.neighbor_stride = 1;
  return params;
}

}  // namespace dequip
