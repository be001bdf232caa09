// Command-line front end: denoise, qab, noise, metrics, ipr, hyper, bench.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dequip/dequip.hpp"
#include "dequip/errors.hpp"
#include "dequip/hyper.hpp"
#include "dequip/interaction.hpp"
#include "dequip/metrics.hpp"
#include "dequip/noise.hpp"
#include "dequip/pgm.hpp"
#include "dequip/qab.hpp"
#include "dequip/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitCapacity = 5;

constexpr const char* kCsvHeader = "image,method,noise_model,target_snr,seed,psnr,ssim,cnr,wall_ms";

int default_threads() {
  if (const char* env = std::getenv("DEQUIP_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string format_db(double value) {
  if (std::isinf(value)) return "inf";
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << value;
  return os.str();
}

// Values from a JSON config file fill in options the user did not pass on the
// command line, so flags always win.
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dequip::IoError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw dequip::FormatError("invalid config JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw dequip::FormatError("config file must hold a JSON object");
  for (auto& [key, value] : doc.items()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) throw dequip::ValidationError("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;  // explicit flag overrides file value
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

struct DenoiseArgs {
  std::string input, output, model = "gaussian", config;
  int patch = 7;
  double snr = std::nan("");
  double p = std::nan(""), ffactor = std::nan("");
  int d = -1, window = -1, stride = -1;
  int threads = default_threads();
  uint64_t seed = 0;  // accepted for CSV bookkeeping symmetry
};

dequip::DenoiseParams resolve_denoise_params(const DenoiseArgs& args) {
  const bool has_explicit = !std::isnan(args.p) && args.d > 0 && !std::isnan(args.ffactor);
  dequip::DenoiseParams params;
  if (has_explicit) {
    params.patch_side = args.patch;
    params.window_side = args.window > 0 ? args.window : dequip::default_window(args.patch);
    params.p = args.p;
    params.d = args.d;
    params.f_factor = args.ffactor;
    params.target_stride = std::max(1, args.patch / 2);
  } else {
    if (std::isnan(args.snr)) {
      throw dequip::ValidationError("--snr is required unless --p, --d and --ffactor are all given");
    }
    params = dequip::auto_params(args.snr, args.patch, dequip::parse_noise_model(args.model));
    if (!std::isnan(args.p)) params.p = args.p;
    if (args.d > 0) params.d = args.d;
    if (!std::isnan(args.ffactor)) params.f_factor = args.ffactor;
    if (args.window > 0) params.window_side = args.window;
  }
  if (args.stride > 0) params.target_stride = args.stride;
  return params;
}

void emit_summary(const std::string& image, const std::string& method, const std::string& model,
                  double snr, uint64_t seed, const std::string& psnr, const std::string& ssim,
                  const std::string& cnr, double wall_ms) {
  std::cout << kCsvHeader << "\n"
            << image << "," << method << "," << model << "," << format_db(snr) << "," << seed
            << "," << psnr << "," << ssim << "," << cnr << "," << wall_ms << "\n";
}

int run_denoise(const DenoiseArgs& args) {
  auto start = std::chrono::steady_clock::now();
  dequip::DenoiseParams params = resolve_denoise_params(args);  // usage errors before I/O
  dequip::Image noisy = dequip::load_pgm(args.input);
  dequip::Image restored = dequip::denoise_image(noisy, params, args.threads);
  dequip::save_pgm(restored, args.output);
  emit_summary(std::filesystem::path(args.input).stem().string(), "dequip", args.model, args.snr,
               args.seed, "", "", "", elapsed_ms(start));
  return kExitOk;
}

int run_qab(const std::string& input, const std::string& output, const dequip::QabParams& params,
            int threads) {
  auto start = std::chrono::steady_clock::now();
  dequip::Image noisy = dequip::load_pgm(input);
  dequip::Image restored = dequip::qab_denoise(noisy, params, threads);
  dequip::save_pgm(restored, output);
  emit_summary(std::filesystem::path(input).stem().string(), "qab", "", std::nan(""), 0, "", "",
               "", elapsed_ms(start));
  return kExitOk;
}

int run_noise(const std::string& input, const std::string& output, const std::string& model,
              double snr, uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  dequip::Image clean = dequip::load_pgm(input);
  dequip::Image noisy;
  if (model == "gaussian") {
    noisy = dequip::add_awgn(clean, snr, seed);
  } else if (model == "poisson") {
    noisy = dequip::add_poisson(clean, snr, seed);
  } else if (model == "speckle") {
    noisy = dequip::add_speckle(clean, snr, seed);
  } else {
    throw dequip::ValidationError("unknown noise model '" + model + "'");
  }
  double measured = dequip::measure_snr(clean, noisy);
  dequip::save_pgm(noisy, output);
  std::cout << "image,model,target_snr,measured_snr,seed\n"
            << std::filesystem::path(input).stem().string() << "," << model << ","
            << format_db(snr) << "," << format_db(measured) << "," << seed << "\n";
  return kExitOk;
}

int run_metrics(const std::string& ref_path, const std::string& test_path,
                const std::vector<int>& roi_a, const std::vector<int>& roi_b) {
  dequip::Image ref = dequip::load_pgm(ref_path);
  dequip::Image test = dequip::load_pgm(test_path);
  double psnr_db = dequip::psnr(ref, test);
  double ssim_score = dequip::ssim(ref, test);
  std::string cnr_text;
  if (!roi_a.empty() || !roi_b.empty()) {
    if (roi_a.size() != 4 || roi_b.size() != 4) {
      throw dequip::ValidationError("--roi-a/--roi-b need four values: top left height width");
    }
    dequip::Roi a{roi_a[0], roi_a[1], roi_a[2], roi_a[3]};
    dequip::Roi b{roi_b[0], roi_b[1], roi_b[2], roi_b[3]};
    cnr_text = format_db(dequip::cnr(test, a, b));
  }
  std::cout << "reference,test,psnr,ssim,cnr\n"
            << std::filesystem::path(ref_path).stem().string() << ","
            << std::filesystem::path(test_path).stem().string() << "," << format_db(psnr_db) << ","
            << format_db(ssim_score) << "," << cnr_text << "\n";
  return kExitOk;
}

int run_ipr(const std::string& input, int patch, double beta, const std::vector<double>& snrs,
            int seeds, int max_patches) {
  dequip::Image clean = dequip::load_pgm(input);
  std::cout << "snr,patch_side,mean_ipr\n";
  for (double snr : snrs) {
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
      dequip::Image noisy = std::isinf(snr) ? clean : dequip::add_awgn(clean, snr, s + 1);
      total += dequip::average_ipr(noisy, patch, beta, max_patches);
    }
    std::cout << format_db(snr) << "," << patch << "," << total / seeds << "\n";
  }
  return kExitOk;
}

int run_hyper(double snr, int patch, const std::string& model, const std::string& constants_path) {
  std::vector<dequip::FitConstants> table;
  const std::vector<dequip::FitConstants>* table_ptr = nullptr;
  if (!constants_path.empty()) {
    table = dequip::load_constants(constants_path);
    table_ptr = &table;
  }
  dequip::DenoiseParams params =
      dequip::auto_params(snr, patch, dequip::parse_noise_model(model), table_ptr);
  nlohmann::json out{{"p", params.p},
                     {"d", params.d},
                     {"f_factor", params.f_factor},
                     {"window", params.window_side},
                     {"target_stride", params.target_stride},
                     {"neighbor_stride", params.neighbor_stride}};
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int run_bench(const std::string& dir, const std::vector<std::string>& models,
              const std::vector<double>& snrs, const std::vector<int>& patches, int seeds,
              const std::string& out_path, int threads) {
  std::vector<std::filesystem::path> images;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() == ".pgm") images.push_back(entry.path());
    }
  }
  std::sort(images.begin(), images.end());
  if (images.empty()) throw dequip::ValidationError("no .pgm images found in " + dir);

  std::ofstream out(out_path);
  if (!out) throw dequip::IoError("cannot open " + out_path + " for writing");
  out << kCsvHeader << "\n";
  for (const auto& path : images) {
    dequip::Image clean = dequip::load_pgm(path.string());
    for (const std::string& model_name : models) {
      dequip::NoiseModel model = dequip::parse_noise_model(model_name);
      for (double snr : snrs) {
        for (int patch : patches) {
          double psnr_sum = 0.0, ssim_sum = 0.0, wall_sum = 0.0;
          for (int seed = 1; seed <= seeds; ++seed) {
            dequip::Image noisy = model == dequip::NoiseModel::gaussian
                                      ? dequip::add_awgn(clean, snr, seed)
                                      : dequip::add_poisson(clean, snr, seed);
            dequip::DenoiseParams params = dequip::auto_params(snr, patch, model);
            auto start = std::chrono::steady_clock::now();
            dequip::Image restored = dequip::denoise_image(noisy, params, threads);
            wall_sum += elapsed_ms(start);
            psnr_sum += dequip::psnr(clean, restored);
            ssim_sum += dequip::ssim(clean, restored);
          }
          out << path.stem().string() << ",dequip-p" << patch << "," << model_name << ","
              << format_db(snr) << "," << seeds << "," << psnr_sum / seeds << ","
              << ssim_sum / seeds << ",," << wall_sum / seeds << "\n";
          out.flush();
        }
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patch-interaction adaptive-basis image denoiser"};
  app.require_subcommand(1);

  // denoise
  DenoiseArgs dn;
  CLI::App* denoise = app.add_subcommand("denoise", "Denoise a PGM image");
  denoise->add_option("--in", dn.input, "Input PGM")->required();
  denoise->add_option("--out", dn.output, "Output PGM")->required();
  denoise->add_option("--patch", dn.patch, "Patch side");
  denoise->add_option("--snr", dn.snr, "Corruption SNR in dB (drives auto hyperparameters)");
  denoise->add_option("--model", dn.model, "Noise model: gaussian|poisson");
  denoise->add_option("--p", dn.p, "Interaction constant");
  denoise->add_option("--d", dn.d, "Retained subspace dimension");
  denoise->add_option("--ffactor", dn.ffactor, "Intensity-range-to-beta factor");
  denoise->add_option("--window", dn.window, "Search window side");
  denoise->add_option("--stride", dn.stride, "Target patch stride");
  denoise->add_option("--threads", dn.threads, "Worker threads");
  denoise->add_option("--seed", dn.seed, "Seed recorded in the CSV summary");
  denoise->add_option("--config", dn.config, "JSON config file (flags override)");

  // qab
  std::string qab_in, qab_out;
  dequip::QabParams qab_params;
  int qab_threads = default_threads();
  CLI::App* qab = app.add_subcommand("qab", "Single-particle baseline denoiser");
  qab->add_option("--in", qab_in)->required();
  qab->add_option("--out", qab_out)->required();
  qab->add_option("--beta", qab_params.beta, "Kinetic coefficient");
  qab->add_option("--sigma", qab_params.smooth_sigma, "Gaussian pre-filter sigma");
  qab->add_option("--keep", qab_params.keep, "Lowest-energy vectors kept")->required();
  qab->add_option("--tile", qab_params.tile_side, "Tile side (<= 96)");
  qab->add_option("--threads", qab_threads, "Worker threads");

  // noise
  std::string ns_in, ns_out, ns_model = "gaussian";
  double ns_snr = 20.0;
  uint64_t ns_seed = 1;
  CLI::App* noise = app.add_subcommand("noise", "Corrupt an image at a target SNR");
  noise->add_option("--in", ns_in)->required();
  noise->add_option("--out", ns_out)->required();
  noise->add_option("--model", ns_model, "gaussian|poisson|speckle");
  noise->add_option("--snr", ns_snr, "Target SNR in dB")->required();
  noise->add_option("--seed", ns_seed, "RNG seed");

  // metrics
  std::string mt_ref, mt_test;
  std::vector<int> mt_roi_a, mt_roi_b;
  CLI::App* metrics = app.add_subcommand("metrics", "PSNR/SSIM (and optional ROI CNR)");
  metrics->add_option("--ref", mt_ref)->required();
  metrics->add_option("--test", mt_test)->required();
  metrics->add_option("--roi-a", mt_roi_a, "top left height width")->expected(4);
  metrics->add_option("--roi-b", mt_roi_b, "top left height width")->expected(4);

  // ipr
  std::string ipr_in;
  int ipr_patch = 7, ipr_seeds = 1, ipr_max_patches = 0;
  double ipr_beta = 350.0;
  std::vector<double> ipr_snrs;
  CLI::App* ipr = app.add_subcommand("ipr", "Localization diagnostic sweep");
  ipr->add_option("--in", ipr_in)->required();
  ipr->add_option("--patch", ipr_patch, "Patch side");
  ipr->add_option("--beta", ipr_beta, "Kinetic coefficient");
  ipr->add_option("--snr-list", ipr_snrs, "SNR points in dB")->required();
  ipr->add_option("--seeds", ipr_seeds, "Noise realizations per point");
  ipr->add_option("--max-patches", ipr_max_patches, "Cap on patches per point (0 = all)");

  // hyper
  double hy_snr = 0.0;
  int hy_patch = 7;
  std::string hy_model = "gaussian", hy_constants;
  CLI::App* hyper = app.add_subcommand("hyper", "Print auto hyperparameters as JSON");
  hyper->add_option("--snr", hy_snr)->required();
  hyper->add_option("--patch", hy_patch);
  hyper->add_option("--model", hy_model);
  hyper->add_option("--constants", hy_constants, "JSON fit-constants file");

  // bench
  std::string bn_dir, bn_out = "bench.csv";
  std::vector<std::string> bn_models = {"gaussian"};
  std::vector<double> bn_snrs = {16.0};
  std::vector<int> bn_patches = {7};
  int bn_seeds = 1, bn_threads = default_threads();
  CLI::App* bench = app.add_subcommand("bench", "Factorial benchmark over an image directory");
  bench->add_option("--images", bn_dir, "Directory of .pgm images")->required();
  bench->add_option("--models", bn_models, "gaussian|poisson");
  bench->add_option("--snrs", bn_snrs, "SNR points in dB");
  bench->add_option("--patches", bn_patches, "Patch sides");
  bench->add_option("--seeds", bn_seeds, "Seeds per cell");
  bench->add_option("--out", bn_out, "Output CSV path");
  bench->add_option("--threads", bn_threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*denoise) {
      if (!dn.config.empty()) {
        apply_config(denoise, dn.config);
      }
      return run_denoise(dn);
    }
    if (*qab) return run_qab(qab_in, qab_out, qab_params, qab_threads);
    if (*noise) return run_noise(ns_in, ns_out, ns_model, ns_snr, ns_seed);
    if (*metrics) return run_metrics(mt_ref, mt_test, mt_roi_a, mt_roi_b);
    if (*ipr) return run_ipr(ipr_in, ipr_patch, ipr_beta, ipr_snrs, ipr_seeds, ipr_max_patches);
    if (*hyper) return run_hyper(hy_snr, hy_patch, hy_model, hy_constants);
    if (*bench) return run_bench(bn_dir, bn_models, bn_snrs, bn_patches, bn_seeds, bn_out, bn_threads);
  } catch (const dequip::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const dequip::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const dequip::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const dequip::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
