#include <fstream>
#include <iostream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "anisobesov/errors.hpp"
#include "anisobesov/experiment.hpp"
#include "json.hpp"

namespace {

// --config is honored before regular parsing so explicit flags override the
// file contents.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

anisobesov::ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw anisobesov::validation_error("cannot open config file '" + path +
                                       "'");
  }
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw anisobesov::validation_error("malformed JSON in config file '" +
                                       path + "'");
  }
  return anisobesov::config_from_json(j);
}

struct TextFlags {
  std::string p;
  std::string q;
  std::string theta;
  std::string n;
  std::string k;
  std::string config;
};

void add_options(CLI::App* cmd, anisobesov::ExperimentConfig& cfg,
                 TextFlags& text) {
  cmd->add_option("--config", text.config, "JSON config file");
  cmd->add_option("--r", cfg.r, "smoothness vector r_1 .. r_d");
  cmd->add_option("--p", text.p, "integrability exponent p (accepts inf)");
  cmd->add_option("--q", text.q, "target exponent q");
  cmd->add_option("--theta", text.theta, "fine index theta (accepts inf)");
  cmd->add_option("--n", text.n, "resolution range, e.g. 2..6");
  cmd->add_option("--k", text.k, "shell range, e.g. 1..5");
  cmd->add_option("--half-width", cfg.half_width, "grid half widths L_j");
  cmd->add_option("--samples", cfg.samples, "grid sample counts N_j (even)");
  cmd->add_option("--output,-o", cfg.output, "output path stem or directory");
  cmd->add_option("--input", cfg.input, "input field file");
  cmd->add_option("--function", cfg.function,
                  "builtin field: gaussian, shell or random");
  cmd->add_option("--width", cfg.width, "gaussian width");
  cmd->add_option("--d", cfg.d, "dimension for generated suites");
  cmd->add_option("--trials", cfg.trials, "number of randomized trials");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--s-max", cfg.s_max,
                  "block truncation depth (-1 = grid maximum)");
  cmd->add_option("--residual-tol", cfg.residual_tol,
                  "admissible relative residual outside the outermost box");
  cmd->add_option("--noise-floor", cfg.noise_floor,
                  "errors at or below this are excluded from slope fits");
  cmd->add_option("--construction", cfg.construction,
                  "witness construction: spectral or sinc");
  cmd->add_option("--dyadic-levels", cfg.dyadic_levels,
                  "half-count of dyadic t levels in the modulus norm");
}

}  // namespace

int main(int argc, char** argv) {
  anisobesov::ExperimentConfig cfg;
  try {
    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const anisobesov::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{
      "Dyadic anisotropic frequency layering, layerwise smoothness norms and "
      "band-limited approximation experiments"};
  app.require_subcommand(0, 1);
  TextFlags text;
  add_options(&app, cfg, text);
  static const char* kCommands[] = {"rate-scan", "norm", "extremal-verify",
                                    "nikolskii", "decompose"};
  static const char* kDescriptions[] = {
      "scan truncation errors of extremal witnesses against the predicted "
      "decay rate",
      "compute the layerwise norm (and for d <= 2 the modulus-based norm)",
      "compare quadrature norms of shell fields with analytic bounds and "
      "the predicted growth",
      "randomized different-metrics inequality checks on band-limited "
      "fields",
      "split a field into spectral layers and write them out"};
  for (int i = 0; i < 5; ++i) {
    add_options(app.add_subcommand(kCommands[i], kDescriptions[i]), cfg,
                text);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto subs = app.get_subcommands();
    if (!subs.empty()) cfg.command = subs.front()->get_name();
    if (!text.p.empty()) cfg.p = anisobesov::parse_real(text.p);
    if (!text.q.empty()) cfg.q = anisobesov::parse_real(text.q);
    if (!text.theta.empty()) cfg.theta = anisobesov::parse_real(text.theta);
    if (!text.n.empty()) {
      std::tie(cfg.n_min, cfg.n_max) = anisobesov::parse_range(text.n);
    }
    if (!text.k.empty()) {
      std::tie(cfg.k_min, cfg.k_max) = anisobesov::parse_range(text.k);
    }
    if (cfg.command.empty()) {
      throw anisobesov::validation_error(
          "no command given; expected one of rate-scan, norm, "
          "extremal-verify, nikolskii, decompose");
    }
    anisobesov::execute(cfg, std::cout);
    return 0;
  } catch (const anisobesov::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const anisobesov::guard_error& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
