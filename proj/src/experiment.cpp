#include "anisobesov/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <tuple>

#include "anisobesov/approx.hpp"
#include "anisobesov/besov.hpp"
#include "anisobesov/errors.hpp"
#include "anisobesov/extremal.hpp"
#include "anisobesov/serialization.hpp"
#include "anisobesov/spectral.hpp"

namespace anisobesov {

namespace {

using nlohmann::json;

constexpr double kMaxHalfWidth = 400.0;

double require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw guard_error(std::string(what) + " is not finite");
  }
  return v;
}

// Grid sized so the box at the given top level fits under Nyquist with some
// margin; the half width is capped to keep sampling steps reasonable.
GridSpec scan_grid(const AnisotropyProfile& profile, int top_level,
                   double margin, int samples_1d, int samples_2d,
                   int samples_3d) {
  const int d = profile.dim();
  const int n = d == 1 ? samples_1d : (d == 2 ? samples_2d : samples_3d);
  std::vector<double> half_width(d);
  std::vector<int> samples(d, n);
  for (int ax = 0; ax < d; ++ax) {
    const double needed = margin * profile.layer_bound(ax, top_level);
    half_width[ax] =
        std::min(kMaxHalfWidth, std::numbers::pi * n / (2.0 * needed));
  }
  return make_grid(std::move(half_width), std::move(samples));
}

GridSpec box_grid(int d) {
  switch (d) {
    case 1:
      return make_grid({40.0}, {4096});
    case 2:
      return make_grid({30.0, 30.0}, {256, 256});
    default:
      return make_grid(std::vector<double>(d, 20.0), std::vector<int>(d, 64));
  }
}

GridSpec pick_grid(const ExperimentConfig& cfg, const GridSpec& fallback) {
  if (cfg.half_width.empty() && cfg.samples.empty()) return fallback;
  return make_grid(cfg.half_width, cfg.samples);
}

WitnessConstruction parse_construction(const std::string& name) {
  if (name == "spectral") return WitnessConstruction::spectral;
  if (name == "sinc") return WitnessConstruction::sinc;
  throw validation_error("unknown witness construction '" + name +
                         "' (expected spectral or sinc)");
}

SampledField builtin_field(const ExperimentConfig& cfg,
                           const AnisotropyProfile& profile,
                           const GridSpec& grid) {
  if (cfg.function == "gaussian") {
    if (!(cfg.width > 0.0)) {
      throw validation_error("gaussian width must be positive");
    }
    const double inv = 1.0 / (2.0 * cfg.width * cfg.width);
    return sample(grid, [inv](const std::vector<double>& x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::complex<double>(std::exp(-s * inv), 0.0);
    });
  }
  if (cfg.function == "shell") {
    return shell_indicator_field(profile, cfg.k_min, grid);
  }
  if (cfg.function == "random") {
    return random_band_limited(grid, layer_box(profile, cfg.k_min).bounds,
                               cfg.seed);
  }
  throw validation_error("unknown builtin function '" + cfg.function +
                         "' (expected gaussian, shell or random)");
}

SampledField input_field(const ExperimentConfig& cfg,
                         const AnisotropyProfile& profile,
                         const GridSpec& fallback, GridSpec& grid_out) {
  if (!cfg.input.empty()) {
    SampledField f = load_field(cfg.input);
    if (f.grid.dim() != profile.dim()) {
      throw validation_error(
          "input field dimension does not match the smoothness vector");
    }
    grid_out = f.grid;
    return f;
  }
  grid_out = pick_grid(cfg, fallback);
  return builtin_field(cfg, profile, grid_out);
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw guard_error("slope fit is degenerate");
  }
  return sxy / sxx;
}

json real_to_json(double v) {
  return std::isinf(v) ? json("inf") : json(v);
}

void run_rate_scan(const ExperimentConfig& cfg, std::ostream& out) {
  const AnisotropyProfile profile = make_profile(cfg.r);
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) {
    throw validation_error("rate scan needs 1 <= n_min <= n_max");
  }
  const GridSpec grid =
      pick_grid(cfg, scan_grid(profile, cfg.n_max, 1.05, 16384, 1024, 128));
  const WitnessConstruction construction =
      parse_construction(cfg.construction);

  std::vector<int> n_values;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) n_values.push_back(n);
  auto family = [&](int n) {
    return lower_bound_witness(profile, n, cfg.p, grid, construction).field;
  };
  RateScanOptions opts;
  opts.noise_floor = cfg.noise_floor;
  const RateReport report =
      rate_scan(family, profile, cfg.p, cfg.q, n_values, opts);
  save_rate_report(report, cfg.output);

  char line[160];
  std::snprintf(line, sizeof line,
                "rate-scan: fitted slope %.4f vs theoretical %.4f (%zu rows) "
                "-> %s.csv\n",
                report.fitted_slope, -report.theoretical_exponent,
                report.rows.size(), cfg.output.c_str());
  out << line;
}

void run_extremal_verify(const ExperimentConfig& cfg, std::ostream& out) {
  const AnisotropyProfile profile = make_profile(cfg.r);
  if (cfg.k_min < 1 || cfg.k_max < cfg.k_min + 1) {
    throw validation_error(
        "extremal verification needs a k range with at least two levels and "
        "k_min >= 1");
  }
  // Margin 2 keeps the sampling rate above the harmonics that |f|^p picks up
  // near three times the band edge; tighter margins alias them for p != 2.
  const GridSpec grid =
      pick_grid(cfg, scan_grid(profile, cfg.k_max, 2.0, 32768, 2048, 128));
  double min_half_width = grid.half_width[0];
  for (double L : grid.half_width) min_half_width = std::min(min_half_width, L);
  const double tail = sinc_tail_bound(cfg.p, min_half_width);

  std::ofstream csv(cfg.output + ".csv", std::ios::binary);
  if (!csv) {
    throw validation_error("cannot open '" + cfg.output +
                           ".csv' for writing");
  }
  csv << "k,norm,lower,upper,tail_bound\n";
  std::vector<double> ks;
  std::vector<double> log_norms;
  int within = 0;
  constexpr double kSlack = 0.05;
  char buf[160];
  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    const double norm =
        require_finite(lp_norm(shell_field(profile, k, grid), cfg.p),
                       "quadrature norm");
    const NormBounds bounds = shell_field_norm_bounds(profile, k, cfg.p);
    if (norm >= bounds.lower * (1.0 - kSlack) &&
        norm <= bounds.upper * (1.0 + kSlack)) {
      ++within;
    }
    ks.push_back(static_cast<double>(k));
    log_norms.push_back(std::log2(norm));
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", k, norm,
                  bounds.lower, bounds.upper, tail);
    csv << buf;
  }
  if (!csv) {
    throw validation_error("write to '" + cfg.output + ".csv' failed");
  }

  const double slope = slope_of(ks, log_norms);
  const double expected =
      profile.dim() * (std::isinf(cfg.p) ? 1.0 : 1.0 - 1.0 / cfg.p);
  const json sidecar{{"slope", slope},
                     {"expected_slope", expected},
                     {"p", cfg.p},
                     {"r", profile.r},
                     {"rows", static_cast<int>(ks.size())},
                     {"within_bounds", within},
                     {"bound_slack", kSlack},
                     {"tail_bound", tail},
                     {"grid", grid_to_json(grid)}};
  std::ofstream js(cfg.output + ".json", std::ios::binary);
  if (!js) {
    throw validation_error("cannot open '" + cfg.output +
                           ".json' for writing");
  }
  js << sidecar.dump(2) << '\n';

  std::snprintf(buf, sizeof buf,
                "extremal-verify: slope %.4f vs d/p' %.4f; %d/%zu in bounds "
                "-> %s.csv\n",
                slope, expected, within, ks.size(), cfg.output.c_str());
  out << buf;
}

void run_norm(const ExperimentConfig& cfg, std::ostream& out) {
  const AnisotropyProfile profile = make_profile(cfg.r);
  GridSpec grid = box_grid(profile.dim());
  const SampledField field = input_field(cfg, profile, grid, grid);

  BesovParams params;
  params.profile = profile;
  params.p = cfg.p;
  params.theta = cfg.theta;
  params.residual_tol = cfg.residual_tol;
  params.s_max =
      cfg.s_max >= 0 ? cfg.s_max : feasible_layer_count(profile, grid);
  const double block = require_finite(block_norm(field, params), "block norm");

  json result{{"block_norm", block},
              {"p", real_to_json(cfg.p)},
              {"theta", real_to_json(cfg.theta)},
              {"r", profile.r},
              {"s_max", params.s_max},
              {"grid", grid_to_json(grid)}};
  char line[200];
  if (profile.dim() <= 2) {
    DefinitionNormOptions opts;
    opts.dyadic_levels = cfg.dyadic_levels;
    const double definition =
        require_finite(definition_norm(field, params, opts), "modulus norm");
    result["definition_norm"] = definition;
    result["ratio"] = block > 0.0 ? definition / block : 0.0;
    std::snprintf(line, sizeof line,
                  "norm: block %.6g, definition %.6g, ratio %.4f -> %s.json\n",
                  block, definition, block > 0.0 ? definition / block : 0.0,
                  cfg.output.c_str());
  } else {
    std::snprintf(line, sizeof line, "norm: block %.6g -> %s.json\n", block,
                  cfg.output.c_str());
  }
  std::ofstream js(cfg.output + ".json", std::ios::binary);
  if (!js) {
    throw validation_error("cannot open '" + cfg.output +
                           ".json' for writing");
  }
  js << result.dump(2) << '\n';
  out << line;
}

void run_nikolskii(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.d < 1 || cfg.d > 3) {
    throw validation_error("dimension must be 1, 2 or 3");
  }
  if (cfg.trials < 1) {
    throw validation_error("trial count must be positive");
  }
  GridSpec grid = pick_grid(cfg, box_grid(cfg.d));
  if (grid.dim() != cfg.d) {
    throw validation_error("grid dimension does not match --d");
  }

  static constexpr std::pair<double, double> kPairs[4] = {
      {1.5, 2.0},
      {2.0, 4.0},
      {2.0, std::numeric_limits<double>::infinity()},
      {1.5, std::numeric_limits<double>::infinity()}};

  std::ofstream csv(cfg.output + ".csv", std::ios::binary);
  if (!csv) {
    throw validation_error("cannot open '" + cfg.output +
                           ".csv' for writing");
  }
  csv << "trial,p1,p2,lhs,rhs,ratio,pass\n";

  std::mt19937_64 master(cfg.seed);
  auto uniform = [&master]() {
    return static_cast<double>(master() >> 11) * 0x1p-53;
  };
  int passed = 0;
  char buf[200];
  for (int trial = 0; trial < cfg.trials; ++trial) {
    std::vector<double> nu(cfg.d);
    for (int ax = 0; ax < cfg.d; ++ax) {
      nu[ax] = (0.25 + 0.5 * uniform()) * grid.nyquist(ax);
    }
    const std::uint64_t sub_seed = master();
    const SampledField field = random_band_limited(grid, nu, sub_seed);
    const auto [p1, p2] = kPairs[trial % 4];
    const NikolskiiCheck check = nikolskii_check(field, nu, p1, p2);
    require_finite(check.lhs, "lhs");
    require_finite(check.rhs, "rhs");
    if (check.pass) ++passed;
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  trial, p1, p2, check.lhs, check.rhs, check.ratio,
                  check.pass ? 1 : 0);
    csv << buf;
  }
  if (!csv) {
    throw validation_error("write to '" + cfg.output + ".csv' failed");
  }
  std::snprintf(buf, sizeof buf, "nikolskii: %d/%d pass -> %s.csv\n", passed,
                cfg.trials, cfg.output.c_str());
  out << buf;
}

void run_decompose(const ExperimentConfig& cfg, std::ostream& out) {
  const AnisotropyProfile profile = make_profile(cfg.r);
  GridSpec grid = box_grid(profile.dim());
  const SampledField field = input_field(cfg, profile, grid, grid);
  const int cap = feasible_layer_count(profile, grid);
  const int s_max = cfg.s_max >= 0 ? cfg.s_max : cap;
  const LayerStack stack = layer_decompose(field, profile, s_max);
  save_layer_stack(stack, cfg.output);

  SampledField sum = stack.residual;
  for (const SampledField& layer : stack.layers) sum = add(sum, layer);
  const double whole = lp_norm(field, 2.0);
  const double defect = lp_norm(subtract(sum, field), 2.0);
  const double relative = whole > 0.0 ? defect / whole : defect;

  char line[200];
  std::snprintf(line, sizeof line,
                "decompose: %zu layers + residual, reconstruction defect "
                "%.3e -> %s\n",
                stack.layers.size(), relative, cfg.output.c_str());
  out << line;
}

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  const auto parse_int = [&](const std::string& part) {
    char* end = nullptr;
    const long v = std::strtol(part.c_str(), &end, 10);
    if (end == part.c_str() || *end != '\0') {
      throw validation_error("bad integer '" + part + "' in range '" + text +
                             "'");
    }
    return static_cast<int>(v);
  };
  const std::size_t sep = text.find("..");
  if (sep == std::string::npos) {
    const int v = parse_int(text);
    return {v, v};
  }
  const int lo = parse_int(text.substr(0, sep));
  const int hi = parse_int(text.substr(sep + 2));
  if (hi < lo) {
    throw validation_error("range '" + text + "' is reversed");
  }
  return {lo, hi};
}

double parse_real(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw validation_error("bad real number '" + text + "'");
  }
  return v;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) {
    throw validation_error("config JSON must be an object");
  }
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      cfg.command = value.get<std::string>();
    } else if (key == "r") {
      cfg.r = value.get<std::vector<double>>();
    } else if (key == "p") {
      cfg.p = value.is_string() ? parse_real(value.get<std::string>())
                                : value.get<double>();
    } else if (key == "q") {
      cfg.q = value.is_string() ? parse_real(value.get<std::string>())
                                : value.get<double>();
    } else if (key == "theta") {
      cfg.theta = value.is_string() ? parse_real(value.get<std::string>())
                                    : value.get<double>();
    } else if (key == "n") {
      if (value.is_string()) {
        std::tie(cfg.n_min, cfg.n_max) =
            parse_range(value.get<std::string>());
      } else if (value.is_array() && value.size() == 2) {
        cfg.n_min = value[0].get<int>();
        cfg.n_max = value[1].get<int>();
      } else {
        cfg.n_min = cfg.n_max = value.get<int>();
      }
    } else if (key == "k") {
      if (value.is_string()) {
        std::tie(cfg.k_min, cfg.k_max) =
            parse_range(value.get<std::string>());
      } else if (value.is_array() && value.size() == 2) {
        cfg.k_min = value[0].get<int>();
        cfg.k_max = value[1].get<int>();
      } else {
        cfg.k_min = cfg.k_max = value.get<int>();
      }
    } else if (key == "half_width") {
      cfg.half_width = value.get<std::vector<double>>();
    } else if (key == "samples") {
      cfg.samples = value.get<std::vector<int>>();
    } else if (key == "output") {
      cfg.output = value.get<std::string>();
    } else if (key == "input") {
      cfg.input = value.get<std::string>();
    } else if (key == "function") {
      cfg.function = value.get<std::string>();
    } else if (key == "width") {
      cfg.width = value.get<double>();
    } else if (key == "d") {
      cfg.d = value.get<int>();
    } else if (key == "trials") {
      cfg.trials = value.get<int>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "s_max") {
      cfg.s_max = value.get<int>();
    } else if (key == "residual_tol") {
      cfg.residual_tol = value.get<double>();
    } else if (key == "noise_floor") {
      cfg.noise_floor = value.get<double>();
    } else if (key == "construction") {
      cfg.construction = value.get<std::string>();
    } else if (key == "dyadic_levels") {
      cfg.dyadic_levels = value.get<int>();
    } else {
      throw validation_error("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

void execute(const ExperimentConfig& cfg, std::ostream& summary) {
  if (cfg.command == "rate-scan") {
    run_rate_scan(cfg, summary);
  } else if (cfg.command == "norm") {
    run_norm(cfg, summary);
  } else if (cfg.command == "extremal-verify") {
    run_extremal_verify(cfg, summary);
  } else if (cfg.command == "nikolskii") {
    run_nikolskii(cfg, summary);
  } else if (cfg.command == "decompose") {
    run_decompose(cfg, summary);
  } else {
    throw validation_error("unknown command '" + cfg.command + "'");
  }
}

}  // namespace anisobesov
