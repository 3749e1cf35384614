#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace anisobesov {

// One batch run as configured from flags and/or a JSON config file. Unused
// fields are ignored by commands that do not need them.
struct ExperimentConfig {
  std::string command;  // rate-scan | norm | extremal-verify | nikolskii |
                        // decompose
  std::vector<double> r{1.0};
  double p = 2.0;
  double q = 2.0;
  double theta = 1.0;
  int n_min = 2;
  int n_max = 6;
  int k_min = 1;
  int k_max = 5;
  std::vector<double> half_width;  // empty: command-specific default grid
  std::vector<int> samples;
  std::string output = "out";
  std::string input;                  // field file to load
  std::string function = "gaussian";  // builtin generator when no input
  double width = 1.0;                 // gaussian width
  int d = 1;                          // dimension for generated suites
  int trials = 200;
  std::uint64_t seed = 1;
  int s_max = -1;  // block truncation; -1 picks the grid's feasible depth
  double residual_tol = 0.05;
  double noise_floor = 0.0;
  std::string construction = "spectral";  // rate-scan witness construction
  int dyadic_levels = 12;
};

// "2..6" or "4" -> {2,6} / {4,4}.
std::pair<int, int> parse_range(const std::string& text);

// "inf"/"infinity" (any case) -> +infinity, otherwise strtod with full
// consumption required.
double parse_real(const std::string& text);

// Reads every recognized key; unknown keys are rejected to catch typos.
ExperimentConfig config_from_json(const nlohmann::json& j);

// Runs the configured command, writes its artifacts, and prints a one-line
// summary. Throws validation_error / guard_error; the CLI maps those to
// exit codes 2 and 3.
void execute(const ExperimentConfig& config, std::ostream& summary);

}  // namespace anisobesov
