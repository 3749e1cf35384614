#include "anisobesov/serialization.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "anisobesov/errors.hpp"

namespace anisobesov {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw validation_error(std::string("malformed JSON in ") + what);
  }
  return j;
}

// Parses one "index,re,im" row; returns false on any structural defect.
bool parse_row(const std::string& line, std::size_t& index, double& re,
               double& im) {
  const char* s = line.c_str();
  char* end = nullptr;
  index = std::strtoull(s, &end, 10);
  if (end == s || *end != ',') return false;
  s = end + 1;
  re = std::strtod(s, &end);
  if (end == s || *end != ',') return false;
  s = end + 1;
  im = std::strtod(s, &end);
  if (end == s || *end != '\0') return false;
  return true;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_field(const SampledField& f, const std::string& path) {
  if (f.values.size() != f.grid.total()) {
    throw validation_error("field storage does not match its grid");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw validation_error("cannot open '" + path + "' for writing");
  }
  out << grid_to_json(f.grid).dump() << '\n';
  char buf[96];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, f.values[i].real(),
                  f.values[i].imag());
    out << buf;
  }
  if (!out) {
    throw validation_error("write to '" + path + "' failed");
  }
}

SampledField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw validation_error("cannot open '" + path + "' for reading");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw validation_error("field file '" + path + "' is empty");
  }
  const GridSpec grid = grid_from_json(parse_json(line, "field header"));
  SampledField f = zero_field(grid);
  const std::size_t total = grid.total();
  for (std::size_t i = 0; i < total; ++i) {
    if (!std::getline(in, line)) {
      throw validation_error("field file '" + path + "' ends after " +
                             std::to_string(i) + " of " +
                             std::to_string(total) + " rows");
    }
    std::size_t index = 0;
    double re = 0.0;
    double im = 0.0;
    if (!parse_row(line, index, re, im) || index != i) {
      throw validation_error("field file '" + path + "': bad row " +
                             std::to_string(i));
    }
    f.values[i] = {re, im};
  }
  if (std::getline(in, line) && !line.empty()) {
    throw validation_error("field file '" + path +
                           "' has content beyond the declared samples");
  }
  return f;
}

json grid_to_json(const GridSpec& grid) {
  return json{{"d", grid.dim()},
              {"half_width", grid.half_width},
              {"samples", grid.samples}};
}

GridSpec grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("half_width") ||
      !j.contains("samples")) {
    throw validation_error(
        "grid JSON must carry \"d\", \"half_width\" and \"samples\"");
  }
  const int d = j.at("d").get<int>();
  auto half_width = j.at("half_width").get<std::vector<double>>();
  auto samples = j.at("samples").get<std::vector<int>>();
  if (static_cast<int>(half_width.size()) != d ||
      static_cast<int>(samples.size()) != d) {
    throw validation_error("grid JSON arrays do not match \"d\"");
  }
  return make_grid(std::move(half_width), std::move(samples));
}

json profile_to_json(const AnisotropyProfile& profile) {
  return json{{"r", profile.r},
              {"g", profile.g},
              {"a", profile.a},
              {"b", profile.b}};
}

AnisotropyProfile profile_from_json(const json& j) {
  if (j.is_array()) {
    return make_profile(j.get<std::vector<double>>());
  }
  if (j.is_object() && j.contains("r")) {
    return make_profile(j.at("r").get<std::vector<double>>());
  }
  throw validation_error(
      "profile JSON must be a smoothness array or an object with \"r\"");
}

}  // namespace anisobesov
