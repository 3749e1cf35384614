#pragma once

#include <string>

#include "anisobesov/anisotropy.hpp"
#include "anisobesov/field.hpp"
#include "json.hpp"

namespace anisobesov {

// Shortest text form of v that parses back to exactly the same double.
std::string format_double(double v);

// Field file layout: first line is the JSON header
// {"d":int,"half_width":[...],"samples":[...]}, then one "index,re,im" row
// per sample in flat grid order. LF line endings, no trailing padding.
void save_field(const SampledField& f, const std::string& path);
SampledField load_field(const std::string& path);

nlohmann::json grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& j);

// Profile serialization keeps only the smoothness vector; derived values are
// recomputed on load and included on save for human readers.
nlohmann::json profile_to_json(const AnisotropyProfile& profile);
AnisotropyProfile profile_from_json(const nlohmann::json& j);

}  // namespace anisobesov
