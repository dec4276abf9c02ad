#pragma once

#include <string>
#include <string_view>

#include "cfdyn/maps.hpp"

namespace cfdyn {

/// JSON document {"N":..,"domain":[a,b],"branches":[{"lo","hi","eps","d"},..]}.
std::string map_to_json(const CFMap& map, int indent = 2);
/// Parses the document written by map_to_json and validates it as a CFMap.
/// Throws MapError for malformed documents as well as invalid maps.
CFMap map_from_json(std::string_view text);

}  // namespace cfdyn
