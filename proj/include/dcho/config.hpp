#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dcho/scenario.hpp"

namespace dcho {

/// Reads a JSON scenario. Absent optional fields keep their defaults; gNB
/// radio parameters default per tier. Throws ParseError (naming the path and
/// the field) on I/O, syntax, type or unknown-key errors and ValidationError
/// when the result violates a scenario invariant.
ScenarioConfig parse_config(const std::filesystem::path& path);

/// Same, from text. `origin` prefixes error messages.
ScenarioConfig parse_config_text(std::string_view text, const std::string& origin = "<config>");

/// `macro`, `small` or `mmwave`; ParseError otherwise.
GnbType parse_tier(std::string_view name);

}  // namespace dcho
