#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "slantpath/atmosphere.hpp"

namespace slantpath {

inline constexpr int kBuiltinScenarioCount = 5;

/// A named, validated atmosphere profile. Built-ins carry their id; parsed
/// files do not.
struct ScenarioSpec {
    std::optional<int> id;
    std::string name;
    AtmosphereProfile profile;
    std::string notes;
};

/// The five built-in scenario profiles (1 rainy, 2 foggy, 3 clear, 4 extreme
/// air pollution, 5 snowy). Throws DomainError for ids outside 1..5.
ScenarioSpec builtin_scenario(int id);

/// Name of a built-in without constructing the profile.
std::string_view builtin_scenario_name(int id);

/// Parses the line-oriented scenario grammar:
///
///   scenario "<name>"
///   mode paper|physical
///   note "<text>"                                       (optional, repeated)
///   slab <base_km> <top_km>
///     state "<label>" att_db_per_km=<x> eta=<p> [visibility_km=<v>]
///
/// '#' starts a comment. Throws ParseError with a line number on syntax
/// errors and ValidationError (naming the rule and slab) when the parsed
/// profile violates an invariant.
ScenarioSpec parse_scenario_file(std::string_view text);

/// Grammar-only parse that skips the profile invariant check; callers that
/// want the full violation list run validate_profile themselves.
ScenarioSpec parse_scenario_file_lenient(std::string_view text);

/// Canonical rendering of a valid spec; round-trips with parse_scenario_file
/// and is byte-stable under serialize/parse/serialize.
std::string serialize_scenario(const ScenarioSpec& spec);

/// Structural equality: name, notes, and profile contents. The optional
/// built-in id is a handle, not part of the document, and is ignored.
bool structurally_equal(const ScenarioSpec& a, const ScenarioSpec& b);

}  // namespace slantpath
