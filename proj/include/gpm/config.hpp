#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpm/verifier.hpp"

namespace gpm {

struct ScenarioConfig {
  Scenario scenario;
  /// Same scenario with every preset spelled out; loads back to an equal one.
  nlohmann::json expanded;
};

/// Throws ConfigSchema (with a JSON pointer in Error::path) for unknown keys,
/// wrong types or inconsistent sizes, and the library error codes for data
/// that fails validation (also carrying the pointer).
ScenarioConfig parse_scenario(const nlohmann::json& j);
/// Adds ConfigParse for unreadable files or malformed JSON.
ScenarioConfig load_scenario(const std::filesystem::path& file);
nlohmann::json read_json_file(const std::filesystem::path& file);

/// Words are arrays of [vertex label, group element] pairs.
LetterSeq parse_word(const nlohmann::json& j, const GraphProduct& gp, const std::string& path);
nlohmann::json word_json(std::span<const Letter> w, const GraphProduct& gp);

nlohmann::json complex_json(Complex z);

}  // namespace gpm
