#pragma once

// Flat "key = value" scenario configuration. Nesting is expressed with
// dotted keys (stepper.dt, load.F.amplitude, ...). Lines starting with '#'
// are comments.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smafv/scenario.hpp"

namespace smafv {

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Every key that applies to the scenario's model, in a fixed order.
ConfigEntries to_config(const Scenario& s);
std::string serialize(const Scenario& s);

/// Starts from defaults (empty name), then applies the entries in order.
/// Throws std::invalid_argument on unknown keys or malformed values
/// (message names the key).
Scenario from_config(const ConfigEntries& entries);
Scenario parse_scenario(const std::string& text);
ConfigEntries parse_config_text(const std::string& text);

/// Sets one key (aliases dt, omega, span accepted). Throws
/// std::invalid_argument for unknown keys or bad values.
void apply_override(Scenario& s, const std::string& key, const std::string& value);
/// Parses "key=value".
void apply_override(Scenario& s, const std::string& assignment);

/// All keys accepted by apply_override (canonical names).
std::vector<std::string> config_keys();

/// FNV-1a hash of the serialized config.
std::uint64_t config_hash(const Scenario& s);

}  // namespace smafv
