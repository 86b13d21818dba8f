#pragma once

#include <map>
#include <string>
#include <vector>

#include "fdlab/experiments.hpp"

namespace fdlab {

/// Flat "section.key" -> raw string view of a config source (file or
/// flag overrides).  Insertion order is not significant; keys are unique.
using ConfigMap = std::map<std::string, std::string>;

/// Parse the plain-text format: [section] headers, key=value lines,
/// blank lines and #-comments ignored.  Malformed lines and repeated
/// keys raise ConfigError with the line number.
ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

/// Materialize every default, apply file values, then overrides (flags
/// win).  Unknown keys name the nearest valid key; type mismatches name
/// the expected type; domain violations name the constraint.
ExperimentConfig resolve_config(const ConfigMap& file_values, const ConfigMap& overrides);

/// The resolved config as "section.key" -> printed value, for manifests
/// and determinism checks.
std::map<std::string, std::string> config_echo(const ExperimentConfig& cfg);

/// All recognized keys (sorted), for usage text.
std::vector<std::string> known_config_keys();

} // namespace fdlab
