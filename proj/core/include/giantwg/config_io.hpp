#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "giantwg/config.hpp"

namespace giantwg {

// Line-oriented config format:
//
//   # comment
//   omega       = 10
//   gamma_scale = 0.5
//   gamma_e     = 0
//   leg = 0.0, 1.0, 0.0            # position, magnitude, phase
//   leg = 0.5, 1.0, length:0.25    # position, magnitude, leg length
//
// Numbers are parsed without consulting the C locale.
RawConfig parse_config_text(std::string_view text);

GiantAtomConfig load_config(const std::filesystem::path& path);

// Inverse of parse_config_text for a validated config (17 significant digits).
std::string format_config(const GiantAtomConfig& config);

// Strict locale-independent number parse; the whole (trimmed) field must be
// consumed. Throws ConfigError.
double parse_number(std::string_view field);

}  // namespace giantwg
