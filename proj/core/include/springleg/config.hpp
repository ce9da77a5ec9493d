#pragma once

// Flat key = value configuration files.
//
//   # comment
//   mass_kg = 70
//   segment_length_mm = 205     # *_mm and *_n_per_mm aliases convert to SI
//
// Unknown keys, duplicates (an alias counts as its SI key) and malformed
// values are rejected. The parsed Configuration is fully validated.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "springleg/model.hpp"

namespace springleg {

Configuration parse_config_text(std::string_view text, const std::string& origin = "<config>");
Configuration parse_config(const std::filesystem::path& path);

/// Writes every key in canonical SI form; parse_config_text() reads it back.
std::string format_config(const Configuration& config);

/// Canonical SI keys that take numeric values (everything except `policy`).
const std::vector<std::string>& numeric_config_keys();

/// Sets one numeric parameter by config key (SI or unit alias). No validation.
void apply_parameter(Configuration& config, std::string_view key, double value);

struct GridAxis {
  std::string key;
  std::vector<double> values;
};

/// Cartesian product of explicit value lists; the last axis varies fastest.
struct ParameterGrid {
  std::vector<GridAxis> axes;

  std::size_t size() const noexcept;
  std::vector<std::pair<std::string, double>> point(std::size_t index) const;
};

/// Grid file: one `key = v1, v2, ...` line per axis, same comment rules.
ParameterGrid parse_grid_text(std::string_view text, const std::string& origin = "<grid>");
ParameterGrid parse_grid(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace springleg
