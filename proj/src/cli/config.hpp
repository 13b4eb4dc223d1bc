#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace embedlab::cli {

/// One fully resolved run: every parameter the subcommand reads, defaults
/// included, so the report can carry it and the run can be repeated.
struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
  std::string format = "text";

  const std::string& get(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  nlohmann::json to_json() const;
  /// `key = value` lines, sorted by key.
  std::string to_text() const;
};

/// Reads `key = value` lines. `#` starts a comment; blank lines are skipped.
/// A `[name]` line is accepted and ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(std::string_view text);

}  // namespace embedlab::cli
