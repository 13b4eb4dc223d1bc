#include "cli/config.hpp"

#include <fstream>
#include <sstream>

#include "embedlab/errors.hpp"

namespace embedlab::cli {

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const std::string& ExperimentConfig::get(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw ParseError("missing parameter '" + key + "'");
  return it->second;
}

std::int64_t ExperimentConfig::get_int(const std::string& key) const {
  const auto& v = get(key);
  try {
    std::size_t used = 0;
    long long r = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ParseError("parameter '" + key + "' expects an integer, got '" + v + "'");
  }
}

std::uint64_t ExperimentConfig::get_uint(const std::string& key) const {
  auto v = get_int(key);
  if (v < 0) throw ParseError("parameter '" + key + "' must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

bool ExperimentConfig::get_bool(const std::string& key) const {
  const auto& v = get(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParseError("parameter '" + key + "' expects true/false, got '" + v + "'");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["params"] = params;
  return j;
}

std::string ExperimentConfig::to_text() const {
  std::string out = "subcommand = " + subcommand + "\n";
  for (const auto& [k, v] : params) out += k + " = " + v + "\n";
  return out;
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string s = trim(line);
    if (s.empty() || (s.front() == '[' && s.back() == ']')) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(std::string_view(s).substr(0, eq));
    std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace embedlab::cli
