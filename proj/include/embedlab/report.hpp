#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace embedlab {

/// One named property checked over many instances.
struct AuditCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;  // first few failures
};

struct AuditReport {
  std::string audit;
  std::string window;  // the searched space, always reported
  std::vector<AuditCheck> checks;
  std::vector<std::string> notes;  // verdict lines and other remarks

  static constexpr std::size_t kMaxWitnesses = 5;

  AuditCheck& check(const std::string& name) {
    for (auto& c : checks) {
      if (c.name == name) return c;
    }
    checks.push_back({name, 0, 0, {}});
    return checks.back();
  }

  /// Counts one instance; `witness` is only evaluated on failure.
  template <class F>
  void record(const std::string& name, bool ok, F&& witness) {
    auto& c = check(name);
    ++c.checked;
    if (ok) return;
    ++c.failures;
    if (c.witnesses.size() < kMaxWitnesses) c.witnesses.push_back(witness());
  }
  void record(const std::string& name, bool ok) {
    record(name, ok, [] { return std::string(); });
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.failures;
    return n;
  }
  bool passed() const { return failures() == 0; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["audit"] = audit;
    j["window"] = window;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      j["checks"].push_back({{"name", c.name},
                             {"checked", c.checked},
                             {"failures", c.failures},
                             {"witnesses", c.witnesses}});
    }
    j["notes"] = notes;
    return j;
  }

  std::string to_text() const {
    std::string out = audit + " over " + window + "\n";
    for (const auto& c : checks) {
      out += "  " + c.name + ": " + std::to_string(c.checked) + " checked, " +
             std::to_string(c.failures) + " failed\n";
      for (const auto& w : c.witnesses) out += "    " + w + "\n";
    }
    for (const auto& n : notes) out += "  note: " + n + "\n";
    out += passed() ? "PASS\n" : "FAIL\n";
    return out;
  }
};

}  // namespace embedlab
