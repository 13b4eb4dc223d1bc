#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace embedlab::cli {

struct GoldenCase {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct GoldenOptions {
  std::uint64_t seed = 1;  // only sampled cases read it
  bool mutate = false;     // corrupt one inverter coefficient
};

/// The fixed examples with known answers.
std::vector<GoldenCase> run_goldens(const GoldenOptions& options = {});

}  // namespace embedlab::cli
