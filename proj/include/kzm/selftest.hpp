#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace kzm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  nlohmann::json details;  // rationals as strings, floats under a "float" tag
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool passed() const;
  nlohmann::json to_json() const;
};

// The property suite, one entry per acceptance criterion. Deterministic in
// `seed`; no timings are recorded.
CriterionResult check_flatness();
CriterionResult check_contractible_loop();
CriterionResult check_local_monodromy();
CriterionResult check_sugawara(int depth = 4);
CriterionResult check_symbols(std::uint64_t seed, std::size_t trials = 100);
CriterionResult check_verlinde(std::uint64_t seed);
CriterionResult check_representations();
CriterionResult check_determinism(std::uint64_t seed);

SelftestReport selftest(std::uint64_t seed);

}  // namespace kzm
