#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sval {

struct SuiteResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// superalgebra, valuation, pairs, convexity, dominance, extension,
// approximation, zariski, closure; numbered 1..9 in this order.
const std::vector<std::string>& suite_names();
// Throws InvalidArgument for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);
std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

}  // namespace sval
