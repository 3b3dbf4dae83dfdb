#include <chrono>
#include <cstdio>

#include "sval/suite.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  bool all = true;
  for (const auto& name : sval::suite_names()) {
    const auto t0 = clock::now();
    sval::SuiteResult r = sval::run_suite(name, 7);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::printf("criterion %d %-13s %s (%.1fs) %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", secs,
                r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  std::printf("total %.1fs\n", std::chrono::duration<double>(clock::now() - start).count());
  return all ? 0 : 1;
}
