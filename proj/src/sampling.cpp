#include "sval/sampling.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

namespace sval {

namespace {

std::optional<std::string> run_one(std::uint64_t seed, std::size_t i, const SampleCheck& check) {
  try {
    Rng rng = sample_rng(seed, i);
    return check(rng, i);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

}  // namespace

std::string SampleReport::summary() const {
  std::string s = std::to_string(trials - failures.size()) + "/" + std::to_string(trials) + " passed";
  if (!failures.empty()) s += "; first failure #" + std::to_string(failures.front().index) + ": " + failures.front().detail;
  return s;
}

SampleReport run_samples_serial(std::uint64_t seed, std::size_t trials, const SampleCheck& check) {
  SampleReport rep;
  rep.trials = trials;
  for (std::size_t i = 0; i < trials; ++i)
    if (auto f = run_one(seed, i, check)) rep.failures.push_back({i, *f});
  return rep;
}

SampleReport run_samples_omp(std::uint64_t seed, std::size_t trials, const SampleCheck& check) {
  SampleReport rep;
  rep.trials = trials;
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel
  {
    std::vector<SampleFailure> local;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < n; ++i)
      if (auto f = run_one(seed, static_cast<std::size_t>(i), check)) local.push_back({static_cast<std::size_t>(i), *f});
#pragma omp critical
    rep.failures.insert(rep.failures.end(), local.begin(), local.end());
  }
  std::sort(rep.failures.begin(), rep.failures.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return rep;
}

SampleReport run_samples(std::uint64_t seed, std::size_t trials, const SampleCheck& check) {
  return run_samples_omp(seed, trials, check);
}

}  // namespace sval
