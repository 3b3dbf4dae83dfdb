#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sval/random.hpp"

namespace sval {

struct SampleFailure {
  std::size_t index = 0;
  std::string detail;
};

struct SampleReport {
  std::size_t trials = 0;
  std::vector<SampleFailure> failures;  // sorted by index
  bool ok() const noexcept { return failures.empty(); }
  std::string summary() const;
};

// One trial: returns a failure description, or nullopt on success.
using SampleCheck = std::function<std::optional<std::string>(Rng&, std::size_t)>;

SampleReport run_samples_serial(std::uint64_t seed, std::size_t trials, const SampleCheck& check);
// Same trials and report as the serial version, spread over OpenMP threads.
SampleReport run_samples_omp(std::uint64_t seed, std::size_t trials, const SampleCheck& check);
SampleReport run_samples(std::uint64_t seed, std::size_t trials, const SampleCheck& check);

}  // namespace sval
