#pragma once

#include <cstdint>
#include <random>

#include "sval/superalgebra.hpp"

namespace sval {

using Rng = std::mt19937_64;

// Independent stream for sample `index` under `seed`.
Rng sample_rng(std::uint64_t seed, std::uint64_t index);

struct ElemShape {
  int max_degree = 3;
  int coeff_bound = 5;
  int max_terms = 3;
  int max_den_degree = 2;
  bool fractions = true;
};

enum class Parity { Any, Even, Odd };

MPoly random_poly(Rng& rng, const RingDesc& r, const ElemShape& shape, bool nonzero = true);
// Random element of the even ring (respects polynomial, Laurent, local and Z structure).
RatFunc random_even(Rng& rng, const RingDesc& r, const ElemShape& shape, bool nonzero = true);
SuperElem random_elem(Rng& rng, const Ring& r, const ElemShape& shape, Parity parity = Parity::Any);
// Random element of J_R.
SuperElem random_nilpotent(Rng& rng, const Ring& r, const ElemShape& shape);

}  // namespace sval
