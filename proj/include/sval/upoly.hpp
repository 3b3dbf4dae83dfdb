#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sval/ratfunc.hpp"

namespace sval {

/// Univariate polynomial in T over a rational function field.
class RatPoly {
 public:
  explicit RatPoly(RatFunc zero) : zero_(std::move(zero)) {}
  RatPoly(RatFunc zero, std::vector<RatFunc> coeffs);

  static RatPoly constant(const RatFunc& c);
  static RatPoly monomial(const RatFunc& c, int k);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const RatFunc& coeff(int k) const;
  const RatFunc& lead() const { return c_.back(); }
  const RatFunc& zero() const noexcept { return zero_; }

  RatPoly monic() const;
  RatPoly scaled(const RatFunc& c) const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  std::pair<RatPoly, RatPoly> divmod(const RatPoly& b) const;
  RatPoly mod(const RatPoly& b) const { return divmod(b).second; }

 private:
  void trim();
  RatFunc zero_;
  std::vector<RatFunc> c_;
};

// Inverse of a modulo m; nullopt when they share a factor.
std::optional<RatPoly> inverse_mod(const RatPoly& a, const RatPoly& m);

// Given vectors v0, v1, ..., returns c0..cn with cn = 1 and sum ci*vi = 0 for
// the least n at which the prefix becomes dependent.
std::optional<std::vector<RatFunc>> first_dependency(const std::vector<std::vector<RatFunc>>& vecs);

}  // namespace sval
