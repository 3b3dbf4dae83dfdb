#pragma once

#include <string>
#include <vector>

#include "sval/mpoly.hpp"

namespace sval {

/// Reduced quotient num/den of polynomials; den has leading coefficient 1
/// and gcd(num, den) = 1, so equality is structural.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(MPoly num);
  RatFunc(MPoly num, MPoly den);

  static RatFunc constant(Field f, int nvars, const mpq_class& c);
  static RatFunc variable(Field f, int nvars, int var);

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  const Field& field() const noexcept { return num_.field(); }
  int nvars() const noexcept { return num_.nvars(); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  mpq_class constant_value() const { return num_.constant_value(); }

  RatFunc inv() const;
  RatFunc pow(int n) const;
  RatFunc substitute(int var, const RatFunc& value) const;
  RatFunc eval_var(int var, const mpq_class& value) const;

  std::string to_string(const std::vector<std::string>& names) const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  // num/den already coprime; only makes den monic.
  static RatFunc coprime(MPoly num, MPoly den);
  void normalize();
  MPoly num_, den_;
};

}  // namespace sval
