#pragma once

#include <gmpxx.h>

#include <string>

namespace sval {

/// Prime field of coefficients: Q (characteristic 0) or F_p.
///
/// Elements are carried as mpq_class. Over F_p the canonical representative
/// is the integer in [0, p).
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(0); }
  static Field prime(unsigned long p);

  unsigned long characteristic() const noexcept { return p_; }
  bool is_rationals() const noexcept { return p_ == 0; }

  mpq_class reduce(const mpq_class& a) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const { return reduce(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return reduce(a - b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return reduce(a * b); }
  mpq_class neg(const mpq_class& a) const { return reduce(-a); }
  mpq_class inv(const mpq_class& a) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_; }

 private:
  explicit Field(unsigned long p) : p_(p) {}
  unsigned long p_ = 0;
};

bool is_prime_number(unsigned long n);

}  // namespace sval
