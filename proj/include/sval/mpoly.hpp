#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sval/field.hpp"

namespace sval {

inline constexpr int kMaxEvenVars = 3;

struct Monomial {
  std::array<int, kMaxEvenVars> e{};

  int degree() const noexcept { return e[0] + e[1] + e[2]; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  Monomial operator*(const Monomial& o) const noexcept {
    Monomial m;
    for (int i = 0; i < kMaxEvenVars; ++i) m.e[i] = e[i] + o.e[i];
    return m;
  }
  bool divides(const Monomial& o) const noexcept {
    for (int i = 0; i < kMaxEvenVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
};

// Graded lex, largest first: the leading term is terms().begin().
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.e > b.e;
  }
};

/// Sparse multivariate polynomial over Q or F_p in at most three variables.
class MPoly {
 public:
  using TermMap = std::map<Monomial, mpq_class, GrlexGreater>;

  MPoly() = default;
  MPoly(Field f, int nvars) : field_(f), nvars_(nvars) {}

  static MPoly constant(Field f, int nvars, const mpq_class& c);
  static MPoly variable(Field f, int nvars, int var);
  static MPoly monomial(Field f, int nvars, const Monomial& m, const mpq_class& c);
  // Univariate polynomial in `var` from ascending coefficients.
  static MPoly univariate(Field f, int nvars, int var, const std::vector<mpq_class>& coeffs);

  const Field& field() const noexcept { return field_; }
  int nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  mpq_class constant_value() const;
  bool is_one() const;

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const mpq_class& leading_coeff() const { return terms_.begin()->second; }

  void add_term(const Monomial& m, const mpq_class& c);

  int degree(int var) const;
  int total_degree() const;
  // Lowest exponent of `var` among the terms.
  int min_degree(int var) const;
  unsigned var_mask() const;
  // Coefficient of var^k as a polynomial free of var.
  MPoly coeff_in(int var, int k) const;
  MPoly leading_coeff_in(int var) const { return coeff_in(var, degree(var)); }

  MPoly monic() const;
  MPoly pow(unsigned n) const;
  MPoly scaled(const mpq_class& c) const;
  MPoly shifted(int var, int k) const;  // multiply by var^k, k >= 0
  MPoly eval_var(int var, const mpq_class& value) const;
  MPoly substitute(int var, const MPoly& value) const;
  mpq_class content_rational() const;  // gcd of coefficients over Q, positive

  // Exact division; std::nullopt when b does not divide *this.
  std::optional<MPoly> try_div(const MPoly& b) const;
  MPoly exact_div(const MPoly& b) const;
  // Division by b whose leading coefficient in var is a nonzero constant.
  std::pair<MPoly, MPoly> divmod_in(int var, const MPoly& b) const;

  std::string to_string(const std::vector<std::string>& names) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

 private:
  Field field_;
  int nvars_ = 0;
  TermMap terms_;
};

MPoly gcd(const MPoly& a, const MPoly& b);
MPoly content_in(const MPoly& a, int var);
MPoly primitive_in(const MPoly& a, int var);

// Extended Euclid for univariate polynomials in var: returns (g, s, t) with
// s*a + t*b = g, g monic.
struct ExtGcd {
  MPoly g, s, t;
};
ExtGcd ext_gcd(const MPoly& a, const MPoly& b, int var);

MPoly derivative(const MPoly& p, int var);

struct PolyFactor {
  MPoly poly;  // monic irreducible
  int multiplicity = 1;
};
// Monic irreducible factors of a univariate polynomial, constant dropped.
// Over Q: rational roots, then quadratic factors up to degree 5; Unsupported beyond.
std::vector<PolyFactor> factor_univariate(const MPoly& p, int var);

// Irreducibility over the coefficient field for a univariate polynomial.
bool is_irreducible(const MPoly& p, int var);

}  // namespace sval
