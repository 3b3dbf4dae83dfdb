#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sval/ratfunc.hpp"

namespace sval {

inline constexpr int kMaxOddVars = 16;

enum class BaseRing { Q, Fp, Z };
enum class VarKind { Poly, Laurent, Rational };

/// Descriptor of a supported superalgebra R = R0[θ1..θN].
///
/// The even part is a polynomial, Laurent or rational ring in at most three
/// variables over Q, F_p or Z, optionally localized at a prime polynomial.
/// Elements are stored in the total fraction superfield and ring membership
/// is a separate predicate.
struct RingDesc {
  BaseRing base = BaseRing::Q;
  unsigned long p = 0;
  std::vector<std::string> even_names;
  std::vector<VarKind> even_kinds;
  int odd_count = 0;
  std::optional<MPoly> localized_at;

  Field field() const;
  int nvars() const noexcept { return static_cast<int>(even_names.size()); }
  int var_index(const std::string& name) const;
  std::string odd_name(int i) const { return "t" + std::to_string(i + 1); }
  // Even part is a field: Q or F_p with only rational variables.
  bool is_superfield() const;
  std::string to_string() const;
  void validate() const;

  friend bool operator==(const RingDesc& a, const RingDesc& b);
};

using Ring = std::shared_ptr<const RingDesc>;

Ring make_ring(RingDesc d);
// Same even structure with every variable made rational and Z replaced by Q.
Ring fraction_ring(const Ring& r);
// Drops the odd variables.
Ring reduced_ring(const Ring& r);
bool same_ring(const Ring& a, const Ring& b);

// Odd index sets are bitmasks; canonical order is by size, then lexicographic
// on the ascending index list.
struct OddOrder {
  bool operator()(std::uint32_t a, std::uint32_t b) const noexcept;
};

// Sign of θ_I θ_J relative to θ_{I∪J}; 0 when I and J meet.
int odd_merge_sign(std::uint32_t a, std::uint32_t b) noexcept;

class SuperElem {
 public:
  using Terms = std::map<std::uint32_t, RatFunc, OddOrder>;

  SuperElem() = default;
  explicit SuperElem(Ring r) : ring_(std::move(r)) {}

  static SuperElem constant(Ring r, const mpq_class& c);
  static SuperElem even(Ring r, const RatFunc& f);
  static SuperElem variable(Ring r, int var);
  static SuperElem theta(Ring r, int i);  // 0-based
  static SuperElem theta_product(Ring r, std::uint32_t mask, const RatFunc& coeff);

  const Ring& ring() const noexcept { return ring_; }
  const Terms& terms() const noexcept { return terms_; }
  RatFunc coeff(std::uint32_t mask) const;
  RatFunc zero_coeff() const;

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_even() const noexcept;
  bool is_odd() const noexcept;
  bool is_homogeneous() const noexcept { return is_even() || is_odd(); }
  // Body: the θ-free coefficient.
  RatFunc body() const { return coeff(0); }
  SuperElem nilpotent_part() const;
  bool in_ring() const;

  SuperElem inverse() const;
  SuperElem pow(int n) const;
  SuperElem scaled(const RatFunc& c) const;

  std::string to_string() const;

  SuperElem operator-() const;
  friend SuperElem operator+(const SuperElem& a, const SuperElem& b);
  friend SuperElem operator-(const SuperElem& a, const SuperElem& b);
  friend SuperElem operator*(const SuperElem& a, const SuperElem& b) { return mul(a, b); }
  SuperElem& operator+=(const SuperElem& o) { return *this = *this + o; }
  SuperElem& operator*=(const SuperElem& o) { return *this = mul(*this, o); }
  friend bool operator==(const SuperElem& a, const SuperElem& b);

  friend SuperElem mul(const SuperElem& a, const SuperElem& b);

 private:
  void add_term(std::uint32_t mask, const RatFunc& c);
  Ring ring_;
  Terms terms_;
};

struct HomogeneousParts {
  SuperElem even;
  SuperElem odd;
};
HomogeneousParts homogeneous_parts(const SuperElem& a);

// Same terms viewed in another ring with the same variable layout.
SuperElem recast(const SuperElem& a, const Ring& target);
RatFunc recast(const RatFunc& f, const RingDesc& target);

// The commutative image in R/J_R.
RatFunc superreduce(const SuperElem& a);

// Whether a nonzero f in the fraction field of the even part lies in the
// even ring of r, and whether it is a unit there.
bool even_in_ring(const RingDesc& r, const RatFunc& f);
bool even_is_unit(const RingDesc& r, const RatFunc& f);

struct SuperIdeal {
  enum class Tag { Generic, CanonicalJ, SupportOf, POf };

  Ring ring;
  std::vector<SuperElem> generators;
  Tag tag = Tag::Generic;
  std::string label;
  std::function<bool(const SuperElem&)> predicate;
};

SuperIdeal canonical_ideal(const Ring& r);
// Ideal generated by homogeneous elements; membership is decided for
// θ-monomial generators plus constant even generators.
SuperIdeal generated_ideal(const Ring& r, std::vector<SuperElem> gens);
bool ideal_member(const SuperElem& a, const SuperIdeal& i);

struct PrimeDatum {
  enum class Kind { Polynomial, CanonicalJ, NonZeroDivisors };
  Kind kind = Kind::Polynomial;
  MPoly poly;
};
Ring localize(const Ring& r, const PrimeDatum& at);

/// Map R -> S given by images of the even and odd generators.
struct RingEmbedding {
  Ring small;
  Ring big;
  std::vector<SuperElem> even_images;
  std::vector<int> odd_images;

  static RingEmbedding identity(const Ring& r);
  SuperElem apply(const SuperElem& a) const;
  std::string to_string() const;
};

// Value of a polynomial at even elements of a superring.
SuperElem eval_poly(const MPoly& p, const std::vector<SuperElem>& at, const Ring& target);

struct IntegralityResult {
  enum class Verdict { Yes, NoWithinBound };
  Verdict verdict = Verdict::NoWithinBound;
  // Monic relation x^n + sum a_i x^i = 0 with a_i in R, lowest degree first.
  std::vector<SuperElem> coeffs;
  int degree = 0;
  std::string note;
  bool yes() const noexcept { return verdict == Verdict::Yes; }
};

inline constexpr int kMaxIntegralityDegree = 8;

IntegralityResult is_integral(const SuperElem& x, const RingEmbedding& over, int degree_bound);
IntegralityResult is_integral(const SuperElem& x, const Ring& over, int degree_bound);
// Degree of the minimal polynomial of the body over the fraction field of the small ring.
std::optional<int> algebraic_degree(const SuperElem& x, const RingEmbedding& over, int degree_bound);

}  // namespace sval
