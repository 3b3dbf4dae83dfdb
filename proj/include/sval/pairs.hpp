#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sval/valuation.hpp"

namespace sval {

/// (A, p) inside R given by membership predicates.
struct ValuationPair {
  enum class Provenance { FromValuation, Declared };

  Ring ring;
  std::function<bool(const SuperElem&)> in_A;
  std::function<bool(const SuperElem&)> in_p;
  Provenance provenance = Provenance::Declared;
  std::string label;
  // Elements the witness searches start from (generator data, valuation witnesses).
  std::vector<SuperElem> hints;
  std::vector<unsigned long> primes;
};

ValuationPair pair_of(const Valuation& v);
// (Z[x] + pR, xA + pR) inside Z[x,x^-1][θ]; with at_infinity, (Z[x^-1] + pR, x^-1 B + pR).
ValuationPair laurent_pair(const Ring& r, unsigned long p, bool at_infinity = false);
// (k[x] + J, π k[x] + J) inside k(x)[θ].
ValuationPair polynomial_pair(const Ring& r, const MPoly& pi);

// (A, p) ⪯ (B, q): A ⊆ B and p = A ∩ q, on the given sample.
bool pair_precedes(const ValuationPair& a, const ValuationPair& b, const std::vector<SuperElem>& sample);

struct PairOptions {
  int bound = 6;            // exponent bound for witness candidates
  std::size_t samples = 60;  // random elements on top of the structured ones
  std::uint64_t seed = 1;
  int box = 16;             // coordinate search radius for valuation_from_pair
  bool parallel = true;
};

struct PairVerdict {
  bool pass = false;
  int bound = 0;
  std::vector<std::pair<SuperElem, SuperElem>> witnesses;  // (x, x')
  std::optional<SuperElem> counterexample;
  std::string reason;

  std::string verdict() const { return pass ? "Pass" : "FailWithinBound"; }
};

PairVerdict is_valuation_pair(const ValuationPair& pair, const PairOptions& opt = {});

// v(x) > v(y) iff some even z has zx ∈ p and zy ∈ A \ p; searched over bounded candidates.
bool pair_greater(const ValuationPair& pair, const SuperElem& x, const SuperElem& y, const PairOptions& opt = {});

// Value group presented in Z^n-lex through unit witnesses; GroupUnrecognized otherwise.
Valuation valuation_from_pair(const ValuationPair& pair, const PairOptions& opt = {});

struct InvertibleOutside {
  GValue vx;
  GValue vinv;
  bool inverse_in_A = false;
};
InvertibleOutside invertible_outside(const Valuation& v, const SuperElem& x);

/// v-convex ideal of A_v.
struct ConvexIdeal {
  Valuation v;
  std::function<bool(const SuperElem&)> member;
  std::optional<Segment> datum;
  std::string label;
};

// a_H = {x ∈ A_v : v(x) ∈ G+ \ H} ∪ supp(v).
ConvexIdeal ideal_of_segment(const Segment& h, const Valuation& v);
ConvexIdeal ideal_from_predicate(const Valuation& v, std::function<bool(const SuperElem&)> member, const std::string& label);
// G_a = G \ (a^v ∪ -a^v), read off on the box |α_i| <= box.
Segment segment_of_ideal(const ConvexIdeal& a, int box = 4);
// Some element of R with value alpha, built from the witnesses.
std::optional<SuperElem> element_of_value(const Valuation& v, const GValue& alpha);

// x ∈ a and v(y) >= v(x) imply y ∈ a, plus gradedness, on a sample.
SampleReport is_v_convex(const ConvexIdeal& a, const AxiomOptions& opt);
// nullopt when neither contains the other on the sample; otherwise true iff a ⊆ b.
std::optional<bool> ideal_included(const ConvexIdeal& a, const ConvexIdeal& b, const std::vector<SuperElem>& sample);

struct Dominance {
  bool yes = false;
  std::optional<OrderHom> h;  // w = h ∘ v
  std::string reason;
  std::optional<SuperElem> counterexample;
};
Dominance dominates(const Valuation& w, const Valuation& v);

struct PsiEntry {
  Segment subgroup;
  Valuation w;
  OrderHom h;
};
std::vector<PsiEntry> psi_v(const Valuation& v);

/// (w, v) on A_w / p_w: ∞ on p_w, v elsewhere, with values in h^{-1}(0).
struct InducedQuotient {
  Valuation w;
  Valuation v;
  OrderHom h;
  Segment kernel;

  GValue eval(const SuperElem& x) const;
};
InducedQuotient induced_on_quotient(const Valuation& w, const Valuation& v);
// Checks (A, p) = (A_v/p_w, p_v/p_w), supp = π(p_w) and image ⊆ h^{-1}(0) ∪ {∞}.
SampleReport verify_induced(const InducedQuotient& q, const AxiomOptions& opt);

// Structured sample of ring elements for membership comparisons.
std::vector<SuperElem> structured_sample(const Ring& r, std::size_t random_count, std::uint64_t seed,
                                         const std::vector<SuperElem>& hints = {});

}  // namespace sval
