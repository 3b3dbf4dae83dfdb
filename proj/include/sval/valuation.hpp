#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sval/ordgroup.hpp"
#include "sval/random.hpp"
#include "sval/sampling.hpp"
#include "sval/superalgebra.hpp"

namespace sval {

/// A place of k(x): monic irreducible, the point at infinity, or p-adic (Gauss).
struct PlaceDatum {
  enum class Kind { Finite, Infinity, PAdic };
  Kind kind = Kind::Finite;
  int var = 0;
  MPoly poly;
  unsigned long p = 0;

  static PlaceDatum finite(const MPoly& poly);
  static PlaceDatum infinity(int var);
  static PlaceDatum padic(unsigned long p);

  std::string to_string(const std::vector<std::string>& names) const;
  friend bool operator==(const PlaceDatum& a, const PlaceDatum& b);
};

// Raw value: integer vector, or nullopt for ∞.
using RawValue = std::optional<std::vector<std::int64_t>>;

struct Rule {
  enum class Kind { Trivial, Place, MonomialLex, Composite, ModP, Custom };
  Kind kind = Kind::Trivial;
  PlaceDatum place;                    // Place, Composite (outer), ModP (inner, over F_p)
  std::vector<int> center;             // MonomialLex
  std::shared_ptr<const Rule> inner;   // Composite
  unsigned long p = 0;                 // ModP
  int rank = 0;
  std::function<RawValue(const SuperElem&)> custom;

  std::string to_string(const std::vector<std::string>& names) const;
};

struct Witness {
  SuperElem elem;
  GValue value;
};

class Valuation {
 public:
  Valuation() = default;
  Valuation(Ring ring, std::shared_ptr<const Rule> rule, std::vector<Witness> witnesses, std::string label);

  const Ring& ring() const noexcept { return ring_; }
  GroupDesc group() const noexcept { return group_; }
  const Rule& rule() const noexcept { return *rule_; }
  const std::shared_ptr<const Rule>& rule_ptr() const noexcept { return rule_; }
  const std::optional<OrderHom>& post() const noexcept { return post_; }
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }
  const std::string& label() const noexcept { return label_; }
  bool is_trivial() const noexcept { return group_.rank == 0; }

  GValue eval(const SuperElem& x) const;
  // Composes with an order homomorphism out of the current group.
  Valuation then(const OrderHom& h, const std::string& label) const;
  // Same rule over another ring with the same variable layout.
  Valuation on_ring(const Ring& r) const;

 private:
  Ring ring_;
  GroupDesc group_;
  std::shared_ptr<const Rule> rule_;
  std::optional<OrderHom> post_;
  std::vector<Witness> witnesses_;
  std::string label_;
};

Valuation trivial_valuation(const Ring& r);
Valuation place_valuation(const Ring& r, const PlaceDatum& place);
Valuation monomial_lex(const Ring& r, const std::vector<int>& center);
// Order at a rational or infinite place of `outer`, then `inner` on the residue.
Valuation composite_valuation(const Ring& r, const PlaceDatum& outer, const Valuation& inner);
// Reduction mod p followed by a place of F_p(x); meant for Z-based rings.
Valuation modp_valuation(const Ring& r, unsigned long p, const PlaceDatum& inner);
Valuation custom_valuation(const Ring& r, int rank, std::function<RawValue(const SuperElem&)> fn,
                           std::vector<Witness> witnesses, const std::string& label);

// Order of f at a place; nullopt when f = 0.
std::optional<std::int64_t> place_order(const PlaceDatum& place, const RatFunc& f);
std::int64_t padic_order(const mpq_class& q, unsigned long p);

GValue eval(const Valuation& v, const SuperElem& x);
SuperIdeal support(const Valuation& v);
bool in_Av(const Valuation& v, const SuperElem& x);
bool in_pv(const Valuation& v, const SuperElem& x);

// Elements of the ring used to probe predicates: variables, shifts, small
// irreducibles, primes and the odd generators, with inverses when in the ring.
std::vector<SuperElem> probe_pool(const Ring& r, const std::vector<unsigned long>& extra_primes = {});

/// Classical valuation on the fraction field of R/supp(v).
struct HatValuation {
  Valuation vhat;
  // Maps an element of R to its class in the residue ring (fraction field descriptor).
  std::function<RatFunc(const SuperElem&)> reduce;
};
HatValuation induced_hat(const Valuation& v);

// v̂(x/y) = v̄(x y') where v̄(y y') = 0; returns the value and y'.
struct HatQuotient {
  GValue value;
  SuperElem partner;
};
std::optional<HatQuotient> hat_quotient(const Valuation& v, const SuperElem& x, const SuperElem& y);

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<OrderHom> h;  // w = h ∘ v
  std::string reason;
};
EquivalenceResult equivalent(const Valuation& v, const Valuation& w);

// Integer matrix h with h(v(x)) = w(x) on the witnesses of both valuations.
std::optional<OrderHom> hom_from_witnesses(const Valuation& v, const Valuation& w);

struct LocalityResult {
  bool local = false;
  std::optional<SuperElem> witness;  // value 0 but not a unit of R
};
LocalityResult is_local(const Valuation& v);

// Localization at U = A_v \ p_v.
Valuation localize_valuation(const Valuation& v);

struct AxiomOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  ElemShape shape;
  bool parallel = true;
};
// Valuation axioms on random pairs: multiplicativity, the ultrametric inequality, signs and inverses.
SampleReport verify_axioms(const Valuation& v, const AxiomOptions& opt);
// v(J_R) = ∞ on random nilpotents.
SampleReport verify_nilpotents_infinite(const Valuation& v, const AxiomOptions& opt);
// Witness values generate the value group.
bool witnesses_generate(const Valuation& v);

}  // namespace sval
