#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sval/pairs.hpp"

namespace sval {

/// R ⊆ S through a structural embedding.
struct RingExtension {
  Ring small;
  Ring big;
  RingEmbedding embedding;
  // Elements of S that generate it over R.
  std::vector<SuperElem> generators;
  std::string label;

  SuperElem apply(const SuperElem& a) const { return embedding.apply(a); }
};

// Same variable layout; S may have more odd variables and larger even kinds.
RingExtension inclusion_extension(const Ring& small, const Ring& big);
// "t^2=x" or "t^3=2*x-1": the left side is a polynomial in the variable of
// `big`, the right side is linear in the variable of `small`.
RingExtension parse_extension(const std::string& relation, const Ring& small, const Ring& big);
// Big ring Q(t)[θ..] built from the small one; `var` names the new variable.
RingExtension parse_extension(const std::string& relation, const Ring& small, const std::string& var = "t");

struct ExtensionChecks {
  bool pair_precedes = false;     // (A_v, p_v) ⪯ (A_w, p_w)
  bool restriction_valuation = false;  // w|_R satisfies the valuation axioms
  bool support_contained = false;  // supp(v) ⊆ supp(w)
  bool hom_matches = false;        // w = h ∘ v on the sample
};

struct ExtensionVerdict {
  bool extends = false;
  std::optional<OrderHom> h;  // G -> J ⊆ H
  std::optional<Lattice> J;
  ExtensionChecks checks;
  std::optional<SuperElem> counterexample;
  std::string reason;

  std::string J_string() const;
};

ExtensionVerdict check_extension(const RingExtension& ext, const Valuation& v, const Valuation& w,
                                 std::uint64_t seed = 1);

struct CriterionResult {
  bool holds = false;
  std::optional<SuperElem> witness;  // in R ∩ <supp v>_S but outside supp v
  std::string reason;
};
// R ∩ <supp(v)>_S = supp(v).
CriterionResult extension_criterion(const RingExtension& ext, const Valuation& v, std::uint64_t seed = 1);

struct ClosureProbe {
  SuperElem x;
  bool in_Av = false;
  bool integral = false;
  std::vector<SuperElem> relation;  // monic witness, lowest degree first
  std::string log;
};
// One root: a monic witness when v(x) >= 0, the value comparison otherwise.
ClosureProbe closure_probe(const Valuation& v, const SuperElem& x, int degree_bound);

struct SpotcheckReport {
  SampleReport samples;
  std::vector<ClosureProbe> probes;
};
// Random monic polynomials with coefficients in A_v evaluated at roots of
// negative value never vanish; roots of nonnegative value lie in A_v.
SpotcheckReport integrally_closed_spotcheck(const Valuation& v, std::size_t trials, std::uint64_t seed = 1,
                                            int degree_bound = 5);

ExtensionVerdict extend_over_integral(const RingExtension& ext, const Valuation& v, const Valuation& w,
                                      int degree_bound = 4, std::uint64_t seed = 1);

struct ClosureReport {
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
  std::size_t indeterminate = 0;
  std::size_t places_used = 0;
  std::vector<std::string> notes;
};
// For sampled even z of T: z ∈ A_v for every listed v with R ⊆ A_v, against
// integrality of z over R.
ClosureReport closure_as_intersection(const Ring& R, const Ring& T, const std::vector<Valuation>& places,
                                      std::size_t samples, std::uint64_t seed = 1, int degree_bound = 4);

struct InverseWitness {
  SuperElem x;
  SuperElem partner;
  std::string method;
};

struct InverseVerdict {
  bool pass = false;
  std::vector<InverseWitness> witnesses;
  std::optional<SuperElem> counterexample;
  // A_w ⊆ A_v ∪ supp(w), evaluated when Λ = {v, w} and p_v ⊆ p_w on the sample.
  std::optional<bool> pair_criterion;
  std::string reason;

  std::string verdict() const { return pass ? "Pass" : "FailWithinBound"; }
};

InverseVerdict inverse_property(const std::vector<Valuation>& lambda, std::size_t samples, std::uint64_t seed = 1,
                                int bound = 4);

// h with w_i(h) = α_i for rank-1 places of k(x)[θ..].
SuperElem approximate(const std::vector<Valuation>& places, const std::vector<GValue>& targets);
// x with w_i(x) = w_i(a_i) < w_i(x - a_i) at finite places.
SuperElem strong_approximate(const std::vector<Valuation>& places, const std::vector<SuperElem>& anchors);

struct RamificationEntry {
  Valuation w;
  std::int64_t e = 0;  // index of the image of G in H
  std::optional<std::int64_t> f;  // nullopt: infinite
  std::int64_t torsion_order = 0;  // order of the cyclic group H / h(G)
};

struct RamificationData {
  std::vector<RamificationEntry> entries;
  std::optional<std::int64_t> n;
  std::int64_t sum_ef = 0;
  std::string inequality;  // holds_with_equality | holds | violated | undecided
  std::string note;
};

// With an empty Λ, all extensions of v are computed from the factorization
// of the place polynomial in S.
RamificationData ramification_table(const RingExtension& ext, const Valuation& v,
                                    std::vector<Valuation> lambda = {}, int degree_bound = 6);

}  // namespace sval
