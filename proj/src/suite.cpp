#include "sval/suite.hpp"

#include <algorithm>
#include <sstream>

#include "sval/error.hpp"
#include "sval/extension.hpp"
#include "sval/pairs.hpp"
#include "sval/parser.hpp"
#include "sval/random.hpp"
#include "sval/sampling.hpp"
#include "sval/valspec.hpp"
#include "sval/zariski.hpp"

namespace sval {
namespace {

SuperElem E(const std::string& s, const Ring& r) { return parse_expr(s, r); }

struct Tally {
  std::ostringstream out;
  bool ok = true;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      out << "FAILED " << what << "; ";
    }
  }
  void note(const std::string& s) { out << s << "; "; }
};

std::string failures_of(const SampleReport& r) { return r.ok() ? "" : r.summary(); }

std::int64_t multiplicity(MPoly f, const MPoly& pi) {
  std::int64_t k = 0;
  while (auto q = f.try_div(pi)) {
    f = *q;
    ++k;
  }
  return k;
}

// Order of a nonzero rational function at pi (or at ∞ when pi is absent) by exact division.
std::int64_t order_by_division(const RatFunc& f, const Valuation& place) {
  const PlaceDatum& p = place.rule().place;
  if (p.kind == PlaceDatum::Kind::Infinity) return f.den().degree(0) - f.num().degree(0);
  return multiplicity(f.num(), p.poly) - multiplicity(f.den(), p.poly);
}

std::vector<Valuation> six_fixtures() {
  Ring r1 = parse_ring("Q(x)[t1,t2,t3]"), r2 = parse_ring("Q(x,y)[t1,t2]");
  return {parse_valuation("x", r1),        parse_valuation("x-1", r1),         parse_valuation("x^2+1", r1),
          parse_valuation("inf", r1),      parse_valuation("lex(x,y)", r2), parse_valuation("comp(x-1; y)", r2)};
}

void superalgebra_suite(Tally& t, std::uint64_t seed) {
  Ring r = parse_ring("Q(x)[t1,t2,t3]");
  ElemShape shape;
  shape.max_degree = 2;
  shape.coeff_bound = 4;
  shape.max_terms = 2;
  shape.max_den_degree = 1;
  SampleReport laws = run_samples(seed, 10000, [&](Rng& rng, std::size_t) -> std::optional<std::string> {
    Parity pa = rng() % 2 ? Parity::Odd : Parity::Even, pb = rng() % 2 ? Parity::Odd : Parity::Even;
    SuperElem a = random_elem(rng, r, shape, pa), b = random_elem(rng, r, shape, pb);
    SuperElem ab = a * b, ba = b * a;
    bool both_odd = pa == Parity::Odd && pb == Parity::Odd;
    if (ab != (both_odd ? -ba : ba)) return "supercommutativity: " + a.to_string() + " , " + b.to_string();
    if (pa == Parity::Odd && !(a * a).is_zero()) return "odd square: " + a.to_string();
    return std::nullopt;
  });
  t.check(laws.ok(), "supercommutativity/odd squares " + failures_of(laws));
  t.note("homogeneous pairs " + std::to_string(laws.trials));
  SampleReport hom = run_samples(seed + 1, 1000, [&](Rng& rng, std::size_t) -> std::optional<std::string> {
    SuperElem a = random_elem(rng, r, shape), b = random_elem(rng, r, shape);
    if (superreduce(a + b) != superreduce(a) + superreduce(b)) return "sum: " + a.to_string();
    if (superreduce(a * b) != superreduce(a) * superreduce(b)) return "product: " + a.to_string();
    return std::nullopt;
  });
  t.check(hom.ok(), "superreduce homomorphism " + failures_of(hom));
  t.note("superreduce pairs " + std::to_string(hom.trials));
}

void valuation_suite(Tally& t, std::uint64_t seed) {
  for (const auto& v : six_fixtures()) {
    AxiomOptions opt;
    opt.seed = seed;
    opt.trials = 10000;
    opt.shape.max_degree = 2;
    opt.shape.max_terms = 2;
    SampleReport ax = verify_axioms(v, opt);
    t.check(ax.ok(), v.label() + " axioms " + failures_of(ax));
    opt.trials = 1000;
    SampleReport nil = verify_nilpotents_infinite(v, opt);
    t.check(nil.ok(), v.label() + " v(J) " + failures_of(nil));
  }
  t.note("6 valuations x 10000 pairs, 1000 nilpotents each");
}

void pairs_suite(Tally& t, std::uint64_t seed) {
  for (const auto& v : six_fixtures()) {
    PairOptions opt;
    opt.seed = seed;
    Valuation u = valuation_from_pair(pair_of(v), opt);
    EquivalenceResult eq = equivalent(u, v);
    t.check(eq.equivalent, v.label() + " round trip: " + eq.reason);
  }
  Ring r = parse_ring("Z[x,x^-1][t1,t2]");
  ValuationPair pair = laurent_pair(r, 3);
  PairOptions opt;
  opt.bound = 6;
  opt.seed = seed;
  PairVerdict pv = is_valuation_pair(pair, opt);
  t.check(pv.pass, "declared pair (Z[x] + 3R, xA + 3R): " + pv.reason);
  Valuation v = valuation_from_pair(pair, opt);
  SuperIdeal supp = support(v);
  // supp = 3 R̄ ⊕ J_R: every Laurent coefficient of the body divisible by 3.
  std::size_t checked = 0;
  for (const auto& x : structured_sample(r, 200, seed, {E("3", r), E("3*x^-2 + 6*x", r), E("3 + t1", r)})) {
    const RatFunc b = x.body();
    bool want = true;
    for (const auto& [m, c] : b.num().terms()) want = want && mpz_divisible_ui_p(mpq_class(c).get_num().get_mpz_t(), 3) != 0;
    t.check(ideal_member(x, supp) == want, "support at " + x.to_string());
    t.check(v.eval(x).is_infinite() == want, "value at " + x.to_string());
    ++checked;
  }
  t.note("6 round trips; declared pair " + pv.verdict() + " at bound 6; support checked on " + std::to_string(checked));
}

void convexity_suite(Tally& t, std::uint64_t seed) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x", r);
  GroupDesc g{1};
  std::vector<Segment> segs{Segment::empty(g), Segment::subgroup(g, {})};
  for (int k = 1; k <= 3; ++k) segs.push_back(Segment::interval(GValue::finite(g, {k})));
  std::vector<ConvexIdeal> ideals;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    ConvexIdeal a = ideal_of_segment(segs[i], v);
    // ∅ ↦ A_v, {0} ↦ p_v, [-k,k] ↦ m^(k+1).
    for (int j = -3; j <= 6; ++j) {
      SuperElem m = E("x", r).pow(j) * E("(2 + x) + x*t1", r);
      bool want = static_cast<int>(i) == 0 ? j >= 0 : j >= static_cast<int>(i);
      t.check(a.member(m) == want, segs[i].to_string() + " at x^" + std::to_string(j));
    }
    Segment back = segment_of_ideal(a);
    t.check(same_on_box(back, segs[i]), "round trip " + segs[i].to_string() + " -> " + back.to_string());
    ideals.push_back(a);
  }
  ideals.push_back(ideal_from_predicate(v, [v](const SuperElem& x) { return v.eval(x).is_infinite(); }, "supp"));
  ideals.push_back(ideal_from_predicate(v, [v](const SuperElem& x) { return in_pv(v, x); }, "p_v"));
  auto sample = structured_sample(r, 200, seed);
  sample.resize(std::min<std::size_t>(sample.size(), 200));
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (std::size_t j = i + 1; j < ideals.size(); ++j)
      t.check(ideal_included(ideals[i], ideals[j], sample).has_value(),
              "comparable " + ideals[i].label + " / " + ideals[j].label);
  t.note("chain A_v > p_v > m^2 > m^3 > m^4 round-trips; " + std::to_string(ideals.size()) +
         " ideals pairwise comparable on " + std::to_string(sample.size()));
}

void dominance_suite(Tally& t, std::uint64_t seed) {
  Ring r = parse_ring("Q(x,y)[t1]");
  Valuation v = parse_valuation("lex(x,y)", r);
  auto entries = psi_v(v);
  auto iso = isolated_subgroups(v.group());
  t.check(entries.size() == 2 && iso.size() == 2, "psi_v size " + std::to_string(entries.size()));
  for (std::size_t i = 0; i < std::min(entries.size(), iso.size()); ++i) {
    t.check(same_on_box(entries[i].subgroup, iso[i]), "class " + std::to_string(i) + " subgroup");
    t.check(same_on_box(hom_kernel(entries[i].h), iso[i]), "class " + std::to_string(i) + " kernel");
    t.check(dominates(entries[i].w, v).yes, "class " + std::to_string(i) + " dominates");
  }
  if (entries.size() != 2) return;
  InducedQuotient q = induced_on_quotient(entries[1].w, v);
  Rng rng = sample_rng(seed, 0);
  std::size_t checked = 0;
  while (checked < 100) {
    SuperElem x = random_elem(rng, r, ElemShape{});
    if (!in_Av(q.w, x)) continue;
    ++checked;
    GValue got = q.eval(x);
    t.check(got.is_infinite() || q.h.apply(got).is_zero(), "image outside h^-1(0) at " + x.to_string());
  }
  // Every kernel value (0, k) is attained.
  for (int k = -3; k <= 3; ++k)
    t.check(q.eval(E("y", r).pow(k)) == GValue::finite(v.group(), {0, k}), "kernel value (0," + std::to_string(k) + ")");
  t.check(q.eval(E("x", r)).is_infinite(), "p_w maps to inf");
  t.note("2 dominating classes; induced image checked on 100 samples");
}

void extension_suite(Tally& t, std::uint64_t seed) {
  Ring K = parse_ring("Q(x)[t1]");
  RingExtension sqrt_x = parse_extension("t^2=x", K);
  RamificationData a = ramification_table(sqrt_x, parse_valuation("x", K));
  bool a_ok = a.entries.size() == 1 && a.entries[0].e == 2 && a.entries[0].f == 1 && a.n == 2;
  t.check(a_ok, "t^2=x table");
  t.check(a.inequality == "holds_with_equality", "t^2=x inequality " + a.inequality);
  RingExtension inert = parse_extension("t^2=x-1", K);
  RamificationData b = ramification_table(inert, parse_valuation("x", K));
  bool b_ok = b.entries.size() == 1 && b.entries[0].e == 1 && b.entries[0].f == 2 && b.n == 2;
  t.check(b_ok, "t^2=x-1 table");
  t.check(b.inequality == "holds_with_equality", "t^2=x-1 inequality " + b.inequality);
  ExtensionVerdict ev = check_extension(sqrt_x, parse_valuation("x", K), parse_valuation("t", sqrt_x.big), seed);
  t.check(ev.extends, "check_extension: " + ev.reason);
  t.check(ev.J_string() == "2Z", "J = " + ev.J_string());
  t.note("(e,f,n) = (2,1,2) and (1,2,2); J = " + ev.J_string());
}

void approximation_suite(Tally& t, std::uint64_t seed) {
  Ring r = parse_ring("Q(x)[t1]");
  std::vector<Valuation> pool{parse_valuation("x", r), parse_valuation("x-1", r), parse_valuation("x^2+1", r),
                              parse_valuation("inf", r), parse_valuation("x+2", r)};
  Rng rng = sample_rng(seed, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> idx{0, 1, 2, 3, 4};
    std::shuffle(idx.begin(), idx.end(), rng);
    std::size_t k = 2 + rng() % 2;
    std::vector<Valuation> places;
    std::vector<GValue> targets;
    for (std::size_t i = 0; i < k; ++i) {
      places.push_back(pool[idx[i]]);
      targets.push_back(GValue::finite({1}, {static_cast<std::int64_t>(rng() % 9) - 4}));
    }
    SuperElem h = approximate(places, targets);
    for (std::size_t i = 0; i < k; ++i) {
      t.check(places[i].eval(h) == targets[i], "eval at " + places[i].label());
      t.check(order_by_division(h.body(), places[i]) == targets[i][0], "division order at " + places[i].label());
    }
  }
  std::vector<Valuation> finite{pool[0], pool[1], pool[2], pool[4]};
  ElemShape shape;
  for (int trial = 0; trial < 20; ++trial) {
    Rng g = sample_rng(seed + 1, static_cast<std::uint64_t>(trial));
    std::vector<Valuation> places{finite[trial % 4], finite[(trial + 1) % 4]};
    std::vector<SuperElem> anchors;
    for (int i = 0; i < 2; ++i) anchors.push_back(SuperElem::even(r, random_even(g, *r, shape)));
    SuperElem s = strong_approximate(places, anchors);
    for (std::size_t i = 0; i < 2; ++i) {
      GValue va = places[i].eval(anchors[i]);
      t.check(places[i].eval(s) == va, "strong value at " + places[i].label());
      t.check(places[i].eval(s - anchors[i]) > va, "strong closeness at " + places[i].label());
      RatFunc d = (s - anchors[i]).body();
      if (!d.is_zero())
        t.check(order_by_division(d, places[i]) > order_by_division(anchors[i].body(), places[i]), "division closeness");
    }
  }
  t.note("50 weak and 20 strong instances re-verified");
}

void zariski_suite(Tally& t, std::uint64_t seed) {
  ZRSpace s = make_space(parse_ring("Q(x)[t1,t2]"), parse_ring("Q"));
  enumerate_points(s, 3);
  HomeomorphismReport h = even_homeomorphism(s, 20, seed);
  t.check(h.bijective, "psi bijective: " + h.detail);
  t.check(h.opens_commute, "psi on opens: " + h.detail);
  ElemShape shape;
  shape.max_degree = 2;
  shape.coeff_bound = 3;
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng = sample_rng(seed, k);
    SuperElem a = random_elem(rng, s.L, shape, Parity::Even), b = random_elem(rng, s.L, shape, Parity::Even);
    BasicOpen ua = basic_open(s, {a}), ub = basic_open(s, {b}), uab = basic_open(s, {a, b});
    for (std::size_t i = 0; i < s.points.size(); ++i)
      if ((member(ua, i) && member(ub, i)) != member(uab, i)) {
        t.check(false, "basis law at " + a.to_string() + " , " + b.to_string());
        break;
      }
  }
  const ZRPoint inf = ZRPoint::at(PlaceDatum::infinity(0));
  SheafSections poly = sections(s, {inf}, 3, 20, seed);
  std::vector<SuperElem> want{E("1", s.L), E("x", s.L), E("x^2", s.L), E("x^3", s.L)};
  t.check(poly.even_basis == want, "sections off inf are Q[x] up to degree 3");
  Rng rng = sample_rng(seed, 99);
  for (int i = 0; i < 20; ++i) {
    SuperElem p = SuperElem::even(s.L, RatFunc(random_poly(rng, *s.L, shape)));
    t.check(is_section(s, {inf}, p), "polynomial section " + p.to_string());
  }
  t.check(!is_section(s, {inf}, E("1/(x^2+1)", s.L)), "pole at x^2+1 rejected");
  SheafSections global = sections(s, {}, 3, 20, seed);
  t.check(global.even_basis == std::vector<SuperElem>{E("1", s.L)} && global.odd_part, "global sections Q + J_L");
  t.check(is_section(s, {}, E("2 + t1 + x*t1*t2/(x-1)", s.L)), "constants + J_L are global");
  t.check(!is_section(s, {}, E("x", s.L)), "x is not global");
  SuperCurve c = supercurve(s);
  auto bad = nonlocal_stalks(c, 20, seed);
  t.check(bad.empty(), std::to_string(bad.size()) + " nonlocal stalks");
  t.note(std::to_string(s.points.size()) + " points at degree 3; " + std::to_string(c.points.size()) + " stalks local");
}

void closure_suite(Tally& t, std::uint64_t seed) {
  Ring R = parse_ring("Q[x][t1,t2]"), T = parse_ring("Q(x)[t1,t2]");
  ZRSpace s = make_space(T, parse_ring("Q"));
  enumerate_points(s, 2);
  ClosureReport rep = closure_as_intersection(R, T, s.valuations, 100, seed);
  std::size_t total = rep.agreements + rep.disagreements + rep.indeterminate;
  t.check(total == 100, "sample size " + std::to_string(total));
  t.check(rep.disagreements == 0, std::to_string(rep.disagreements) + " disagreements");
  t.check(rep.indeterminate * 20 < total, std::to_string(rep.indeterminate) + " indeterminate");
  t.note(std::to_string(rep.agreements) + " agree, " + std::to_string(rep.indeterminate) + " indeterminate, " +
         std::to_string(rep.places_used) + " places");
}

using SuiteFn = void (*)(Tally&, std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"superalgebra", superalgebra_suite}, {"valuation", valuation_suite},
      {"pairs", pairs_suite},               {"convexity", convexity_suite},
      {"dominance", dominance_suite},       {"extension", extension_suite},
      {"approximation", approximation_suite}, {"zariski", zariski_suite},
      {"closure", closure_suite}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  const auto& r = registry();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].first != name) continue;
    Tally t;
    try {
      r[i].second(t, seed);
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
    std::string detail = t.out.str();
    if (detail.size() >= 2) detail.resize(detail.size() - 2);
    return {static_cast<int>(i + 1), name, t.ok, detail};
  }
  throw Error(Errc::InvalidArgument, "unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, seed));
  return out;
}

}  // namespace sval
