#include <gtest/gtest.h>

#include "sval/error.hpp"
#include "sval/extension.hpp"
#include "sval/parser.hpp"
#include "sval/valspec.hpp"

using namespace sval;

namespace {

SuperElem E(const std::string& s, const Ring& r) { return parse_expr(s, r); }

// Multiplicity of pi in a polynomial by repeated exact division.
std::int64_t multiplicity(MPoly f, const MPoly& pi) {
  if (f.is_zero()) throw std::invalid_argument("multiplicity of zero");
  std::int64_t k = 0;
  while (auto q = f.try_div(pi)) {
    f = *q;
    ++k;
  }
  return k;
}

// Order of a rational function at a place, independent of the library's place_order.
std::int64_t order_oracle(const RatFunc& f, const std::optional<MPoly>& pi) {
  if (!pi) return f.den().degree(0) - f.num().degree(0);
  return multiplicity(f.num(), *pi) - multiplicity(f.den(), *pi);
}

std::optional<MPoly> place_poly(const Valuation& v) {
  if (v.rule().place.kind == PlaceDatum::Kind::Infinity) return std::nullopt;
  return v.rule().place.poly;
}

Valuation residue_support_valuation(const Ring& r) {
  // Trivial on R/(x): supp = (x) + J_R.
  PlaceDatum at_x = PlaceDatum::finite(parse_poly("x", r));
  return custom_valuation(
      r, 0,
      [at_x](const SuperElem& a) -> RawValue {
        auto o = place_order(at_x, a.body());
        if (!o || *o > 0) return std::nullopt;
        return std::vector<std::int64_t>{};
      },
      {}, "trivial mod x");
}

bool is_rational_square(const mpq_class& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num().get_mpz_t()) && mpz_perfect_square_p(q.get_den().get_mpz_t());
}

// Monic irreducibles of degree <= 2 with coefficients a/b, |a| <= 3, 1 <= b <= 3;
// quadratics by the discriminant test.
std::vector<MPoly> height3_places(const Ring& r) {
  std::vector<mpq_class> cs;
  for (int b = 1; b <= 3; ++b)
    for (int a = -3; a <= 3; ++a) {
      mpq_class q(a, b);
      q.canonicalize();
      if (std::find(cs.begin(), cs.end(), q) == cs.end()) cs.push_back(q);
    }
  std::vector<MPoly> out;
  Field f = r->field();
  for (const auto& c : cs) out.push_back(MPoly::univariate(f, 1, 0, {c, mpq_class(1)}));
  for (const auto& b : cs)
    for (const auto& c : cs)
      if (!is_rational_square(b * b - 4 * c)) out.push_back(MPoly::univariate(f, 1, 0, {c, b, mpq_class(1)}));
  return out;
}

}  // namespace

TEST(Factor, RationalPolynomials) {
  Ring r = parse_ring("Q(x)");
  auto f = factor_univariate(parse_poly("(x^2+1)*(x-2)^2*(2*x+1)", r), 0);
  ASSERT_EQ(f.size(), 3u);
  std::int64_t total = 0;
  for (const auto& pf : f) total += pf.multiplicity * pf.poly.degree(0);
  EXPECT_EQ(total, 5);
  auto g = factor_univariate(parse_poly("x^4+4", r), 0);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].poly * g[1].poly, parse_poly("x^4+4", r));
  EXPECT_TRUE(is_irreducible(parse_poly("x^4+1", r), 0));
  EXPECT_FALSE(is_irreducible(parse_poly("x^4-x^2-2", r), 0));
  Ring f5 = parse_ring("Fp5(x)");
  auto h = factor_univariate(parse_poly("x^4-1", f5), 0);
  EXPECT_EQ(h.size(), 4u);
}

TEST(Extension, SqrtFixtureExtends) {
  Ring K = parse_ring("Q(x)[t1]");
  RingExtension ext = parse_extension("t^2=x", K);
  EXPECT_EQ(ext.big->to_string(), "Q(t)[t1]");
  EXPECT_EQ(ext.apply(E("x*t1", K)), E("t^2*t1", ext.big));
  Valuation v = parse_valuation("x", K), w = parse_valuation("t", ext.big);
  ExtensionVerdict ver = check_extension(ext, v, w);
  EXPECT_TRUE(ver.extends) << ver.reason;
  EXPECT_TRUE(ver.checks.pair_precedes && ver.checks.support_contained && ver.checks.restriction_valuation);
  ASSERT_TRUE(ver.h);
  EXPECT_EQ(ver.h->matrix, (std::vector<std::vector<std::int64_t>>{{2}}));
  EXPECT_EQ(ver.J_string(), "2Z");
  // w(x) = 2 computed directly.
  EXPECT_EQ(w.eval(ext.apply(E("x", K))), GValue::finite({1}, {2}));
}

TEST(Extension, DifferentPlaceFails) {
  Ring K = parse_ring("Q(x)[t1]");
  RingExtension ext = parse_extension("t^2=x", K);
  Valuation v = parse_valuation("x-1", K), w = parse_valuation("t", ext.big);
  ExtensionVerdict ver = check_extension(ext, v, w);
  EXPECT_FALSE(ver.extends);
  EXPECT_FALSE(ver.checks.pair_precedes);
  ASSERT_TRUE(ver.counterexample);
  EXPECT_EQ(*ver.counterexample, E("x-1", K));
  EXPECT_THROW(check_extension(ext, w, v), Error);
}

TEST(Extension, TrivialOnSuperfields) {
  Ring K = parse_ring("Q(x)[t1]"), L = parse_ring("Q(x)[t1,t2]");
  RingExtension ext = inclusion_extension(K, L);
  ExtensionVerdict ver = check_extension(ext, trivial_valuation(K), trivial_valuation(L));
  EXPECT_TRUE(ver.extends) << ver.reason;
  EXPECT_EQ(ver.J_string(), "0");
}

TEST(Extension, CriterionFamilies) {
  Ring k = parse_ring("Q(x)"), K = parse_ring("Q(x)[t1,t2]");
  EXPECT_TRUE(extension_criterion(inclusion_extension(k, K), parse_valuation("x", k)).holds);
  Ring K1 = parse_ring("Q(x)[t1]");
  EXPECT_TRUE(extension_criterion(parse_extension("t^2=x", K1), parse_valuation("x", K1)).holds);
  EXPECT_TRUE(extension_criterion(parse_extension("t^3=x-1", K1), trivial_valuation(K1)).holds);
}

TEST(Extension, CriterionRejectsWhenSupportBecomesUnit) {
  Ring R = parse_ring("Q[x][t1]"), S = parse_ring("Q(x)[t1]");
  RingExtension ext = inclusion_extension(R, S);
  Valuation v = residue_support_valuation(R);
  CriterionResult c = extension_criterion(ext, v);
  EXPECT_FALSE(c.holds);
  ASSERT_TRUE(c.witness);
  // Membership oracle: x ∈ supp v, x is a unit of S, so 1 = x * x^-1 lies in
  // <supp v>_S ∩ R while v(1) = 0.
  SuperElem x = E("x", R);
  EXPECT_TRUE(v.eval(x).is_infinite());
  SuperElem xs = ext.apply(x);
  EXPECT_EQ(xs * xs.inverse(), SuperElem::constant(S, 1));
  EXPECT_FALSE(v.eval(*c.witness).is_infinite());
  EXPECT_TRUE(c.witness->in_ring());
  // Only odd variables added: the contraction is supp v again.
  EXPECT_TRUE(extension_criterion(inclusion_extension(R, parse_ring("Q[x][t1,t2]")), v).holds);
  try {
    extension_criterion(parse_extension("t^2=x", R), v);
    FAIL() << "expected UnsupportedIdeal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedIdeal);
  }
}

TEST(IntegralClosure, ProbesAndSpotcheck) {
  Ring r = parse_ring("Q(x)[t1,t2]");
  Valuation v = parse_valuation("x", r);
  ClosureProbe inv = closure_probe(v, E("1/x", r), 5);
  EXPECT_FALSE(inv.in_Av);
  EXPECT_FALSE(inv.integral);
  EXPECT_NE(inv.log.find("n=5: n*v(x) = (-5) < (-4)"), std::string::npos) << inv.log;
  ClosureProbe odd = closure_probe(v, E("t1", r), 5);
  EXPECT_TRUE(odd.in_Av && odd.integral);
  EXPECT_EQ(odd.relation.size(), 2u);
  EXPECT_TRUE((E("t1", r) * E("t1", r)).is_zero());
  ClosureProbe unit = closure_probe(v, E("x+1", r), 5);
  EXPECT_TRUE(unit.in_Av && unit.integral);
  for (const char* desc : {"x", "inf", "x^2+1"}) {
    SpotcheckReport rep = integrally_closed_spotcheck(parse_valuation(desc, r), 200, 3);
    EXPECT_TRUE(rep.samples.ok()) << desc << ": " << rep.samples.summary();
  }
  Ring r2 = parse_ring("Q(x,y)[t1]");
  EXPECT_TRUE(integrally_closed_spotcheck(parse_valuation("lex(x,y)", r2), 100, 5).samples.ok());
}

TEST(IntegralClosure, ExtendOverIntegral) {
  Ring K = parse_ring("Q(x)[t1]");
  RingExtension ext = parse_extension("t^2=x", K);
  ExtensionVerdict ver = extend_over_integral(ext, parse_valuation("x", K), parse_valuation("t", ext.big));
  EXPECT_TRUE(ver.extends);
  EXPECT_EQ(ver.J_string(), "2Z");
  try {
    extend_over_integral(ext, parse_valuation("x", K), parse_valuation("t-1", ext.big));
    FAIL() << "expected NotDominating";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotDominating);
  }
  Ring R = parse_ring("Q[x][t1]"), S = parse_ring("Q(x)[t1]");
  try {
    extend_over_integral(inclusion_extension(R, S), parse_valuation("x", R), parse_valuation("x", S));
    FAIL() << "expected NotIntegral";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotIntegral);
  }
}

TEST(IntegralClosure, IntersectionOfPlaces) {
  Ring R = parse_ring("Q[x][t1,t2]"), T = parse_ring("Q(x)[t1,t2]");
  std::vector<Valuation> places{trivial_valuation(T), parse_valuation("inf", T)};
  for (const auto& pi : height3_places(T)) places.push_back(place_valuation(T, PlaceDatum::finite(pi)));
  ClosureReport rep = closure_as_intersection(R, T, places, 100, 9);
  EXPECT_EQ(rep.disagreements, 0u);
  EXPECT_LT(rep.indeterminate, 5u);
  EXPECT_EQ(rep.places_used, places.size() - 1);  // ∞ does not contain x
  Valuation at0 = parse_valuation("x", T);
  EXPECT_TRUE(in_Av(at0, E("x^2", T)) && is_integral(E("x^2", T), R, 4).yes());
  EXPECT_FALSE(in_Av(at0, E("1/x", T)));
  EXPECT_FALSE(is_integral(E("1/x", T), R, 4).yes());
  for (const auto& v : places) EXPECT_TRUE(v.eval(E("t1", T)).is_infinite());
}

TEST(InverseProperty, Superfield) {
  Ring r = parse_ring("Q(x)[t1,t2]");
  std::vector<Valuation> lambda{parse_valuation("x", r), parse_valuation("x-1", r), parse_valuation("inf", r)};
  InverseVerdict iv = inverse_property(lambda, 40, 2);
  ASSERT_TRUE(iv.pass) << iv.reason;
  for (const auto& w : iv.witnesses) {
    EXPECT_EQ(w.method, "even-part inverse");
    for (const auto& v : lambda)
      if (!v.eval(w.x).is_infinite()) EXPECT_TRUE(v.eval(w.x * w.partner).is_zero());
  }
}

TEST(InverseProperty, ModPairsOnLaurent) {
  Ring r = parse_ring("Z[x,x^-1][t1,t2]");
  std::vector<Valuation> lambda{parse_valuation("modp:3:x", r), parse_valuation("modp:5:inf", r)};
  InverseVerdict iv = inverse_property(lambda, 40, 4);
  ASSERT_TRUE(iv.pass) << iv.reason;
  EXPECT_FALSE(iv.pair_criterion.has_value());
  bool crt = false;
  for (const auto& w : iv.witnesses) {
    EXPECT_TRUE(w.partner.in_ring());
    for (const auto& v : lambda)
      if (!v.eval(w.x).is_infinite()) EXPECT_TRUE(v.eval(w.x * w.partner).is_zero()) << w.x.to_string();
    crt = crt || w.method == "CRT over the residue pairs";
  }
  EXPECT_TRUE(crt);
  // 1 + x: values (0, -1); 10 + 6/x has values (0, 1).
  SuperElem y = E("10 + 6*x^-1", r);
  EXPECT_TRUE(lambda[0].eval(E("1+x", r) * y).is_zero());
  EXPECT_TRUE(lambda[1].eval(E("1+x", r) * y).is_zero());
}

TEST(InverseProperty, LiftedClassicalPairFails) {
  Ring r = parse_ring("Z[x,x^-1][t1]");
  std::vector<Valuation> lambda{parse_valuation("x", r), parse_valuation("inf", r)};
  InverseVerdict iv = inverse_property(lambda, 30, 1);
  EXPECT_FALSE(iv.pass);
  EXPECT_EQ(iv.verdict(), "FailWithinBound");
  ASSERT_TRUE(iv.counterexample);
  // A partner must have lowest exponent -v(c) and highest exponent w(c); only
  // monomials allow that.
  const RatFunc b = iv.counterexample->body();
  EXPECT_GT(b.num().terms().size(), 1u);
}

TEST(InverseProperty, PairCriterion) {
  Ring r = parse_ring("Q(x)[t1]");
  std::vector<Valuation> lambda{trivial_valuation(r), parse_valuation("x", r)};
  InverseVerdict iv = inverse_property(lambda, 30, 1);
  EXPECT_TRUE(iv.pass);
  ASSERT_TRUE(iv.pair_criterion.has_value());
  EXPECT_TRUE(*iv.pair_criterion);
}

TEST(Approximation, Fixtures) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v0 = parse_valuation("x", r), v1 = parse_valuation("x-1", r);
  GroupDesc z{1};
  EXPECT_EQ(approximate({v0, v1}, {GValue::finite(z, {2}), GValue::finite(z, {-1})}), E("x^2/(x-1)", r));
  EXPECT_EQ(approximate({v0}, {GValue::zero(z)}), E("1", r));
  EXPECT_EQ(approximate({v0, v1}, {GValue::zero(z), GValue::zero(z)}), E("1", r));
  try {
    approximate({v0, parse_valuation("x", r)}, {GValue::zero(z), GValue::zero(z)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DependentPlaces);
  }
  try {
    approximate({v0}, {GValue::infinity(z)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InfiniteTarget);
  }
}

TEST(Approximation, RandomTargetsAgainstOracle) {
  Ring r = parse_ring("Q(x)[t1]");
  std::vector<Valuation> pool{parse_valuation("x", r), parse_valuation("x-1", r), parse_valuation("x^2+1", r),
                              parse_valuation("inf", r), parse_valuation("x+2", r)};
  Rng rng = sample_rng(77, 0);
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
    for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(order_oracle(h.body(), place_poly(places[i])), targets[i][0]);
  }
}

TEST(Approximation, Strong) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v0 = parse_valuation("x", r), v1 = parse_valuation("x-1", r);
  SuperElem x0 = strong_approximate({v0, v1}, {E("x", r), E("1", r)});
  for (const auto& [anchor, place, bound] : {std::tuple{"x", "x", 2}, std::tuple{"1", "x-1", 1}}) {
    RatFunc d = (x0 - E(anchor, r)).body();
    if (!d.is_zero()) EXPECT_GE(order_oracle(d, parse_poly(place, r)), bound);
  }
  EXPECT_EQ(order_oracle(x0.body(), parse_poly("x", r)), 1);
  SuperElem a = E("(x-3)/x^2", r);
  SuperElem single = strong_approximate({v0}, {a});
  EXPECT_GT(v0.eval(single - a), v0.eval(a));
  try {
    strong_approximate({v0}, {E("t1", r)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AnchorInSupport);
  }
  std::vector<Valuation> pool{v0, v1, parse_valuation("x^2+1", r), parse_valuation("x+2", r)};
  ElemShape shape;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = sample_rng(91, static_cast<std::uint64_t>(trial));
    std::vector<Valuation> places{pool[trial % 4], pool[(trial + 1) % 4]};
    std::vector<SuperElem> anchors;
    for (int i = 0; i < 2; ++i) anchors.push_back(SuperElem::even(r, random_even(rng, *r, shape)));
    SuperElem s = strong_approximate(places, anchors);
    for (std::size_t i = 0; i < 2; ++i) {
      std::int64_t a = order_oracle(anchors[i].body(), place_poly(places[i]));
      EXPECT_EQ(order_oracle(s.body(), place_poly(places[i])), a);
      RatFunc diff = (s - anchors[i]).body();
      if (!diff.is_zero()) EXPECT_GT(order_oracle(diff, place_poly(places[i])), a);
    }
  }
}

TEST(Ramification, SqrtX) {
  Ring K = parse_ring("Q(x)[t1]");
  RingExtension ext = parse_extension("t^2=x", K);
  RamificationData d = ramification_table(ext, parse_valuation("x", K));
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].e, 2);
  EXPECT_EQ(d.entries[0].f, 1);
  EXPECT_EQ(d.entries[0].torsion_order, 2);
  EXPECT_EQ(d.n, 2);
  EXPECT_EQ(d.inequality, "holds_with_equality");
  RamificationData inf = ramification_table(ext, parse_valuation("inf", K));
  ASSERT_EQ(inf.entries.size(), 1u);
  EXPECT_EQ(inf.entries[0].e, 2);
  RamificationData split = ramification_table(ext, parse_valuation("x-1", K));
  ASSERT_EQ(split.entries.size(), 2u);
  for (const auto& e : split.entries) EXPECT_EQ(e.e * *e.f, 1);
  EXPECT_EQ(split.inequality, "holds_with_equality");
}

TEST(Ramification, InertFixture) {
  Ring K = parse_ring("Q(x)[t1]");
  RingExtension ext = parse_extension("t^2=x-1", K);
  RamificationData d = ramification_table(ext, parse_valuation("x", K));
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].w.rule().place.poly, parse_poly("t^2+1", ext.big));
  EXPECT_EQ(d.entries[0].e, 1);
  EXPECT_EQ(d.entries[0].f, 2);
  EXPECT_EQ(d.n, 2);
  EXPECT_EQ(d.inequality, "holds_with_equality");
}

TEST(Ramification, TrivialAndCubic) {
  Ring K = parse_ring("Q(x)[t1]"), L = parse_ring("Q(x)[t1,t2]");
  RamificationData d = ramification_table(inclusion_extension(K, L), trivial_valuation(K));
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].e, 1);
  EXPECT_EQ(d.entries[0].f, 1);
  EXPECT_EQ(d.n, 1);
  RingExtension cubic = parse_extension("t^3=x", K);
  RamificationData c = ramification_table(cubic, parse_valuation("x-1", K));
  // t^3 - 1 = (t - 1)(t^2 + t + 1)
  ASSERT_EQ(c.entries.size(), 2u);
  EXPECT_EQ(c.n, 3);
  EXPECT_EQ(c.sum_ef, 3);
  EXPECT_EQ(c.inequality, "holds_with_equality");
}

TEST(Extension, TransitivityWithDominance) {
  Ring K = parse_ring("Q(x)[t1]");
  RingExtension ext = parse_extension("t^2=x", K);
  Valuation v = parse_valuation("x", K), u = parse_valuation("t", ext.big);
  Valuation w = trivial_valuation(K), t = trivial_valuation(ext.big);
  ASSERT_TRUE(dominates(w, v).yes);
  ASSERT_TRUE(check_extension(ext, v, u).extends);
  EXPECT_TRUE(check_extension(ext, w, t).extends);
  EXPECT_TRUE(dominates(t, u).yes);
}
