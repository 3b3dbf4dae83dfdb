#include <gtest/gtest.h>

#include "sval/error.hpp"
#include "sval/pairs.hpp"
#include "sval/parser.hpp"
#include "sval/valspec.hpp"

using namespace sval;

namespace {

SuperElem E(const std::string& s, const Ring& r) { return parse_expr(s, r); }

std::vector<Valuation> fixtures() {
  Ring r1 = parse_ring("Q(x)[t1,t2]"), r2 = parse_ring("Q(x,y)[t1,t2]");
  return {parse_valuation("x", r1), parse_valuation("x-1", r1), parse_valuation("x^2+1", r1), parse_valuation("inf", r1),
          parse_valuation("lex(x,y)", r2), parse_valuation("comp(x-1; y)", r2)};
}

// y-order of the residue at x = 0 of a body in Q(x, y), computed from the terms directly.
std::optional<std::int64_t> residue_y_order(const RatFunc& f) {
  auto split = [](const MPoly& p) {
    std::int64_t xmin = 1 << 20;
    for (const auto& [m, c] : p.terms()) xmin = std::min<std::int64_t>(xmin, m.e[0]);
    std::int64_t ymin = 1 << 20;
    for (const auto& [m, c] : p.terms())
      if (m.e[0] == xmin) ymin = std::min<std::int64_t>(ymin, m.e[1]);
    return std::pair{xmin, ymin};
  };
  auto [xn, yn] = split(f.num());
  auto [xd, yd] = split(f.den());
  if (xn > xd) return std::nullopt;
  return yn - yd;
}

}  // namespace

TEST(Pair, FromValuationPasses) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x", r);
  PairVerdict pv = is_valuation_pair(pair_of(v));
  ASSERT_TRUE(pv.pass) << pv.reason;
  bool saw = false;
  for (const auto& [x, w] : pv.witnesses) {
    SuperElem prod = x * w;
    EXPECT_TRUE(in_Av(v, prod) && !in_pv(v, prod));
    EXPECT_TRUE(in_pv(v, w) && w.is_even());
    if (x == E("1/x", r)) {
      saw = true;
      EXPECT_EQ(w, E("x", r));
    }
  }
  EXPECT_TRUE(saw);
}

TEST(Pair, LaurentModP) {
  Ring r = parse_ring("Z[x,x^-1][t1,t2]");
  ValuationPair pair = laurent_pair(r, 3);
  EXPECT_TRUE(pair.in_A(E("1 + x + 6*x^-2", r)));
  EXPECT_FALSE(pair.in_A(E("x^-1", r)));
  EXPECT_TRUE(pair.in_p(E("x + 3", r)));
  EXPECT_FALSE(pair.in_p(E("1 + x", r)));
  PairOptions opt;
  opt.bound = 6;
  PairVerdict pv = is_valuation_pair(pair, opt);
  ASSERT_TRUE(pv.pass) << pv.reason;
  EXPECT_EQ(pv.verdict(), "Pass");

  Valuation v = valuation_from_pair(pair, opt);
  EXPECT_EQ(v.group().rank, 1);
  SuperIdeal s = support(v);
  for (const char* in : {"3", "3*x^-4 + 6*x^2", "t1", "3 + t1*t2", "x*t1"}) EXPECT_TRUE(ideal_member(E(in, r), s)) << in;
  for (const char* out : {"x", "1 + x", "x^-3", "3 + x^-1", "2"}) EXPECT_FALSE(ideal_member(E(out, r), s)) << out;
  auto eq = equivalent(v, modp_valuation(r, 3, PlaceDatum::finite(parse_poly("x", r))));
  EXPECT_TRUE(eq.equivalent) << eq.reason;
}

TEST(Pair, LaurentAtInfinityModQ) {
  Ring r = parse_ring("Z[x,x^-1][t1]");
  ValuationPair pair = laurent_pair(r, 5, true);
  ASSERT_TRUE(is_valuation_pair(pair).pass);
  Valuation w = valuation_from_pair(pair);
  EXPECT_TRUE(equivalent(w, parse_valuation("modp:5:inf", r)).equivalent);
}

TEST(Pair, PolynomialSubringFails) {
  Ring r = parse_ring("Q(x)[t1]");
  ValuationPair pair = polynomial_pair(r, parse_poly("x", r));
  PairVerdict pv = is_valuation_pair(pair);
  EXPECT_FALSE(pv.pass);
  EXPECT_EQ(pv.verdict(), "FailWithinBound");
  ASSERT_TRUE(pv.counterexample.has_value());
  EXPECT_FALSE(pair.in_A(*pv.counterexample));
  // 1/(x+1) in particular has no witness: every x' = x g gives x g/(x+1).
  SuperElem x = E("1/(x+1)", r);
  for (int k = 1; k <= 6; ++k) {
    SuperElem xp = E("x", r).pow(k);
    SuperElem prod = x * xp;
    EXPECT_FALSE(pair.in_A(prod) && !pair.in_p(prod));
  }
}

TEST(Pair, RoundTripFixtures) {
  for (const auto& v : fixtures()) {
    Valuation u = valuation_from_pair(pair_of(v));
    EXPECT_EQ(u.group().rank, v.group().rank) << v.label();
    auto eq = equivalent(u, v);
    EXPECT_TRUE(eq.equivalent) << v.label() << ": " << eq.reason;
  }
}

TEST(Pair, TrivialPair) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation u = valuation_from_pair(pair_of(trivial_valuation(r)));
  EXPECT_TRUE(u.is_trivial());
  EXPECT_TRUE(u.eval(E("t1", r)).is_infinite());
  EXPECT_TRUE(u.eval(E("x^3 + 1/x", r)).is_zero());
}

TEST(Pair, GreaterAndPrecedes) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x", r);
  ValuationPair p = pair_of(v);
  EXPECT_TRUE(pair_greater(p, E("x^2", r), E("x", r)));
  EXPECT_FALSE(pair_greater(p, E("x", r), E("x^2", r)));
  auto sample = structured_sample(r, 20, 1);
  EXPECT_TRUE(pair_precedes(p, p, sample));
  EXPECT_TRUE(pair_precedes(polynomial_pair(r, parse_poly("x", r)), p, sample));
  EXPECT_FALSE(pair_precedes(p, polynomial_pair(r, parse_poly("x", r)), sample));
}

TEST(InvertibleOutside, Examples) {
  Ring r = parse_ring("Q(x)[t1]");
  auto a = invertible_outside(parse_valuation("x", r), E("1/x", r));
  EXPECT_EQ(a.vx.to_string(), "(-1)");
  EXPECT_EQ(a.vinv.to_string(), "(1)");
  EXPECT_TRUE(a.inverse_in_A);
  auto b = invertible_outside(parse_valuation("inf", r), E("x", r));
  EXPECT_EQ(b.vx.to_string(), "(-1)");
  EXPECT_EQ(b.vinv.to_string(), "(1)");
  try {
    invertible_outside(parse_valuation("x", r), E("1+x", r));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AlreadyInA);
  }
  EXPECT_THROW(invertible_outside(parse_valuation("x", parse_ring("Q[x][t1]")), E("x+1", parse_ring("Q[x][t1]"))), Error);
}

TEST(Convex, SegmentsOfOrderAtZero) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x", r);
  GroupDesc g{1};
  for (int k = 0; k <= 3; ++k) {
    Segment h = Segment::interval(GValue::finite(g, {k}));
    ConvexIdeal a = ideal_of_segment(h, v);
    // Brute force over monomials c*x^j (+ odd noise).
    for (int j = -3; j <= 6; ++j) {
      SuperElem m = E("x", r).pow(j) * E("(2 + x) + x*t1", r);
      EXPECT_EQ(a.member(m), j >= k + 1) << "k=" << k << " j=" << j;
    }
    EXPECT_TRUE(a.member(E("t1", r)));
    Segment back = segment_of_ideal(a);
    EXPECT_TRUE(same_on_box(back, h)) << back.to_string() << " vs " << h.to_string();
  }
  ConvexIdeal pv = ideal_from_predicate(v, [v](const SuperElem& x) { return in_pv(v, x); }, "p_v");
  EXPECT_EQ(segment_of_ideal(pv).to_string(), Segment::subgroup(g, {}).to_string());
  ConvexIdeal av = ideal_from_predicate(v, [v](const SuperElem& x) { return in_Av(v, x); }, "A_v");
  EXPECT_EQ(segment_of_ideal(av).kind, Segment::Kind::Empty);
  EXPECT_THROW(ideal_of_segment(Segment::empty(GroupDesc{0}), trivial_valuation(r)), Error);
}

TEST(Convex, ChainAndConvexity) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x", r);
  GroupDesc g{1};
  std::vector<ConvexIdeal> ideals{ideal_of_segment(Segment::empty(g), v)};
  for (int k = 0; k <= 3; ++k) ideals.push_back(ideal_of_segment(Segment::interval(GValue::finite(g, {k})), v));
  ideals.push_back(ideal_from_predicate(v, [v](const SuperElem& x) { return v.eval(x).is_infinite(); }, "supp"));
  auto sample = structured_sample(r, 150, 4);
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    AxiomOptions opt;
    opt.trials = 300;
    EXPECT_TRUE(is_v_convex(ideals[i], opt).ok()) << ideals[i].label;
    for (std::size_t j = i + 1; j < ideals.size(); ++j) {
      auto inc = ideal_included(ideals[j], ideals[i], sample);
      ASSERT_TRUE(inc.has_value());
      EXPECT_TRUE(*inc);
    }
  }
}

TEST(Convex, RankTwoSegments) {
  Valuation v = parse_valuation("lex(x,y)", parse_ring("Q(x,y)"));
  for (const auto& iso : isolated_subgroups(v.group())) {
    Segment back = segment_of_ideal(ideal_of_segment(iso, v), 3);
    EXPECT_TRUE(same_on_box(back, iso)) << iso.to_string();
  }
  Segment h = Segment::interval(GValue::finite(v.group(), {1, 2}));
  EXPECT_TRUE(same_on_box(segment_of_ideal(ideal_of_segment(h, v), 3), h));
}

TEST(Dominance, Examples) {
  Ring r = parse_ring("Q(x,y)[t1]");
  Valuation v = parse_valuation("lex(x,y)", r);
  Valuation w = parse_valuation("x", r);
  Dominance d = dominates(w, v);
  ASSERT_TRUE(d.yes) << d.reason;
  EXPECT_EQ(d.h->matrix, (std::vector<std::vector<std::int64_t>>{{1, 0}}));
  for (const char* s : {"x", "y", "x*y"}) EXPECT_EQ(d.h->apply(v.eval(E(s, r))), w.eval(E(s, r)));
  Dominance self = dominates(v, v);
  ASSERT_TRUE(self.yes);
  EXPECT_EQ(*self.h, OrderHom::identity(v.group()));
  EXPECT_FALSE(dominates(v, w).yes);
  Ring r1 = parse_ring("Q(x)[t1]");
  Dominance no = dominates(parse_valuation("x-1", r1), parse_valuation("x", r1));
  EXPECT_FALSE(no.yes);
  EXPECT_TRUE(no.counterexample.has_value());
}

TEST(Psi, Entries) {
  Ring r = parse_ring("Q(x,y)[t1]");
  Valuation v = parse_valuation("lex(x,y)", r);
  auto entries = psi_v(v);
  ASSERT_EQ(entries.size(), 2u);
  auto iso = isolated_subgroups(v.group());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    EXPECT_TRUE(same_on_box(hom_kernel(entries[i].h), iso[i]));
    EXPECT_TRUE(same_on_box(entries[i].subgroup, iso[i]));
    EXPECT_TRUE(dominates(entries[i].w, v).yes);
  }
  EXPECT_TRUE(dominates(entries[1].w, entries[0].w).yes);
  EXPECT_FALSE(dominates(entries[0].w, entries[1].w).yes);
  EXPECT_EQ(psi_v(parse_valuation("x", r)).size(), 1u);
  EXPECT_TRUE(psi_v(trivial_valuation(r)).empty());
}

TEST(Induced, LexOverXOrder) {
  Ring r = parse_ring("Q(x,y)[t1]");
  Valuation v = parse_valuation("lex(x,y)", r);
  Valuation w = psi_v(v)[1].w;
  InducedQuotient q = induced_on_quotient(w, v);
  EXPECT_EQ(q.eval(E("y", r)).to_string(), "(0,1)");
  EXPECT_EQ(q.eval(E("y^2", r)).to_string(), "(0,2)");
  EXPECT_EQ(q.eval(E("1/y", r)).to_string(), "(0,-1)");
  EXPECT_TRUE(q.eval(E("x/y^5", r)).is_infinite());
  Rng rng(17);
  int checked = 0;
  while (checked < 100) {
    SuperElem x = random_elem(rng, r, ElemShape{});
    if (!in_Av(w, x)) continue;
    ++checked;
    GValue got = q.eval(x);
    auto want = residue_y_order(x.body());
    if (x.body().is_zero() || !want) {
      EXPECT_TRUE(got.is_infinite()) << x.to_string();
    } else {
      EXPECT_EQ(got, GValue::finite(v.group(), {0, *want})) << x.to_string();
    }
  }
  AxiomOptions opt;
  opt.trials = 100;
  EXPECT_TRUE(verify_induced(q, opt).ok());
  InducedQuotient same = induced_on_quotient(v, v);
  EXPECT_TRUE(same.eval(E("y + x", r)).is_infinite());
  EXPECT_TRUE(same.eval(E("3 + x", r)).is_zero());
  EXPECT_THROW(induced_on_quotient(v, w), Error);
}
