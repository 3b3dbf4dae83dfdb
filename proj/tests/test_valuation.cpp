#include <gtest/gtest.h>

#include "sval/error.hpp"
#include "sval/parser.hpp"
#include "sval/valspec.hpp"
#include "sval/valuation.hpp"

using namespace sval;

namespace {

SuperElem E(const std::string& s, const Ring& r) { return parse_expr(s, r); }
GValue G(const Valuation& v, std::initializer_list<std::int64_t> c) { return GValue::finite(v.group(), c); }

// Order of a univariate polynomial at a rational point via Taylor coefficients.
int taylor_order(const MPoly& p, const mpq_class& a) {
  std::vector<mpq_class> c(static_cast<std::size_t>(p.degree(0) + 1));
  for (const auto& [m, q] : p.terms()) c[static_cast<std::size_t>(m.e[0])] = q;
  for (int k = 0;; ++k) {
    mpq_class val = 0;
    for (std::size_t i = c.size(); i-- > 0;) val = val * a + c[i];
    if (val != 0) return k;
    for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<long>(i);
    c.pop_back();
  }
}

std::vector<int> brute_lex(const MPoly& p) {
  std::vector<int> best;
  for (const auto& [m, q] : p.terms()) {
    std::vector<int> e{static_cast<int>(m.e[0]), static_cast<int>(m.e[1])};
    if (best.empty() || e < best) best = e;
  }
  return best;
}

std::vector<Valuation> fixtures() {
  Ring r1 = parse_ring("Q(x)[t1,t2]"), r2 = parse_ring("Q(x,y)[t1,t2]");
  return {parse_valuation("x", r1), parse_valuation("x-1", r1), parse_valuation("x^2+1", r1), parse_valuation("inf", r1),
          parse_valuation("lex(x,y)", r2), parse_valuation("comp(x-1; y)", r2)};
}

}  // namespace

TEST(Eval, PlaceExample) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x-2", r);
  EXPECT_EQ(v.eval(E("(x-2)^3/(x-1) + (x-2)*t1", r)).to_string(), "(3)");
  EXPECT_TRUE(v.eval(E("t1", r)).is_infinite());
  EXPECT_EQ(v.eval(E("1/(x-2)^2", r)), G(v, {-2}));
}

TEST(Eval, PlaceMatchesTaylorOracle) {
  Ring r = parse_ring("Q(x)");
  Valuation v = parse_valuation("x-2", r);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    MPoly p = random_poly(rng, *r, ElemShape{});
    if (p.is_zero()) continue;
    int k = static_cast<int>(rng() % 3);
    MPoly f = p * (MPoly::variable(r->field(), 1, 0) - MPoly::constant(r->field(), 1, 2)).pow(static_cast<unsigned>(k));
    EXPECT_EQ(v.eval(SuperElem::even(r, RatFunc(f))), G(v, {taylor_order(f, 2)})) << f.to_string({"x"});
  }
}

TEST(Eval, LexExampleAndOracle) {
  Ring r = parse_ring("Q(x,y)[t1]");
  Valuation v = parse_valuation("lex(x,y)", r);
  EXPECT_EQ(v.eval(E("x^2*y + x^3", r)).to_string(), "(2,1)");
  EXPECT_TRUE(v.eval(E("x*t1", r)).is_infinite());
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    MPoly p = random_poly(rng, *r, ElemShape{});
    if (p.is_zero()) continue;
    auto e = brute_lex(p);
    EXPECT_EQ(v.eval(SuperElem::even(r, RatFunc(p))), G(v, {e[0], e[1]}));
  }
}

TEST(Eval, InfinityAndComposite) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("inf", r);
  EXPECT_EQ(v.eval(E("x^3/(x+1)", r)), G(v, {-2}));
  Ring r2 = parse_ring("Q(x,y)");
  Valuation c = parse_valuation("comp(x-1; y)", r2);
  EXPECT_EQ(c.eval(E("(x-1)^2*y^3*(x+y)", r2)).to_string(), "(2,3)");
  // Residue at x = 1 of (x-1+y)/(x-1) is y.
  EXPECT_EQ(c.eval(E("(x-1+y^2)/(x-1)", r2)).to_string(), "(-1,2)");
  Valuation ci = parse_valuation("comp(inf(x); y)", r2);
  EXPECT_EQ(ci.eval(E("x*y + 1", r2)).to_string(), "(-1,1)");
}

TEST(Eval, RingMismatch) {
  Valuation v = parse_valuation("x", parse_ring("Q(x)[t1]"));
  EXPECT_THROW(v.eval(E("x", parse_ring("Q(x)[t1,t2]"))), Error);
}

TEST(Support, SuperfieldIsJ) {
  Ring r = parse_ring("Q(x)[t1,t2]");
  for (const auto& v : {parse_valuation("x", r), trivial_valuation(r)}) {
    SuperIdeal s = support(v);
    EXPECT_TRUE(ideal_member(E("t1", r), s));
    EXPECT_TRUE(ideal_member(E("x*t1*t2 + t2", r), s));
    EXPECT_FALSE(ideal_member(E("1+x", r), s));
    EXPECT_FALSE(ideal_member(E("x + t1", r), s));
  }
}

TEST(Support, ModPLaurent) {
  Ring r = parse_ring("Z[x,x^-1][t1]");
  Valuation v = parse_valuation("modp:3:x", r);
  SuperIdeal s = support(v);
  EXPECT_TRUE(ideal_member(E("3*x^-2 + 6*x", r), s));
  EXPECT_TRUE(ideal_member(E("3 + t1", r), s));
  EXPECT_FALSE(ideal_member(E("x", r), s));
  EXPECT_EQ(v.eval(E("x^-2 + 3*x^-5", r)), G(v, {-2}));
  EXPECT_EQ(v.eval(E("1 + x", r)), G(v, {0}));
}

TEST(Thresholds, Examples) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x", r);
  EXPECT_FALSE(in_Av(v, E("1/x", r)));
  EXPECT_TRUE(in_pv(v, E("t1", r)));
  EXPECT_TRUE(in_Av(v, E("1+x", r)));
  EXPECT_FALSE(in_pv(v, E("1+x", r)));
}

TEST(Hat, PlaceReducesToClassical) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x", r);
  HatValuation h = induced_hat(v);
  EXPECT_EQ(h.vhat.ring()->odd_count, 0);
  for (const char* s : {"x^2/(x+1)", "1/x", "3+x", "x + x*t1"}) {
    SuperElem a = E(s, r);
    EXPECT_EQ(h.vhat.eval(SuperElem::even(h.vhat.ring(), h.reduce(a))), v.eval(a)) << s;
  }
  EXPECT_TRUE(induced_hat(trivial_valuation(r)).vhat.is_trivial());
}

TEST(Hat, LexAxioms) {
  Valuation v = parse_valuation("lex(x,y)", parse_ring("Q(x,y)[t1]"));
  HatValuation h = induced_hat(v);
  EXPECT_EQ(h.vhat.group().rank, 2);
  AxiomOptions opt;
  opt.trials = 1000;
  EXPECT_TRUE(verify_axioms(h.vhat, opt).ok());
}

TEST(Hat, Quotient) {
  Ring r = parse_ring("Q[x][t1]");
  Valuation v = parse_valuation("x", r);
  auto q = hat_quotient(v, E("x^3", r), E("x", r));
  // x has no inverse in Q[x]; the partner must still give v(y y') = 0.
  if (q) {
    EXPECT_EQ(v.eval(E("x", r) * q->partner), GValue::zero(v.group()));
  }
  auto q2 = hat_quotient(v, E("x^3", r), E("x+1", r));
  ASSERT_TRUE(q2.has_value());
  EXPECT_EQ(q2->value, G(v, {3}));
}

TEST(Equivalent, ScaledAndDistinct) {
  Ring r = parse_ring("Q(x)[t1]");
  Valuation v = parse_valuation("x", r);
  Valuation v2 = v.then(OrderHom::scaling(v.group(), 2), "2v");
  EXPECT_EQ(v2.eval(E("x^3", r)), G(v2, {6}));
  auto e = equivalent(v, v2);
  ASSERT_TRUE(e.equivalent) << e.reason;
  ASSERT_TRUE(e.h.has_value());
  EXPECT_EQ(e.h->matrix, (std::vector<std::vector<std::int64_t>>{{2}}));
  EXPECT_FALSE(equivalent(v, parse_valuation("x-1", r)).equivalent);
  EXPECT_TRUE(equivalent(v, localize_valuation(v)).equivalent);
  EXPECT_FALSE(equivalent(v, trivial_valuation(r)).equivalent);
}

TEST(Equivalent, LexVersusComposite) {
  Ring r = parse_ring("Q(x,y)");
  EXPECT_TRUE(equivalent(parse_valuation("lex(x,y)", r), parse_valuation("comp(x; y)", r)).equivalent);
  EXPECT_FALSE(equivalent(parse_valuation("lex(x,y)", r), parse_valuation("lex(y,x)", r)).equivalent);
}

TEST(Local, Families) {
  Ring f = parse_ring("Q(x)[t1]");
  EXPECT_TRUE(is_local(parse_valuation("x", f)).local);
  EXPECT_TRUE(is_local(trivial_valuation(f)).local);
  Ring p = parse_ring("Q[x][t1]");
  auto lp = is_local(parse_valuation("x", p));
  EXPECT_FALSE(lp.local);
  ASSERT_TRUE(lp.witness.has_value());
  EXPECT_FALSE(even_is_unit(*p, lp.witness->body()));
  EXPECT_TRUE(is_local(parse_valuation("x", parse_ring("Q[x]@(x)[t1]"))).local);
  auto l54 = is_local(parse_valuation("modp:3:x", parse_ring("Z[x,x^-1][t1]")));
  EXPECT_FALSE(l54.local);
}

TEST(Localize, PolynomialRing) {
  Ring p = parse_ring("Q[x][t1]");
  Valuation v = parse_valuation("x", p);
  Valuation lv = localize_valuation(v);
  EXPECT_EQ(lv.ring()->to_string(), "Q[x]@(x)[t1]");
  EXPECT_TRUE(is_local(lv).local);
  EXPECT_TRUE(E("1/(x+1)", lv.ring()).in_ring());
  EXPECT_EQ(lv.eval(E("x^2/(x+1)", lv.ring())), G(lv, {2}));
  EXPECT_TRUE(equivalent(lv, lv).equivalent);
}

TEST(Axioms, FixturesSerialAndParallelAgree) {
  for (const auto& v : fixtures()) {
    AxiomOptions opt;
    opt.trials = 400;
    opt.seed = 3;
    opt.parallel = false;
    SampleReport a = verify_axioms(v, opt);
    opt.parallel = true;
    SampleReport b = verify_axioms(v, opt);
    EXPECT_TRUE(a.ok()) << v.label() << ": " << a.summary();
    EXPECT_EQ(a.failures.size(), b.failures.size());
    EXPECT_TRUE(verify_nilpotents_infinite(v, opt).ok()) << v.label();
    EXPECT_TRUE(witnesses_generate(v)) << v.label();
    for (const auto& w : v.witnesses()) EXPECT_EQ(v.eval(w.elem), w.value);
  }
}

TEST(Axioms, ModPAndPadic) {
  AxiomOptions opt;
  opt.trials = 300;
  Ring z = parse_ring("Z[x,x^-1][t1]");
  EXPECT_TRUE(verify_axioms(parse_valuation("modp:3:x", z), opt).ok());
  EXPECT_TRUE(verify_axioms(parse_valuation("modp:5:inf", z), opt).ok());
  EXPECT_TRUE(verify_axioms(parse_valuation("padic:2", parse_ring("Q(x)[t1]")), opt).ok());
}

TEST(ValSpec, Errors) {
  Ring r = parse_ring("Q(x,y)[t1]");
  EXPECT_THROW(parse_valuation("inf", r), Error);
  EXPECT_THROW(parse_valuation("x^2-1", parse_ring("Q(x)")), Error);
  EXPECT_THROW(parse_valuation("lex(z)", r), Error);
  EXPECT_THROW(parse_valuation("comp(x)", r), Error);
  EXPECT_NO_THROW(parse_valuation("comp(inf(x); lex(y))", r));
}
