#include <gtest/gtest.h>

#include "sval/error.hpp"
#include "sval/pairs.hpp"
#include "sval/parser.hpp"
#include "sval/random.hpp"
#include "sval/zariski.hpp"

using namespace sval;

namespace {

SuperElem E(const std::string& s, const Ring& r) { return parse_expr(s, r); }

bool is_rational_square(const mpq_class& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num().get_mpz_t()) && mpz_perfect_square_p(q.get_den().get_mpz_t());
}

// Height-3 rationals a/b, |a| <= 3, 1 <= b <= 3.
std::vector<mpq_class> heights() {
  std::vector<mpq_class> cs;
  for (int b = 1; b <= 3; ++b)
    for (int a = -3; a <= 3; ++a) {
      mpq_class q(a, b);
      q.canonicalize();
      if (std::find(cs.begin(), cs.end(), q) == cs.end()) cs.push_back(q);
    }
  return cs;
}

ZRSpace space(const std::string& L, const std::string& K, int bound) {
  ZRSpace s = make_space(parse_ring(L), parse_ring(K));
  enumerate_points(s, bound);
  return s;
}

std::size_t index_of(const ZRSpace& s, const std::string& label) {
  for (std::size_t i = 0; i < s.points.size(); ++i)
    if (s.points[i].to_string(s.L->even_names) == label) return i;
  throw std::runtime_error("no point " + label);
}

}  // namespace

TEST(ZR, EnumerationCounts) {
  auto hs = heights();
  ASSERT_EQ(hs.size(), 15u);
  ZRSpace s1 = space("Q(x)[t1]", "Q", 1);
  EXPECT_EQ(s1.points.size(), 2 + hs.size());
  EXPECT_EQ(s1.points[0].kind, ZRPoint::Kind::Trivial);
  EXPECT_TRUE(s1.points[1].is_infinity());
  std::size_t quadratics = 0;
  for (const auto& b : hs)
    for (const auto& c : hs)
      if (!is_rational_square(b * b - 4 * c)) ++quadratics;
  ZRSpace s2 = space("Q(x)[t1]", "Q", 2);
  EXPECT_EQ(s2.points.size(), 2 + hs.size() + quadratics);
  EXPECT_NO_THROW(index_of(s2, "x^2 + 1"));
  // Over F_3: 3 linear and (9 - 3) / 2 irreducible quadratics.
  EXPECT_EQ(space("Fp3(x)[t1]", "Fp3", 2).points.size(), 8u);
  EXPECT_EQ(s2.points[index_of(s2, "x^2 + 1")].to_json(s2.L->even_names), R"({"kind":"finite","poly":"x^2 + 1"})");
}

TEST(ZR, SpaceErrors) {
  try {
    make_space(parse_ring("Q(x)[t1]"), parse_ring("Q(x)[t1]"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidArgument);
  }
  for (const char* bad : {"Q(x,y)[t1]", "Z[x][t1]", "Q[x][t1]"}) {
    try {
      make_space(parse_ring(bad), parse_ring("Q"));
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::UnsupportedField) << bad;
    }
  }
  ZRSpace over_poly = space("Q(x)[t1]", "Q[x]", 1);
  for (const auto& p : over_poly.points) EXPECT_FALSE(p.is_infinity());
  EXPECT_EQ(over_poly.points.size(), 1 + heights().size());
}

TEST(ZR, BasicOpens) {
  ZRSpace s = space("Q(x)[t1,t2]", "Q", 2);
  const Ring& L = s.L;
  BasicOpen ux = basic_open(s, {E("x", L)});
  BasicOpen uinv = basic_open(s, {E("1/x", L)});
  BasicOpen whole = basic_open(s, {});
  std::size_t at0 = index_of(s, "x");
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const ZRPoint& p = s.points[i];
    EXPECT_EQ(member(ux, i), !p.is_infinity());
    EXPECT_EQ(member(uinv, i), i != at0);
    EXPECT_TRUE(member(whole, i));
  }
  BasicOpen odd = basic_open(s, {E("t1", L), E("x", L)});
  EXPECT_EQ(odd.generators.size(), 1u);
  EXPECT_EQ(odd.notices.size(), 1u);
}

TEST(ZR, BasisLaw) {
  ZRSpace s = space("Q(x)[t1,t2]", "Q", 2);
  ElemShape shape;
  shape.max_degree = 2;
  shape.coeff_bound = 3;
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng = sample_rng(5, k);
    SuperElem a = random_elem(rng, s.L, shape, Parity::Even), b = random_elem(rng, s.L, shape, Parity::Even);
    BasicOpen ua = basic_open(s, {a}), ub = basic_open(s, {b}), uab = basic_open(s, {a, b});
    BasicOpen meet = intersect(ua, ub);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      EXPECT_EQ(member(ua, i) && member(ub, i), member(uab, i));
      EXPECT_EQ(member(meet, i), member(uab, i));
    }
  }
}

TEST(ZR, EvenHomeomorphism) {
  ZRSpace s = space("Q(x)[t1,t2]", "Q", 2);
  HomeomorphismReport h = even_homeomorphism(s, 20, 3);
  EXPECT_TRUE(h.bijective) << h.detail;
  EXPECT_TRUE(h.opens_commute) << h.detail;
  ZRSpace bar = space("Q(x)", "Q", 2);
  std::size_t i = index_of(s, "x - 2");
  EXPECT_EQ(bar.points[h.psi[i]].to_string(bar.L->even_names), "x - 2");
  EXPECT_EQ(bar.points[h.psi[0]].kind, ZRPoint::Kind::Trivial);
  // Image of U(x) is U(x̄).
  BasicOpen u = basic_open(s, {E("x + t1*t2", s.L)}), ubar = basic_open(bar, {E("x", bar.L)});
  for (std::size_t j = 0; j < s.points.size(); ++j) EXPECT_EQ(member(u, j), member(ubar, h.psi[j]));
}

TEST(ZR, Sections) {
  ZRSpace s = space("Q(x)[t1,t2]", "Q", 2);
  const Ring& L = s.L;
  const ZRPoint at0 = ZRPoint::at(PlaceDatum::finite(parse_poly("x", L)));
  const ZRPoint inf = ZRPoint::at(PlaceDatum::infinity(0));
  SheafSections a = sections(s, {at0}, 3);
  std::vector<SuperElem> expect_a{E("1", L), E("1/x", L), E("1/x^2", L), E("1/x^3", L)};
  EXPECT_EQ(a.even_basis, expect_a);
  SheafSections b = sections(s, {inf}, 3);
  std::vector<SuperElem> expect_b{E("1", L), E("x", L), E("x^2", L), E("x^3", L)};
  EXPECT_EQ(b.even_basis, expect_b);
  SheafSections g = sections(s, {}, 3);
  EXPECT_EQ(g.even_basis, std::vector<SuperElem>{E("1", L)});
  EXPECT_TRUE(g.odd_part);
  EXPECT_TRUE(is_section(s, {}, E("t1 + 3*t1*t2/(x^2+1)", L)));
  EXPECT_FALSE(is_section(s, {}, E("x", L)));
  EXPECT_TRUE(is_section(s, {inf}, E("x^5 - 2*x + 7", L)));
  EXPECT_FALSE(is_section(s, {inf}, E("1/(x-1)", L)));
  // Restriction: E ⊆ E' means every section over X \ E is one over X \ E'.
  const ZRPoint at1 = ZRPoint::at(PlaceDatum::finite(parse_poly("x-1", L)));
  for (const auto& f : sections(s, {at0}, 2).even_basis) EXPECT_TRUE(is_section(s, {at0, at1, inf}, f));
  // Closure under sums and products.
  SheafSections c = sections(s, {at0, inf}, 2);
  for (const auto& f : c.even_basis)
    for (const auto& h : c.even_basis) {
      EXPECT_TRUE(is_section(s, {at0, inf}, f + h));
      EXPECT_TRUE(is_section(s, {at0, inf}, f * h));
    }
}

TEST(ZR, SectionsMatchPoleOracle) {
  ZRSpace s = space("Q(x)[t1]", "Q", 2);
  const Ring& L = s.L;
  std::vector<MPoly> finite;
  for (const auto& p : s.points)
    if (p.kind == ZRPoint::Kind::Place && !p.is_infinity()) finite.push_back(p.place.poly);
  for (std::uint64_t k = 0; k < 40; ++k) {
    Rng rng = sample_rng(8, k);
    std::vector<ZRPoint> ex;
    if (rng() % 2) ex.push_back(ZRPoint::at(PlaceDatum::infinity(0)));
    ex.push_back(ZRPoint::at(PlaceDatum::finite(finite[rng() % finite.size()])));
    MPoly den = MPoly::constant(L->field(), 1, 1);
    for (int j = 0; j < 2; ++j) den = den * finite[rng() % finite.size()];
    MPoly num = MPoly::univariate(L->field(), 1, 0, {mpq_class(1 + rng() % 3), mpq_class(rng() % 2), mpq_class(rng() % 2)});
    SuperElem f = SuperElem::even(L, RatFunc(num, den));
    bool all = true;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (s.points[i].kind == ZRPoint::Kind::Trivial) continue;
      if (std::find(ex.begin(), ex.end(), s.points[i]) != ex.end()) continue;
      all = all && in_Av(s.valuations[i], f);
    }
    EXPECT_EQ(is_section(s, ex, f), all) << f.to_string();
  }
}

TEST(ZR, EmptyOpen) {
  ZRSpace s = space("Fp2(x)[t1]", "Fp2", 1);
  std::vector<ZRPoint> all;
  for (const auto& p : s.points)
    if (p.kind == ZRPoint::Kind::Place) all.push_back(p);
  try {
    sections(s, all, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyOpen);
  }
}

TEST(ZR, SupercurveStalks) {
  ZRSpace s = space("Q(x)[t1,t2]", "Q", 2);
  SuperCurve c = supercurve(s);
  EXPECT_EQ(c.points.size(), s.points.size() - 1);
  EXPECT_TRUE(nonlocal_stalks(c, 20, 2).empty());
  // Stalk at x = 0: A_v = Q[x]_(x) + J_L, read off from denominators.
  std::size_t at0 = index_of(s, "x");
  const Valuation& v = s.valuations[at0];
  for (const auto& x : structured_sample(s.L, 60, 4)) {
    RatFunc b = x.body();
    bool local_ring = b.is_zero() || !b.den().eval_var(0, 0).is_zero();
    EXPECT_EQ(in_Av(v, x), local_ring) << x.to_string();
  }
  SuperElem odd = E("t1*t2", s.L);
  for (std::size_t i : c.points) EXPECT_TRUE(s.valuations[i].eval(odd).is_infinite());
  IdentificationReport id = check_function_field(c, 40, 6);
  EXPECT_TRUE(id.ok) << id.detail;
  FunctionViews fv = function_views(E("x + t1*t2", s.L));
  EXPECT_EQ(fv.reduced, superreduce(E("x", s.L)));
  EXPECT_FALSE(fv.element == E("x", s.L));
}

TEST(ZR, SuperreductionOfSections) {
  ZRSpace s = space("Q(x)[t1,t2]", "Q", 2), bar = space("Q(x)", "Q", 2);
  const ZRPoint inf = ZRPoint::at(PlaceDatum::infinity(0));
  const ZRPoint at1 = ZRPoint::at(PlaceDatum::finite(parse_poly("x-1", s.L)));
  SheafSections a = sections(s, {inf, at1}, 2), b = sections(bar, {inf, at1}, 2);
  ASSERT_EQ(a.even_basis.size(), b.even_basis.size());
  for (std::size_t i = 0; i < a.even_basis.size(); ++i) EXPECT_EQ(superreduce(a.even_basis[i]), b.even_basis[i].body());
}
