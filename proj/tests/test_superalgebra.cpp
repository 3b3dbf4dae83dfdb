#include <gtest/gtest.h>

#include <random>

#include "sval/error.hpp"
#include "sval/parser.hpp"
#include "sval/superalgebra.hpp"

using namespace sval;

namespace {

Ring qx3() { return parse_ring("Q(x)[t1,t2,t3]"); }
SuperElem E(const std::string& s, const Ring& r) { return parse_expr(s, r); }

// Independent sign oracle: sort an index list by bubble sort and count swaps.
int bubble_sign(std::vector<int> idx) {
  int swaps = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        ++swaps;
      }
  for (std::size_t j = 0; j + 1 < idx.size(); ++j)
    if (idx[j] == idx[j + 1]) return 0;
  return swaps % 2 ? -1 : 1;
}

}  // namespace

TEST(OddSign, MatchesBubbleSortOracle) {
  for (std::uint32_t a = 0; a < 64; ++a)
    for (std::uint32_t b = 0; b < 64; ++b) {
      std::vector<int> idx;
      for (int i = 0; i < 6; ++i)
        if (a >> i & 1) idx.push_back(i);
      for (int i = 0; i < 6; ++i)
        if (b >> i & 1) idx.push_back(i);
      EXPECT_EQ(odd_merge_sign(a, b), bubble_sign(idx)) << a << " " << b;
    }
}

TEST(Mul, ThetaProductsAnticommute) {
  Ring r = qx3();
  EXPECT_EQ(E("t1*t2", r), -E("t2*t1", r));
  EXPECT_TRUE(E("t1*t1", r).is_zero());
  EXPECT_EQ(E("(x+t1)*(x-t1)", r), E("x^2", r));
}

TEST(Mul, RingMismatchThrows) {
  Ring a = qx3(), b = parse_ring("Q(x)[t1]");
  try {
    (void)(E("x", a) * E("x", b));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RingMismatch);
  }
}

TEST(HomogeneousParts, SplitsByParity) {
  Ring r = qx3();
  auto h = homogeneous_parts(E("x + t1*t2 + t3", r));
  EXPECT_EQ(h.even, E("x + t1*t2", r));
  EXPECT_EQ(h.odd, E("t3", r));
  auto z = homogeneous_parts(SuperElem(r));
  EXPECT_TRUE(z.even.is_zero() && z.odd.is_zero());
  auto o = homogeneous_parts(E("t1*t2*t3", r));
  EXPECT_TRUE(o.even.is_zero());
  EXPECT_EQ(o.odd, E("t1*t2*t3", r));
}

TEST(CanonicalIdeal, Membership) {
  Ring r = parse_ring("Q(x)[t1,t2]");
  SuperIdeal j = canonical_ideal(r);
  EXPECT_TRUE(ideal_member(E("t1*t2", r), j));
  EXPECT_FALSE(ideal_member(E("x", r), j));
  EXPECT_TRUE(canonical_ideal(parse_ring("Q(x)")).generators.empty());
}

TEST(Superreduce, Examples) {
  Ring r = qx3();
  EXPECT_EQ(superreduce(E("x + (x-1)*t1*t2", r)), superreduce(E("x", r)));
  EXPECT_TRUE(superreduce(E("t1", r)).is_zero());
  EXPECT_EQ(superreduce(E("(x+t1*t2)*(x-t1*t2)", r)), superreduce(E("x^2", r)));
}

TEST(IdealMember, GeneratedAndUnsupported) {
  Ring r = parse_ring("Q(x)[t1]");
  SuperIdeal i = generated_ideal(r, {E("t1", r)});
  EXPECT_FALSE(ideal_member(E("x", r), i));
  EXPECT_TRUE(ideal_member(E("x*t1", r), i));
  SuperIdeal g = generated_ideal(r, {E("x^2+1", r) * E("x", r)});
  EXPECT_THROW(ideal_member(E("x", r), g), Error);
  Ring z = parse_ring("Z[x,x^-1][t1,t2]");
  SuperIdeal pz = generated_ideal(z, {E("3", z), E("t1", z)});
  EXPECT_TRUE(ideal_member(E("3*x + t1", z), pz));
  EXPECT_FALSE(ideal_member(E("x + t1", z), pz));
  EXPECT_FALSE(ideal_member(E("x*t2", z), pz));
}

TEST(Localize, Examples) {
  Ring r = parse_ring("Q[x][t1,t2]");
  Ring k = localize(r, {PrimeDatum::Kind::CanonicalJ, {}});
  EXPECT_EQ(k->to_string(), "Q(x)[t1,t2]");
  Ring l = localize(r, {PrimeDatum::Kind::Polynomial, parse_poly("x", r)});
  EXPECT_EQ(l->to_string(), "Q[x]@(x)[t1,t2]");
  EXPECT_TRUE(E("1/(x+1)", l).in_ring());
  EXPECT_FALSE(E("1/x", l).in_ring());
  try {
    localize(r, {PrimeDatum::Kind::Polynomial, parse_poly("x^2-1", r)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPrime);
  }
}

TEST(RingMembership, Families) {
  Ring z = parse_ring("Z[x,x^-1][t1]");
  EXPECT_TRUE(E("3/x^2 + x", z).in_ring());
  EXPECT_FALSE(E("1/2", z).in_ring());
  EXPECT_FALSE(E("1/(x+1)", z).in_ring());
  Ring q = parse_ring("Q[x][t1]");
  EXPECT_TRUE(E("x^2/3 + t1", q).in_ring());
  EXPECT_FALSE(E("1/x", q).in_ring());
}

TEST(Inverse, NilpotentCorrection) {
  Ring r = qx3();
  SuperElem a = E("x + t1*t2 + x*t1*t3", r);
  EXPECT_EQ(a * a.inverse(), E("1", r));
  EXPECT_THROW(E("t1", r).inverse(), Error);
}

TEST(Integral, OddSquaresToZero) {
  Ring s = parse_ring("Q(x)[t1]");
  auto res = is_integral(E("t1", s), parse_ring("Q[x][t1]"), 4);
  ASSERT_TRUE(res.yes());
  EXPECT_EQ(res.degree, 2);
}

TEST(Integral, SquareRootOfX) {
  Ring small = parse_ring("Q[x][t1]");
  Ring big = parse_ring("Q(t)[t1]");
  RingEmbedding e{small, big, {E("t^2", big)}, {0}};
  auto res = is_integral(E("t", big), e, 4);
  ASSERT_TRUE(res.yes());
  EXPECT_EQ(res.degree, 2);
  EXPECT_EQ(res.coeffs[0], E("-x", small));
  EXPECT_TRUE(res.coeffs[1].is_zero());
  auto res2 = is_integral(E("1/t", big), e, 4);
  EXPECT_FALSE(res2.yes());
  auto res3 = is_integral(E("t^3 + 2*t + t1*t", big), e, 4);
  EXPECT_TRUE(res3.yes());
}

TEST(Integral, InverseOfXIsNot) {
  Ring s = parse_ring("Q(x)[t1]");
  EXPECT_FALSE(is_integral(E("1/x", s), parse_ring("Q[x][t1]"), 4).yes());
  auto r = is_integral(E("x^2 + t1*x", s), parse_ring("Q[x][t1]"), 4);
  EXPECT_TRUE(r.yes());
}

TEST(Integral, NilpotentEvenPart) {
  Ring s = parse_ring("Q(x)[t1,t2]");
  auto r = is_integral(E("x + t1*t2", s), parse_ring("Q[x][t1,t2]"), 4);
  ASSERT_TRUE(r.yes());
  EXPECT_EQ(r.degree, 2);
}
