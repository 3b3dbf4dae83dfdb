#include "sval/random.hpp"

#include <bit>

namespace sval {

Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

mpq_class random_coeff(Rng& rng, const RingDesc& r, const ElemShape& shape, bool nonzero) {
  while (true) {
    int n = uniform(rng, -shape.coeff_bound, shape.coeff_bound);
    mpq_class c(n);
    if (r.base == BaseRing::Q && shape.fractions && uniform(rng, 0, 3) == 0) c /= uniform(rng, 2, 4);
    c = r.field().reduce(c);
    if (!nonzero || c != 0) return c;
  }
}

MPoly poly_in(Rng& rng, const RingDesc& r, const ElemShape& shape, unsigned vars, int max_degree, bool nonzero) {
  while (true) {
    MPoly p(r.field(), r.nvars());
    int terms = uniform(rng, 1, shape.max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      for (int v = 0; v < r.nvars(); ++v)
        if (vars >> v & 1u) m.e[static_cast<std::size_t>(v)] = uniform(rng, 0, max_degree);
      while (m.degree() > max_degree) {
        int v = uniform(rng, 0, r.nvars() - 1);
        if (m.e[static_cast<std::size_t>(v)] > 0) --m.e[static_cast<std::size_t>(v)];
      }
      p.add_term(m, random_coeff(rng, r, shape, true));
    }
    if (!nonzero || !p.is_zero()) return p;
  }
}

unsigned all_vars(const RingDesc& r) { return (1u << r.nvars()) - 1u; }

}  // namespace

MPoly random_poly(Rng& rng, const RingDesc& r, const ElemShape& shape, bool nonzero) {
  return poly_in(rng, r, shape, all_vars(r), shape.max_degree, nonzero);
}

RatFunc random_even(Rng& rng, const RingDesc& r, const ElemShape& shape, bool nonzero) {
  MPoly num = random_poly(rng, r, shape, nonzero);
  MPoly den = MPoly::constant(r.field(), r.nvars(), 1);
  unsigned rational = 0;
  for (int v = 0; v < r.nvars(); ++v) {
    auto k = r.even_kinds[static_cast<std::size_t>(v)];
    if (k == VarKind::Rational) rational |= 1u << v;
    if (k == VarKind::Laurent && uniform(rng, 0, 1)) {
      Monomial m;
      m.e[static_cast<std::size_t>(v)] = uniform(rng, 1, shape.max_degree);
      den = den * MPoly::monomial(r.field(), r.nvars(), m, 1);
    }
  }
  if (rational && uniform(rng, 0, 1)) den = den * poly_in(rng, r, shape, rational, shape.max_den_degree, true);
  if (r.localized_at && uniform(rng, 0, 1)) {
    MPoly d = poly_in(rng, r, shape, all_vars(r), shape.max_den_degree, true);
    if (!d.try_div(*r.localized_at)) den = den * d;
  }
  return RatFunc(num, den);
}

SuperElem random_elem(Rng& rng, const Ring& r, const ElemShape& shape, Parity parity) {
  SuperElem e(r);
  const std::uint32_t masks = 1u << r->odd_count;
  int terms = uniform(rng, 1, shape.max_terms);
  for (int t = 0; t < terms; ++t) {
    std::uint32_t mask = static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(masks) - 1));
    if (parity == Parity::Even && std::popcount(mask) % 2) mask = 0;
    if (parity == Parity::Odd && std::popcount(mask) % 2 == 0) {
      if (r->odd_count == 0) return e;
      mask ^= 1u << uniform(rng, 0, r->odd_count - 1);
    }
    e += SuperElem::theta_product(r, mask, random_even(rng, *r, shape));
  }
  return e;
}

SuperElem random_nilpotent(Rng& rng, const Ring& r, const ElemShape& shape) {
  SuperElem e(r);
  if (r->odd_count == 0) return e;
  int terms = uniform(rng, 1, shape.max_terms);
  for (int t = 0; t < terms; ++t) {
    auto mask = static_cast<std::uint32_t>(uniform(rng, 1, (1 << r->odd_count) - 1));
    e += SuperElem::theta_product(r, mask, random_even(rng, *r, shape));
  }
  return e;
}

}  // namespace sval
