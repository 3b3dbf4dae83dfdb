#include "sval/superalgebra.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "sval/error.hpp"
#include "sval/upoly.hpp"

namespace sval {

// ---------------------------------------------------------------------------
// RingDesc

Field RingDesc::field() const { return base == BaseRing::Fp ? Field::prime(p) : Field::rationals(); }

int RingDesc::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < even_names.size(); ++i)
    if (even_names[i] == name) return static_cast<int>(i);
  return -1;
}

bool RingDesc::is_superfield() const {
  if (base == BaseRing::Z) return false;
  return std::all_of(even_kinds.begin(), even_kinds.end(), [](VarKind k) { return k == VarKind::Rational; });
}

std::string RingDesc::to_string() const {
  std::string s = base == BaseRing::Q ? "Q" : base == BaseRing::Z ? "Z" : "Fp" + std::to_string(p);
  std::size_t i = 0;
  while (i < even_names.size()) {
    VarKind k = even_kinds[i];
    std::vector<std::string> items;
    while (i < even_names.size() && even_kinds[i] == k) {
      items.push_back(even_names[i]);
      if (k == VarKind::Laurent) items.push_back(even_names[i] + "^-1");
      ++i;
    }
    std::string body;
    for (std::size_t j = 0; j < items.size(); ++j) body += (j ? "," : "") + items[j];
    s += k == VarKind::Rational ? "(" + body + ")" : "[" + body + "]";
  }
  if (localized_at) s += "@(" + localized_at->to_string(even_names) + ")";
  if (odd_count > 0) {
    s += "[";
    for (int j = 0; j < odd_count; ++j) s += (j ? "," : "") + odd_name(j);
    s += "]";
  }
  return s;
}

void RingDesc::validate() const {
  if (nvars() > kMaxEvenVars) throw Error(Errc::Unsupported, "at most " + std::to_string(kMaxEvenVars) + " even variables");
  if (even_kinds.size() != even_names.size()) throw Error(Errc::InvalidArgument, "variable kinds do not match names");
  if (odd_count < 0 || odd_count > kMaxOddVars) throw Error(Errc::Unsupported, "at most " + std::to_string(kMaxOddVars) + " odd variables");
  if (base == BaseRing::Fp && !is_prime_number(p)) throw Error(Errc::InvalidArgument, "Fp needs a prime, got " + std::to_string(p));
  static const std::regex odd_re("(t|θ)[0-9]+");
  for (std::size_t i = 0; i < even_names.size(); ++i) {
    if (std::regex_match(even_names[i], odd_re)) throw Error(Errc::InvalidArgument, "even variable named like an odd one: " + even_names[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (even_names[i] == even_names[j]) throw Error(Errc::InvalidArgument, "duplicate variable " + even_names[i]);
  }
  if (base == BaseRing::Z) {
    for (auto k : even_kinds)
      if (k == VarKind::Rational) throw Error(Errc::Unsupported, "rational variables over Z");
    if (localized_at) throw Error(Errc::Unsupported, "localization over Z");
  }
}

bool operator==(const RingDesc& a, const RingDesc& b) {
  return a.base == b.base && a.p == b.p && a.even_names == b.even_names && a.even_kinds == b.even_kinds &&
         a.odd_count == b.odd_count && a.localized_at.has_value() == b.localized_at.has_value() &&
         (!a.localized_at || *a.localized_at == *b.localized_at);
}

Ring make_ring(RingDesc d) {
  d.validate();
  return std::make_shared<const RingDesc>(std::move(d));
}

Ring fraction_ring(const Ring& r) {
  RingDesc d = *r;
  if (d.base == BaseRing::Z) d.base = BaseRing::Q;
  for (auto& k : d.even_kinds) k = VarKind::Rational;
  d.localized_at.reset();
  return make_ring(d);
}

Ring reduced_ring(const Ring& r) {
  RingDesc d = *r;
  d.odd_count = 0;
  return make_ring(d);
}

bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

namespace {

void check_same(const Ring& a, const Ring& b) {
  if (!same_ring(a, b)) throw Error(Errc::RingMismatch, (a ? a->to_string() : "?") + " vs " + (b ? b->to_string() : "?"));
}

RatFunc zero_of(const RingDesc& r) { return RatFunc(MPoly(r.field(), r.nvars())); }

}  // namespace

// ---------------------------------------------------------------------------
// Odd index sets

bool OddOrder::operator()(std::uint32_t a, std::uint32_t b) const noexcept {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  while (a && b) {
    int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

int odd_merge_sign(std::uint32_t a, std::uint32_t b) noexcept {
  if (a & b) return 0;
  int swaps = 0;
  for (std::uint32_t rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return swaps % 2 ? -1 : 1;
}

// ---------------------------------------------------------------------------
// SuperElem

SuperElem SuperElem::constant(Ring r, const mpq_class& c) {
  RatFunc f = RatFunc::constant(r->field(), r->nvars(), c);
  return even(std::move(r), f);
}

SuperElem SuperElem::even(Ring r, const RatFunc& f) {
  SuperElem e(std::move(r));
  e.add_term(0, f);
  return e;
}

SuperElem SuperElem::variable(Ring r, int var) {
  if (var < 0 || var >= r->nvars()) throw Error(Errc::UnknownVariable, "even variable index " + std::to_string(var));
  RatFunc f = RatFunc::variable(r->field(), r->nvars(), var);
  return even(std::move(r), f);
}

SuperElem SuperElem::theta(Ring r, int i) {
  if (i < 0 || i >= r->odd_count) throw Error(Errc::UnknownVariable, "odd variable index " + std::to_string(i));
  RatFunc one = RatFunc::constant(r->field(), r->nvars(), 1);
  return theta_product(std::move(r), 1u << i, one);
}

SuperElem SuperElem::theta_product(Ring r, std::uint32_t mask, const RatFunc& coeff) {
  if (mask >> r->odd_count) throw Error(Errc::UnknownVariable, "odd index beyond the ring");
  SuperElem e(std::move(r));
  e.add_term(mask, coeff);
  return e;
}

void SuperElem::add_term(std::uint32_t mask, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    terms_.emplace(mask, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

RatFunc SuperElem::coeff(std::uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? zero_coeff() : it->second;
}

RatFunc SuperElem::zero_coeff() const { return zero_of(*ring_); }

bool SuperElem::is_even() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return std::popcount(t.first) % 2 == 0; });
}

bool SuperElem::is_odd() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return std::popcount(t.first) % 2 == 1; });
}

SuperElem SuperElem::nilpotent_part() const {
  SuperElem r = *this;
  r.terms_.erase(0);
  return r;
}

bool even_in_ring(const RingDesc& r, const RatFunc& f) {
  if (f.is_zero()) return true;
  if (r.base == BaseRing::Z) {
    for (const auto& [m, c] : f.num().terms())
      if (c.get_den() != 1) return false;
  }
  MPoly d = f.den();
  unsigned restricted = 0;
  for (int i = 0; i < r.nvars(); ++i) {
    auto k = r.even_kinds[static_cast<std::size_t>(i)];
    if (k == VarKind::Laurent) {
      int e = d.min_degree(i);
      if (e > 0) {
        Monomial m;
        m.e[static_cast<std::size_t>(i)] = e;
        d = d.exact_div(MPoly::monomial(d.field(), d.nvars(), m, 1));
      }
    }
    if (k != VarKind::Rational) restricted |= 1u << i;
  }
  if ((d.var_mask() & restricted) == 0) return true;
  if (r.localized_at) return !d.try_div(*r.localized_at).has_value();
  return false;
}

bool even_is_unit(const RingDesc& r, const RatFunc& f) {
  if (f.is_zero()) return false;
  return even_in_ring(r, f) && even_in_ring(r, f.inv());
}

bool SuperElem::in_ring() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return even_in_ring(*ring_, t.second); });
}

SuperElem SuperElem::inverse() const {
  RatFunc b = body();
  if (b.is_zero()) throw Error(Errc::NotInvertible, to_string() + " has zero body");
  RatFunc u = b.inv();
  SuperElem step = nilpotent_part().scaled(-u);
  SuperElem acc = constant(ring_, 1);
  SuperElem power = acc;
  while (true) {
    power = power * step;
    if (power.is_zero()) break;
    acc += power;
  }
  return acc.scaled(u);
}

SuperElem SuperElem::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  SuperElem result = constant(ring_, 1), base = *this;
  auto e = static_cast<unsigned>(n);
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

SuperElem SuperElem::scaled(const RatFunc& c) const {
  SuperElem r(ring_);
  for (const auto& [m, a] : terms_) r.add_term(m, a * c);
  return r;
}

std::string SuperElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  const auto& names = ring_->even_names;
  bool first = true;
  for (const auto& [mask, c] : terms_) {
    if (mask == 0) {
      os << c.to_string(names);
      first = false;
      continue;
    }
    bool neg = c.num().leading_coeff() < 0;
    RatFunc a = neg ? -c : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (!a.is_one()) {
      std::string s = a.to_string(names);
      bool wrap = a.is_polynomial() && a.num().terms().size() > 1;
      os << (wrap ? "(" + s + ")" : s) << "*";
    }
    bool first_odd = true;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      os << (first_odd ? "" : "*") << ring_->odd_name(std::countr_zero(rest));
      first_odd = false;
    }
  }
  return os.str();
}

SuperElem SuperElem::operator-() const {
  SuperElem r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

SuperElem operator+(const SuperElem& a, const SuperElem& b) {
  check_same(a.ring_, b.ring_);
  SuperElem r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

SuperElem operator-(const SuperElem& a, const SuperElem& b) { return a + (-b); }

bool operator==(const SuperElem& a, const SuperElem& b) { return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_; }

SuperElem mul(const SuperElem& a, const SuperElem& b) {
  check_same(a.ring_, b.ring_);
  SuperElem r(a.ring_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      int s = odd_merge_sign(ma, mb);
      if (s == 0) continue;
      RatFunc c = ca * cb;
      r.add_term(ma | mb, s > 0 ? c : -c);
    }
  return r;
}

HomogeneousParts homogeneous_parts(const SuperElem& a) {
  HomogeneousParts h{SuperElem(a.ring()), SuperElem(a.ring())};
  for (const auto& [m, c] : a.terms()) {
    auto& part = std::popcount(m) % 2 ? h.odd : h.even;
    part += SuperElem::theta_product(a.ring(), m, c);
  }
  return h;
}

RatFunc superreduce(const SuperElem& a) { return a.body(); }

RatFunc recast(const RatFunc& f, const RingDesc& target) {
  if (f.nvars() > target.nvars()) throw Error(Errc::RingMismatch, "target ring has fewer even variables");
  MPoly num(target.field(), target.nvars()), den(target.field(), target.nvars());
  for (const auto& [m, c] : f.num().terms()) num.add_term(m, target.field().reduce(c));
  for (const auto& [m, c] : f.den().terms()) den.add_term(m, target.field().reduce(c));
  return RatFunc(num, den);
}

SuperElem recast(const SuperElem& a, const Ring& target) {
  if (same_ring(a.ring(), target)) return a;
  SuperElem out(target);
  for (const auto& [mask, c] : a.terms()) {
    if (mask >> target->odd_count) throw Error(Errc::RingMismatch, "target ring has fewer odd variables");
    out += SuperElem::theta_product(target, mask, recast(c, *target));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ideals

SuperIdeal canonical_ideal(const Ring& r) {
  SuperIdeal i;
  i.ring = r;
  i.tag = SuperIdeal::Tag::CanonicalJ;
  i.label = "J";
  for (int k = 0; k < r->odd_count; ++k) i.generators.push_back(SuperElem::theta(r, k));
  i.predicate = [](const SuperElem& a) { return superreduce(a).is_zero(); };
  return i;
}

SuperIdeal generated_ideal(const Ring& r, std::vector<SuperElem> gens) {
  SuperIdeal i;
  i.ring = r;
  for (const auto& g : gens) {
    check_same(r, g.ring());
    if (!g.is_homogeneous()) throw Error(Errc::InvalidArgument, "ideal generator " + g.to_string() + " is not homogeneous");
  }
  i.generators = std::move(gens);
  std::string label = "(";
  for (std::size_t k = 0; k < i.generators.size(); ++k) label += (k ? ", " : "") + i.generators[k].to_string();
  i.label = label + ")";
  return i;
}

namespace {

bool generic_member(const SuperElem& a, const SuperIdeal& ideal) {
  const RingDesc& r = *ideal.ring;
  std::vector<std::uint32_t> theta_gens;
  std::optional<mpz_class> constant_gcd;
  for (const auto& g : ideal.generators) {
    if (g.is_zero()) continue;
    if (g.terms().size() != 1) throw Error(Errc::UnsupportedIdeal, "membership in " + ideal.label + " is undecided");
    const auto& [mask, c] = *g.terms().begin();
    if (mask != 0 && even_is_unit(r, c)) {
      theta_gens.push_back(mask);
    } else if (mask == 0 && c.is_constant()) {
      mpq_class v = c.constant_value();
      if (r.base != BaseRing::Z || v.get_den() != 1) return true;  // a unit generator
      mpz_class n = abs(v.get_num());
      constant_gcd = constant_gcd ? mpz_class(gcd(*constant_gcd, n)) : n;
    } else {
      throw Error(Errc::UnsupportedIdeal, "membership in " + ideal.label + " is undecided");
    }
  }
  if (constant_gcd && *constant_gcd == 1) return true;
  for (const auto& [mask, c] : a.terms()) {
    bool covered = std::any_of(theta_gens.begin(), theta_gens.end(), [&](std::uint32_t g) { return (mask & g) == g; });
    if (covered) continue;
    if (!constant_gcd) return false;
    RatFunc q = c * RatFunc::constant(r.field(), r.nvars(), mpq_class(1, 1) / mpq_class(*constant_gcd));
    if (!even_in_ring(r, q)) return false;
  }
  return true;
}

}  // namespace

bool ideal_member(const SuperElem& a, const SuperIdeal& i) {
  check_same(a.ring(), i.ring);
  if (i.predicate) return i.predicate(a);
  if (i.tag != SuperIdeal::Tag::Generic) throw Error(Errc::UnsupportedIdeal, "ideal " + i.label + " has no membership rule");
  return generic_member(a, i);
}

// ---------------------------------------------------------------------------
// Localization

Ring localize(const Ring& r, const PrimeDatum& at) {
  switch (at.kind) {
    case PrimeDatum::Kind::CanonicalJ:
    case PrimeDatum::Kind::NonZeroDivisors:
      return fraction_ring(r);
    case PrimeDatum::Kind::Polynomial: {
      if (r->localized_at) throw Error(Errc::Unsupported, "ring is already localized");
      unsigned mask = at.poly.var_mask();
      if (at.poly.is_constant() || std::popcount(mask) != 1) throw Error(Errc::NotPrime, "expected a univariate polynomial");
      int var = std::countr_zero(mask);
      if (r->even_kinds.at(static_cast<std::size_t>(var)) != VarKind::Poly)
        throw Error(Errc::NotPrime, "localization needs a polynomial variable");
      MPoly p = at.poly.monic();
      if (!is_irreducible(p, var)) throw Error(Errc::NotPrime, p.to_string(r->even_names) + " is reducible");
      RingDesc d = *r;
      d.localized_at = p;
      return make_ring(d);
    }
  }
  throw Error(Errc::NotPrime, "unsupported prime datum");
}

// ---------------------------------------------------------------------------
// Embeddings

RingEmbedding RingEmbedding::identity(const Ring& r) {
  RingEmbedding e{r, r, {}, {}};
  for (int i = 0; i < r->nvars(); ++i) e.even_images.push_back(SuperElem::variable(r, i));
  for (int i = 0; i < r->odd_count; ++i) e.odd_images.push_back(i);
  return e;
}

SuperElem eval_poly(const MPoly& p, const std::vector<SuperElem>& at, const Ring& target) {
  SuperElem acc(target);
  std::vector<std::vector<SuperElem>> powers(at.size());
  auto power = [&](std::size_t var, int k) -> const SuperElem& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(SuperElem::constant(target, 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * at[var]);
    return cache[static_cast<std::size_t>(k)];
  };
  for (const auto& [m, c] : p.terms()) {
    SuperElem t = SuperElem::constant(target, c);
    for (std::size_t v = 0; v < at.size(); ++v)
      if (m.e[v] > 0) t = t * power(v, m.e[v]);
    acc += t;
  }
  return acc;
}

SuperElem RingEmbedding::apply(const SuperElem& a) const {
  check_same(a.ring(), small);
  SuperElem out(big);
  for (const auto& [mask, c] : a.terms()) {
    SuperElem coeff = eval_poly(c.num(), even_images, big) * eval_poly(c.den(), even_images, big).inverse();
    SuperElem odd = SuperElem::constant(big, 1);
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      odd = odd * SuperElem::theta(big, odd_images.at(static_cast<std::size_t>(std::countr_zero(rest))));
    out += coeff * odd;
  }
  return out;
}

std::string RingEmbedding::to_string() const {
  std::string s;
  for (int i = 0; i < small->nvars(); ++i)
    s += (i ? ", " : "") + small->even_names[static_cast<std::size_t>(i)] + " -> " + even_images[static_cast<std::size_t>(i)].to_string();
  for (int i = 0; i < small->odd_count; ++i)
    s += (s.empty() ? "" : ", ") + small->odd_name(i) + " -> " + big->odd_name(odd_images[static_cast<std::size_t>(i)]);
  return s;
}

// ---------------------------------------------------------------------------
// Integrality

namespace {

bool is_name_identity(const RingEmbedding& e) {
  if (e.small->nvars() != e.big->nvars()) return false;
  for (int i = 0; i < e.small->nvars(); ++i)
    if (!(e.even_images[static_cast<std::size_t>(i)] == SuperElem::variable(e.big, i))) return false;
  return true;
}

// Polynomial in t (big ring, one variable) as a polynomial in T over Q(x).
RatPoly lift_univariate(const MPoly& p, const RatFunc& kzero) {
  std::vector<RatFunc> c;
  for (int k = 0; k <= p.degree(0); ++k) {
    MPoly ck = p.coeff_in(0, k);
    mpq_class v = ck.is_zero() ? mpq_class(0) : ck.constant_value();
    c.push_back(RatFunc::constant(kzero.field(), kzero.nvars(), v));
  }
  return RatPoly(kzero, c);
}

// Minimal polynomial of z (body of an element of the big ring) over the
// fraction field of the small ring; coefficients c0..c(n-1), monic.
std::optional<std::vector<RatFunc>> minimal_polynomial(const RatFunc& z, const RingEmbedding& e, int bound) {
  const RingDesc& small = *e.small;
  RatFunc kzero = zero_of(small);
  if (is_name_identity(e)) return std::vector<RatFunc>{-recast(z, small)};
  if (small.nvars() == 0) {
    if (!z.is_constant()) return std::nullopt;
    return std::vector<RatFunc>{RatFunc::constant(small.field(), 0, -z.constant_value())};
  }
  if (small.nvars() != 1 || e.big->nvars() != 1)
    throw Error(Errc::Unsupported, "integrality is decided for one-variable extensions only");
  const SuperElem& image = e.even_images.front();
  if (!image.nilpotent_part().is_zero()) throw Error(Errc::Unsupported, "embedding image has a nilpotent part");
  RatFunc phi = image.body();
  RatFunc x = RatFunc::variable(small.field(), 1, 0);
  RatPoly P = lift_univariate(phi.num(), kzero) - lift_univariate(phi.den(), kzero).scaled(x);
  if (P.degree() < 1) throw Error(Errc::Unsupported, "constant embedding image");
  auto den_inv = inverse_mod(lift_univariate(z.den(), kzero), P);
  if (!den_inv) throw Error(Errc::NotInvertible, "denominator vanishes in the extension");
  RatPoly zt = (lift_univariate(z.num(), kzero) * *den_inv).mod(P);
  const int d = P.degree();
  std::vector<std::vector<RatFunc>> vecs;
  RatPoly power = RatPoly::constant(RatFunc::constant(small.field(), 1, 1));
  for (int k = 0; k <= std::min(bound, d); ++k) {
    std::vector<RatFunc> v;
    for (int i = 0; i < d; ++i) v.push_back(power.coeff(i));
    vecs.push_back(v);
    power = (power * zt).mod(P);
  }
  auto dep = first_dependency(vecs);
  if (!dep) return std::nullopt;
  dep->pop_back();
  return dep;
}

std::vector<RatFunc> poly_power(const std::vector<RatFunc>& monic_low, int k, const RatFunc& zero) {
  std::vector<RatFunc> p = monic_low;
  p.push_back(zero + RatFunc::constant(zero.field(), zero.nvars(), 1));
  std::vector<RatFunc> acc{p.back()};
  for (int i = 0; i < k; ++i) {
    std::vector<RatFunc> next(acc.size() + p.size() - 1, zero);
    for (std::size_t a = 0; a < acc.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) next[a + b] += acc[a] * p[b];
    acc = next;
  }
  acc.pop_back();
  return acc;
}

}  // namespace

IntegralityResult is_integral(const SuperElem& x, const RingEmbedding& over, int degree_bound) {
  check_same(x.ring(), over.big);
  if (degree_bound < 1 || degree_bound > kMaxIntegralityDegree)
    throw Error(Errc::InvalidArgument, "degree bound must be in 1.." + std::to_string(kMaxIntegralityDegree));
  IntegralityResult res;
  const Ring& R = over.small;
  if (x.is_zero()) {
    res.verdict = IntegralityResult::Verdict::Yes;
    res.degree = 1;
    res.coeffs = {SuperElem(R)};
    return res;
  }
  if (x.is_odd()) {
    res.verdict = IntegralityResult::Verdict::Yes;
    res.degree = 2;
    res.coeffs = {SuperElem(R), SuperElem(R)};
    res.note = "odd element squares to zero";
    return res;
  }
  if (!x.is_even()) {
    auto parts = homogeneous_parts(x);
    res = is_integral(parts.even, over, degree_bound);
    res.note = "relation for the even part; odd part squares to zero";
    return res;
  }
  RatFunc z = x.body();
  SuperElem m = x.nilpotent_part();
  auto mp = minimal_polynomial(z, over, degree_bound);
  if (!mp) {
    res.note = "no relation of degree <= " + std::to_string(degree_bound);
    return res;
  }
  for (const auto& c : *mp)
    if (!even_in_ring(*R, c)) {
      res.note = "minimal polynomial has a coefficient outside the base ring: " + c.to_string(R->even_names);
      return res;
    }
  int k = 1;
  for (SuperElem mk = m; !mk.is_zero(); mk = mk * m) ++k;
  if (m.is_zero()) k = 1;
  std::vector<RatFunc> coeffs = k == 1 ? *mp : poly_power(*mp, k, zero_of(*R));
  int n = static_cast<int>(coeffs.size());
  if (n > degree_bound) {
    res.note = "relation needs degree " + std::to_string(n) + " > bound";
    return res;
  }
  SuperElem check = x.pow(n);
  for (int i = 0; i < n; ++i) {
    SuperElem a = SuperElem::even(R, coeffs[static_cast<std::size_t>(i)]);
    res.coeffs.push_back(a);
    check += over.apply(a) * x.pow(i);
  }
  if (!check.is_zero()) throw std::logic_error("integrality witness failed verification for " + x.to_string());
  res.verdict = IntegralityResult::Verdict::Yes;
  res.degree = n;
  return res;
}

std::optional<int> algebraic_degree(const SuperElem& x, const RingEmbedding& over, int degree_bound) {
  check_same(x.ring(), over.big);
  auto mp = minimal_polynomial(x.body(), over, degree_bound);
  if (!mp) return std::nullopt;
  return static_cast<int>(mp->size());
}

IntegralityResult is_integral(const SuperElem& x, const Ring& over, int degree_bound) {
  const Ring& big = x.ring();
  if (over->nvars() != big->nvars() || over->odd_count > big->odd_count)
    throw Error(Errc::RingMismatch, over->to_string() + " does not sit inside " + big->to_string());
  RingEmbedding e{over, big, {}, {}};
  for (int i = 0; i < big->nvars(); ++i) e.even_images.push_back(SuperElem::variable(big, i));
  for (int i = 0; i < over->odd_count; ++i) e.odd_images.push_back(i);
  return is_integral(x, e, degree_bound);
}

}  // namespace sval
