#include "sval/valuation.hpp"

#include <algorithm>
#include <bit>

#include "sval/error.hpp"

namespace sval {

// ---------------------------------------------------------------------------
// Places

PlaceDatum PlaceDatum::finite(const MPoly& poly) {
  unsigned mask = poly.var_mask();
  if (poly.is_constant() || std::popcount(mask) != 1) throw Error(Errc::InvalidArgument, "a finite place needs a univariate polynomial");
  PlaceDatum d;
  d.kind = Kind::Finite;
  d.var = std::countr_zero(mask);
  d.poly = poly.monic();
  if (!is_irreducible(d.poly, d.var)) throw Error(Errc::NotPrime, "place polynomial is reducible");
  return d;
}

PlaceDatum PlaceDatum::infinity(int var) {
  PlaceDatum d;
  d.kind = Kind::Infinity;
  d.var = var;
  return d;
}

PlaceDatum PlaceDatum::padic(unsigned long p) {
  if (!is_prime_number(p)) throw Error(Errc::InvalidArgument, "p-adic place needs a prime");
  PlaceDatum d;
  d.kind = Kind::PAdic;
  d.p = p;
  return d;
}

std::string PlaceDatum::to_string(const std::vector<std::string>& names) const {
  switch (kind) {
    case Kind::Finite: return poly.to_string(names);
    case Kind::Infinity: return "inf(" + names.at(static_cast<std::size_t>(var)) + ")";
    case Kind::PAdic: return "padic:" + std::to_string(p);
  }
  return "?";
}

bool operator==(const PlaceDatum& a, const PlaceDatum& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case PlaceDatum::Kind::Finite: return a.var == b.var && a.poly == b.poly && a.poly.field() == b.poly.field();
    case PlaceDatum::Kind::Infinity: return a.var == b.var;
    case PlaceDatum::Kind::PAdic: return a.p == b.p;
  }
  return false;
}

std::int64_t padic_order(const mpq_class& q, unsigned long p) {
  if (q == 0) throw Error(Errc::InvalidArgument, "p-adic order of 0");
  auto vz = [p](mpz_class n) {
    std::int64_t k = 0;
    n = abs(n);
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++k;
    }
    return k;
  };
  return vz(q.get_num()) - vz(q.get_den());
}

namespace {

std::int64_t poly_order(MPoly f, const MPoly& pi, int var) {
  std::int64_t k = 0;
  while (true) {
    auto [q, r] = f.divmod_in(var, pi);
    if (!r.is_zero()) return k;
    f = std::move(q);
    ++k;
  }
}

}  // namespace

std::optional<std::int64_t> place_order(const PlaceDatum& place, const RatFunc& f) {
  if (f.is_zero()) return std::nullopt;
  switch (place.kind) {
    case PlaceDatum::Kind::Finite:
      if (!(place.poly.field() == f.field())) throw Error(Errc::RingMismatch, "place and function over different fields");
      return poly_order(f.num(), place.poly, place.var) - poly_order(f.den(), place.poly, place.var);
    case PlaceDatum::Kind::Infinity:
      return static_cast<std::int64_t>(f.den().degree(place.var)) - f.num().degree(place.var);
    case PlaceDatum::Kind::PAdic:
      if (!f.field().is_rationals()) throw Error(Errc::Unsupported, "p-adic place in positive characteristic");
      return padic_order(f.num().content_rational(), place.p) - padic_order(f.den().content_rational(), place.p);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rules

namespace {

std::vector<std::int64_t> lexmin(const MPoly& p, const std::vector<int>& center) {
  std::optional<std::vector<std::int64_t>> best;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::int64_t> e;
    for (int v : center) e.push_back(m.e[static_cast<std::size_t>(v)]);
    if (!best || e < *best) best = e;
  }
  return *best;
}

RatFunc residue_at(const PlaceDatum& outer, const RatFunc& f, std::int64_t k) {
  const int x = outer.var;
  RatFunc xv = RatFunc::variable(f.field(), f.nvars(), x);
  if (outer.kind == PlaceDatum::Kind::Infinity) {
    RatFunc g = f * xv.pow(static_cast<int>(k));
    return g.substitute(x, xv.inv()).eval_var(x, 0);
  }
  mpq_class c = -outer.poly.coeff_in(x, 0).constant_value();
  RatFunc u(outer.poly);
  return (f * u.pow(static_cast<int>(-k))).eval_var(x, c);
}

MPoly reduce_mod_p(const MPoly& f, unsigned long p) {
  Field fp = Field::prime(p);
  MPoly out(fp, f.nvars());
  for (const auto& [m, c] : f.terms()) out.add_term(m, fp.reduce(c));
  return out;
}

RawValue raw_eval(const Rule& rule, const RatFunc& f) {
  if (f.is_zero()) return std::nullopt;
  switch (rule.kind) {
    case Rule::Kind::Trivial:
      return std::vector<std::int64_t>{};
    case Rule::Kind::Place:
      return std::vector<std::int64_t>{*place_order(rule.place, f)};
    case Rule::Kind::MonomialLex: {
      auto a = lexmin(f.num(), rule.center), b = lexmin(f.den(), rule.center);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
      return a;
    }
    case Rule::Kind::Composite: {
      std::int64_t k = *place_order(rule.place, f);
      RawValue in = raw_eval(*rule.inner, residue_at(rule.place, f, k));
      if (!in) throw Error(Errc::InvalidArgument, "residue vanished");
      std::vector<std::int64_t> out{k};
      out.insert(out.end(), in->begin(), in->end());
      return out;
    }
    case Rule::Kind::ModP: {
      mpq_class cn = f.num().content_rational(), cd = f.den().content_rational();
      std::int64_t an = padic_order(cn, rule.p), ad = padic_order(cd, rule.p);
      if (an - ad > 0) return std::nullopt;
      if (an - ad < 0) throw Error(Errc::NotInRing, "element has p in the denominator");
      mpq_class sn = 1, sd = 1;
      for (std::int64_t i = 0; i < an; ++i) sn /= rule.p;
      for (std::int64_t i = 0; i < ad; ++i) sd /= rule.p;
      RatFunc g(reduce_mod_p(f.num().scaled(sn), rule.p), reduce_mod_p(f.den().scaled(sd), rule.p));
      return std::vector<std::int64_t>{*place_order(rule.place, g)};
    }
    case Rule::Kind::Custom:
      break;
  }
  throw Error(Errc::InvalidArgument, "rule needs the full element");
}

std::string join_names(const std::vector<int>& idx, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + names.at(static_cast<std::size_t>(idx[i]));
  return s;
}

}  // namespace

std::string Rule::to_string(const std::vector<std::string>& names) const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::Place:
      if (place.kind == PlaceDatum::Kind::Finite) return "ord[" + place.to_string(names) + "]";
      return place.to_string(names);
    case Kind::MonomialLex: return "lex(" + join_names(center, names) + ")";
    case Kind::Composite:
      return "comp(" + (place.kind == PlaceDatum::Kind::Infinity ? place.to_string(names) : place.poly.to_string(names)) + "; " +
             inner->to_string(names) + ")";
    case Kind::ModP: return "modp:" + std::to_string(p) + ":" + place.to_string(names);
    case Kind::Custom: return "derived";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Valuation

Valuation::Valuation(Ring ring, std::shared_ptr<const Rule> rule, std::vector<Witness> witnesses, std::string label)
    : ring_(std::move(ring)), group_{rule->rank}, rule_(std::move(rule)), witnesses_(std::move(witnesses)), label_(std::move(label)) {
  if (group_.rank > kMaxGroupRank) throw Error(Errc::RankTooLarge, "value group rank " + std::to_string(group_.rank));
}

GValue Valuation::eval(const SuperElem& x) const {
  if (!same_ring(x.ring(), ring_)) throw Error(Errc::RingMismatch, x.ring()->to_string() + " vs " + ring_->to_string());
  RawValue raw;
  if (rule_->kind == Rule::Kind::Custom) {
    raw = rule_->custom(x);
  } else {
    raw = raw_eval(*rule_, superreduce(x));
  }
  GroupDesc g{rule_->rank};
  GValue val = raw ? GValue::finite(g, *raw) : GValue::infinity(g);
  return post_ ? post_->apply(val) : val;
}

Valuation Valuation::then(const OrderHom& h, const std::string& label) const {
  if (!(h.source == group_)) throw Error(Errc::GroupMismatch, "hom source " + h.source.to_string() + " vs " + group_.to_string());
  Valuation w = *this;
  w.post_ = post_ ? h.compose(*post_) : h;
  w.group_ = h.target;
  for (auto& wi : w.witnesses_) wi.value = h.apply(wi.value);
  w.label_ = label;
  return w;
}

Valuation Valuation::on_ring(const Ring& r) const {
  Valuation w = *this;
  if (rule_->kind == Rule::Kind::Custom) {
    auto fn = rule_->custom;
    Ring from = ring_;
    auto rule = std::make_shared<Rule>(*rule_);
    rule->custom = [fn, from](const SuperElem& x) { return fn(recast(x, from)); };
    w.rule_ = rule;
  }
  w.ring_ = r;
  for (auto& wi : w.witnesses_) wi.elem = recast(wi.elem, r);
  return w;
}

GValue eval(const Valuation& v, const SuperElem& x) { return v.eval(x); }

namespace {

Valuation with_witnesses(const Ring& r, std::shared_ptr<Rule> rule, const std::vector<SuperElem>& elems, const std::string& label) {
  Valuation v(r, rule, {}, label);
  std::vector<Witness> ws;
  for (const auto& e : elems) ws.push_back({e, v.eval(e)});
  return Valuation(r, rule, ws, label);
}

SuperElem poly_elem(const Ring& r, const MPoly& p) { return SuperElem::even(r, RatFunc(p)); }

SuperElem inverse_var_or_var(const Ring& r, int var) {
  SuperElem x = SuperElem::variable(r, var);
  SuperElem xi = x.inverse();
  return xi.in_ring() ? xi : x;
}

void check_var(const Ring& r, int var) {
  if (var < 0 || var >= r->nvars()) throw Error(Errc::UnknownVariable, "variable index " + std::to_string(var));
}

}  // namespace

Valuation trivial_valuation(const Ring& r) {
  auto rule = std::make_shared<Rule>();
  return Valuation(r, rule, {}, "trivial");
}

Valuation place_valuation(const Ring& r, const PlaceDatum& place) {
  auto rule = std::make_shared<Rule>();
  rule->kind = Rule::Kind::Place;
  rule->place = place;
  rule->rank = 1;
  std::vector<SuperElem> w;
  switch (place.kind) {
    case PlaceDatum::Kind::Finite:
      check_var(r, place.var);
      if (!(place.poly.field() == r->field())) throw Error(Errc::RingMismatch, "place polynomial over another field");
      w.push_back(poly_elem(r, place.poly));
      break;
    case PlaceDatum::Kind::Infinity:
      check_var(r, place.var);
      w.push_back(inverse_var_or_var(r, place.var));
      break;
    case PlaceDatum::Kind::PAdic:
      if (r->base == BaseRing::Fp) throw Error(Errc::Unsupported, "p-adic place over F_p");
      w.push_back(SuperElem::constant(r, place.p));
      break;
  }
  return with_witnesses(r, rule, w, rule->to_string(r->even_names));
}

Valuation monomial_lex(const Ring& r, const std::vector<int>& center) {
  if (center.empty()) throw Error(Errc::InvalidArgument, "lex valuation needs at least one variable");
  if (static_cast<int>(center.size()) > kMaxGroupRank) throw Error(Errc::RankTooLarge, "lex valuation in too many variables");
  auto rule = std::make_shared<Rule>();
  rule->kind = Rule::Kind::MonomialLex;
  rule->center = center;
  rule->rank = static_cast<int>(center.size());
  std::vector<SuperElem> w;
  for (int v : center) {
    check_var(r, v);
    w.push_back(SuperElem::variable(r, v));
  }
  return with_witnesses(r, rule, w, rule->to_string(r->even_names));
}

Valuation composite_valuation(const Ring& r, const PlaceDatum& outer, const Valuation& inner) {
  if (outer.kind == PlaceDatum::Kind::PAdic ||
      (outer.kind == PlaceDatum::Kind::Finite && outer.poly.degree(outer.var) != 1))
    throw Error(Errc::Unsupported, "composite needs a rational or infinite outer place");
  if (inner.rule().kind == Rule::Kind::Custom || inner.post()) throw Error(Errc::Unsupported, "composite needs a plain inner rule");
  if (!same_ring(r, inner.ring())) throw Error(Errc::RingMismatch, "inner valuation on another ring");
  auto rule = std::make_shared<Rule>();
  rule->kind = Rule::Kind::Composite;
  rule->place = outer;
  rule->inner = inner.rule_ptr();
  rule->rank = 1 + inner.group().rank;
  if (rule->rank > kMaxGroupRank) throw Error(Errc::RankTooLarge, "composite rank " + std::to_string(rule->rank));
  std::vector<SuperElem> w;
  w.push_back(outer.kind == PlaceDatum::Kind::Infinity ? inverse_var_or_var(r, outer.var) : poly_elem(r, outer.poly));
  for (const auto& wi : inner.witnesses()) w.push_back(wi.elem);
  return with_witnesses(r, rule, w, rule->to_string(r->even_names));
}

Valuation modp_valuation(const Ring& r, unsigned long p, const PlaceDatum& inner) {
  if (r->base == BaseRing::Fp) throw Error(Errc::Unsupported, "reduction mod p needs characteristic 0");
  if (!is_prime_number(p)) throw Error(Errc::InvalidArgument, "modp needs a prime");
  PlaceDatum in = inner;
  if (in.kind == PlaceDatum::Kind::PAdic) throw Error(Errc::Unsupported, "p-adic inner place");
  std::vector<SuperElem> w;
  if (in.kind == PlaceDatum::Kind::Finite) {
    w.push_back(poly_elem(r, in.poly));
    in.poly = reduce_mod_p(in.poly, p);
    if (!is_irreducible(in.poly, in.var)) throw Error(Errc::NotPrime, "place is reducible mod p");
  } else {
    w.push_back(inverse_var_or_var(r, in.var));
  }
  auto rule = std::make_shared<Rule>();
  rule->kind = Rule::Kind::ModP;
  rule->p = p;
  rule->place = in;
  rule->rank = 1;
  return with_witnesses(r, rule, w, rule->to_string(r->even_names));
}

Valuation custom_valuation(const Ring& r, int rank, std::function<RawValue(const SuperElem&)> fn, std::vector<Witness> witnesses,
                           const std::string& label) {
  auto rule = std::make_shared<Rule>();
  rule->kind = Rule::Kind::Custom;
  rule->rank = rank;
  rule->custom = std::move(fn);
  return Valuation(r, rule, std::move(witnesses), label);
}

SuperIdeal support(const Valuation& v) {
  SuperIdeal i;
  i.ring = v.ring();
  i.tag = SuperIdeal::Tag::SupportOf;
  i.label = "supp(" + v.label() + ")";
  for (int k = 0; k < v.ring()->odd_count; ++k) i.generators.push_back(SuperElem::theta(v.ring(), k));
  Valuation vc = v;
  i.predicate = [vc](const SuperElem& x) { return vc.eval(x).is_infinite(); };
  return i;
}

bool in_Av(const Valuation& v, const SuperElem& x) { return v.eval(x) >= GValue::zero(v.group()); }
bool in_pv(const Valuation& v, const SuperElem& x) { return v.eval(x) > GValue::zero(v.group()); }

// ---------------------------------------------------------------------------
// Probe pool

std::vector<SuperElem> probe_pool(const Ring& r, const std::vector<unsigned long>& extra_primes) {
  std::vector<SuperElem> pool;
  auto add = [&](const SuperElem& e) {
    if (e.is_zero() || !e.in_ring()) return;
    for (const auto& q : pool)
      if (q == e) return;
    pool.push_back(e);
  };
  std::vector<unsigned long> primes{2, 3, 5, 7};
  for (auto p : extra_primes)
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  for (auto p : primes) {
    if (r->base == BaseRing::Fp && p % r->p == 0) continue;
    add(SuperElem::constant(r, p));
  }
  for (int v = 0; v < r->nvars(); ++v) {
    SuperElem x = SuperElem::variable(r, v);
    std::vector<SuperElem> base{x, x * x + SuperElem::constant(r, 1)};
    for (int c : {-2, -1, 1, 2}) base.push_back(x - SuperElem::constant(r, c));
    for (const auto& b : base) {
      add(b);
      if (!b.body().is_zero()) add(b.inverse());
    }
  }
  if (r->nvars() >= 2) {
    SuperElem x = SuperElem::variable(r, 0), y = SuperElem::variable(r, 1);
    add(x * y);
    add(x + y);
    add(x - y);
    add(x * x + y);
  }
  for (int k = 0; k < r->odd_count; ++k) add(SuperElem::theta(r, k));
  return pool;
}

// ---------------------------------------------------------------------------
// Induced valuation on the residue field

HatValuation induced_hat(const Valuation& v) {
  HatValuation out;
  const Rule& rule = v.rule();
  if (rule.kind == Rule::Kind::ModP) {
    RingDesc d = *reduced_ring(v.ring());
    d.base = BaseRing::Fp;
    d.p = rule.p;
    for (auto& k : d.even_kinds) k = VarKind::Rational;
    Ring k = make_ring(d);
    out.vhat = place_valuation(k, rule.place);
    out.reduce = [k](const SuperElem& x) { return recast(x.body(), *k); };
    return out;
  }
  Ring k = fraction_ring(reduced_ring(v.ring()));
  if (rule.kind == Rule::Kind::Custom) {
    // v̂(a/b) = v(a) - v(b) with a, b lifted to R.
    Valuation vc = v;
    Ring from = v.ring();
    auto fn = [vc, from](const SuperElem& x) -> RawValue {
      RatFunc f = x.body();
      if (f.is_zero()) return std::nullopt;
      mpq_class cn = f.num().content_rational(), cd = f.den().content_rational();
      mpz_class scale = cn.get_den() * cd.get_den();
      SuperElem a = SuperElem::even(from, recast(RatFunc(f.num().scaled(scale)), *from));
      SuperElem b = SuperElem::even(from, recast(RatFunc(f.den().scaled(scale)), *from));
      GValue d = vc.eval(a) - vc.eval(b);
      return d.coords();
    };
    std::vector<Witness> ws;
    for (const auto& wi : v.witnesses()) ws.push_back({recast(SuperElem::even(v.ring(), wi.elem.body()), k), wi.value});
    out.vhat = custom_valuation(k, v.group().rank, fn, ws, "hat(" + v.label() + ")");
  } else {
    Valuation pre(v.ring(), v.rule_ptr(), {}, v.label());
    std::vector<Witness> ws;
    for (const auto& wi : v.witnesses()) ws.push_back({SuperElem::even(k, recast(wi.elem.body(), *k)), pre.eval(wi.elem)});
    out.vhat = Valuation(k, v.rule_ptr(), ws, "hat(" + v.label() + ")");
    if (v.post()) out.vhat = out.vhat.then(*v.post(), out.vhat.label());
  }
  out.reduce = [k](const SuperElem& x) { return recast(x.body(), *k); };
  return out;
}

std::optional<HatQuotient> hat_quotient(const Valuation& v, const SuperElem& x, const SuperElem& y) {
  GValue zero = GValue::zero(v.group());
  if (v.eval(y).is_infinite()) return std::nullopt;
  std::vector<SuperElem> cands;
  if (y.is_even() && !y.body().is_zero()) {
    SuperElem yi = y.inverse();
    if (yi.in_ring()) cands.push_back(yi);
  }
  auto pool = probe_pool(v.ring());
  cands.push_back(SuperElem::constant(v.ring(), 1));
  for (const auto& g : pool)
    if (g.is_even())
      for (int k = 1; k <= 8; ++k) cands.push_back(g.pow(k));
  for (const auto& c : cands)
    if (v.eval(y * c) == zero) return HatQuotient{v.eval(x * c), c};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Equivalence

namespace {

// Solves H * V = W over Q for integer H; V is r x m, W is s x m.
std::optional<std::vector<std::vector<std::int64_t>>> solve_integer_hom(const std::vector<std::vector<mpq_class>>& V,
                                                                        const std::vector<std::vector<mpq_class>>& W, int r,
                                                                        int s, std::size_t m) {
  // Pick r independent columns of V.
  std::vector<std::size_t> cols;
  std::vector<std::vector<mpq_class>> basis;  // reduced copies
  for (std::size_t j = 0; j < m && static_cast<int>(cols.size()) < r; ++j) {
    std::vector<mpq_class> c(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = V[static_cast<std::size_t>(i)][j];
    for (const auto& b : basis) {
      std::size_t piv = 0;
      while (b[piv] == 0) ++piv;
      if (c[piv] != 0) {
        mpq_class f = c[piv] / b[piv];
        for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(i)];
      }
    }
    if (std::any_of(c.begin(), c.end(), [](const mpq_class& q) { return q != 0; })) {
      basis.push_back(c);
      cols.push_back(j);
    }
  }
  if (static_cast<int>(cols.size()) < r) return std::nullopt;
  // Invert the r x r matrix of selected columns by Gauss-Jordan.
  std::vector<std::vector<mpq_class>> a(static_cast<std::size_t>(r), std::vector<mpq_class>(2 * static_cast<std::size_t>(r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = V[static_cast<std::size_t>(i)][cols[static_cast<std::size_t>(j)]];
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(r + j)] = i == j ? 1 : 0;
    }
  for (int c = 0; c < r; ++c) {
    int piv = c;
    while (a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)] == 0) ++piv;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(c)]);
    mpq_class d = a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    for (auto& q : a[static_cast<std::size_t>(c)]) q /= d;
    for (int i = 0; i < r; ++i) {
      if (i == c) continue;
      mpq_class f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j < 2 * r; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
    }
  }
  std::vector<std::vector<std::int64_t>> H(static_cast<std::size_t>(s), std::vector<std::int64_t>(static_cast<std::size_t>(r)));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < r; ++j) {
      mpq_class sum = 0;
      for (int k = 0; k < r; ++k)
        sum += W[static_cast<std::size_t>(i)][cols[static_cast<std::size_t>(k)]] * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(r + j)];
      if (sum.get_den() != 1 || !sum.get_num().fits_slong_p()) return std::nullopt;
      H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sum.get_num().get_si();
    }
  for (std::size_t j = 0; j < m; ++j)
    for (int i = 0; i < s; ++i) {
      mpq_class sum = 0;
      for (int k = 0; k < r; ++k) sum += H[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * V[static_cast<std::size_t>(k)][j];
      if (sum != W[static_cast<std::size_t>(i)][j]) return std::nullopt;
    }
  return H;
}

std::vector<SuperElem> comparison_probes(const Valuation& v, const Valuation& w) {
  std::vector<SuperElem> probes = probe_pool(v.ring());
  for (const auto* val : {&v, &w})
    for (const auto& wi : val->witnesses()) {
      probes.push_back(wi.elem);
      if (wi.elem.is_even() && !wi.elem.body().is_zero()) {
        SuperElem inv = wi.elem.inverse();
        if (inv.in_ring()) probes.push_back(inv);
      }
    }
  std::size_t n = probes.size();
  for (std::size_t i = 0; i < n && i < 24; ++i)
    for (std::size_t j = i + 1; j < n && j < 24; ++j) probes.push_back(probes[i] * probes[j]);
  return probes;
}

}  // namespace

std::optional<OrderHom> hom_from_witnesses(const Valuation& v, const Valuation& w) {
  if (!same_ring(v.ring(), w.ring())) throw Error(Errc::RingMismatch, "valuations on different rings");
  const int r = v.group().rank, s = w.group().rank;
  std::vector<SuperElem> elems;
  for (const auto& wi : v.witnesses()) elems.push_back(wi.elem);
  for (const auto& wi : w.witnesses()) elems.push_back(wi.elem);
  std::vector<std::vector<mpq_class>> V(static_cast<std::size_t>(r)), W(static_cast<std::size_t>(s));
  std::size_t m = 0;
  for (const auto& e : elems) {
    GValue a = v.eval(e), b = w.eval(e);
    if (a.is_infinite() != b.is_infinite()) return std::nullopt;
    if (a.is_infinite()) continue;
    for (int i = 0; i < r; ++i) V[static_cast<std::size_t>(i)].push_back(a[i]);
    for (int i = 0; i < s; ++i) W[static_cast<std::size_t>(i)].push_back(b[i]);
    ++m;
  }
  OrderHom h{v.group(), w.group(), {}};
  if (r == 0) {
    for (const auto& row : W)
      for (const auto& q : row)
        if (q != 0) return std::nullopt;
    h.matrix.assign(static_cast<std::size_t>(s), {});
    return h;
  }
  auto H = solve_integer_hom(V, W, r, s, m);
  if (!H) return std::nullopt;
  h.matrix = *H;
  return h;
}

EquivalenceResult equivalent(const Valuation& v, const Valuation& w) {
  if (!same_ring(v.ring(), w.ring())) throw Error(Errc::RingMismatch, "valuations on different rings");
  EquivalenceResult res;
  for (const auto& x : comparison_probes(v, w)) {
    if (v.eval(x).is_infinite() != w.eval(x).is_infinite()) {
      res.reason = "supports differ at " + x.to_string();
      return res;
    }
    if (in_Av(v, x) != in_Av(w, x)) {
      res.reason = "valuation rings differ at " + x.to_string();
      return res;
    }
  }
  auto h = hom_from_witnesses(v, w);
  if (!h) {
    res.reason = "no integer order map carries one value set to the other";
    return res;
  }
  if (!h->is_injective() || !h->is_order_preserving(4)) {
    res.reason = "order map " + h->to_string() + " is not an order embedding";
    return res;
  }
  for (const auto& x : comparison_probes(v, w))
    if (!(h->apply(v.eval(x)) == w.eval(x))) {
      res.reason = "h(v(x)) != w(x) at " + x.to_string();
      return res;
    }
  res.equivalent = true;
  res.h = h;
  return res;
}

// ---------------------------------------------------------------------------
// Locality and localization

LocalityResult is_local(const Valuation& v) {
  LocalityResult res;
  const Ring& r = v.ring();
  if (r->is_superfield()) {
    res.local = true;
    return res;
  }
  std::vector<SuperElem> cands;
  auto pool = probe_pool(r, v.rule().kind == Rule::Kind::ModP ? std::vector<unsigned long>{v.rule().p} : std::vector<unsigned long>{});
  for (const auto& a : pool)
    if (a.is_even()) cands.push_back(a);
  std::size_t n = cands.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) cands.push_back(cands[i] * cands[j]);
  for (std::size_t i = 0; i < n; ++i) cands.push_back(cands[i] + SuperElem::constant(r, 1));
  GValue zero = GValue::zero(v.group());
  for (const auto& x : cands) {
    if (!x.in_ring() || !(v.eval(x) == zero)) continue;
    if (!even_is_unit(*r, x.body())) {
      res.witness = x;
      return res;
    }
  }
  res.local = true;
  return res;
}

Valuation localize_valuation(const Valuation& v) {
  const Ring& r = v.ring();
  const Rule& rule = v.rule();
  if (r->is_superfield()) return v;
  if (rule.kind == Rule::Kind::Trivial) return v.on_ring(localize(r, {PrimeDatum::Kind::NonZeroDivisors, {}}));
  if (rule.kind == Rule::Kind::Place && rule.place.kind == PlaceDatum::Kind::Finite && !v.post()) {
    if (r->localized_at) {
      if (*r->localized_at == rule.place.poly) return v;
      throw Error(Errc::SupportMeetsU, "ring already localized elsewhere");
    }
    bool others_rational = true;
    for (int i = 0; i < r->nvars(); ++i)
      if (i != rule.place.var && r->even_kinds[static_cast<std::size_t>(i)] != VarKind::Rational) others_rational = false;
    if (others_rational && r->even_kinds[static_cast<std::size_t>(rule.place.var)] == VarKind::Poly && r->base != BaseRing::Z)
      return v.on_ring(localize(r, {PrimeDatum::Kind::Polynomial, rule.place.poly}));
  }
  if (rule.kind == Rule::Kind::Place && rule.place.kind == PlaceDatum::Kind::Infinity && r->nvars() == 1 &&
      r->even_kinds[0] == VarKind::Poly && r->base != BaseRing::Z)
    return v;  // A_v \ p_v consists of the nonzero constants
  throw Error(Errc::Unsupported, "localization of " + v.label() + " on " + r->to_string() + " is not representable");
}

// ---------------------------------------------------------------------------
// Axiom checks

SampleReport verify_axioms(const Valuation& v, const AxiomOptions& opt) {
  const Ring r = v.ring();
  Valuation vc = v;
  SampleCheck check = [vc, r, opt](Rng& rng, std::size_t i) -> std::optional<std::string> {
    if (i == 0) {
      if (!vc.eval(SuperElem(r)).is_infinite()) return "v(0) != inf";
      if (!vc.eval(SuperElem::constant(r, 1)).is_zero()) return "v(1) != 0";
    }
    SuperElem x = random_elem(rng, r, opt.shape), y = random_elem(rng, r, opt.shape);
    GValue vx = vc.eval(x), vy = vc.eval(y);
    if (!(vc.eval(x * y) == vx + vy)) return "v(xy) != v(x)+v(y) for x=" + x.to_string() + ", y=" + y.to_string();
    GValue vs = vc.eval(x + y);
    if (vs < gmin(vx, vy)) return "v(x+y) < min for x=" + x.to_string() + ", y=" + y.to_string();
    if (!(vx == vy) && !(vs == gmin(vx, vy))) return "strict ultrametric equality fails for x=" + x.to_string() + ", y=" + y.to_string();
    if (!(vc.eval(-x) == vx)) return "v(-x) != v(x) for x=" + x.to_string();
    if (x.is_even() && !vx.is_infinite() && even_is_unit(*r, x.body())) {
      if (!(vc.eval(x.inverse()) == gneg(vx))) return "v(1/x) != -v(x) for x=" + x.to_string();
    }
    return std::nullopt;
  };
  return opt.parallel ? run_samples_omp(opt.seed, opt.trials, check) : run_samples_serial(opt.seed, opt.trials, check);
}

SampleReport verify_nilpotents_infinite(const Valuation& v, const AxiomOptions& opt) {
  const Ring r = v.ring();
  Valuation vc = v;
  SampleCheck check = [vc, r, opt](Rng& rng, std::size_t) -> std::optional<std::string> {
    SuperElem n = random_nilpotent(rng, r, opt.shape);
    if (!vc.eval(n).is_infinite()) return "finite value on " + n.to_string();
    return std::nullopt;
  };
  return opt.parallel ? run_samples_omp(opt.seed, opt.trials, check) : run_samples_serial(opt.seed, opt.trials, check);
}

bool witnesses_generate(const Valuation& v) {
  std::vector<GValue> vals;
  for (const auto& w : v.witnesses()) vals.push_back(w.value);
  return Lattice(v.group(), vals).is_whole() || v.group().rank == 0;
}

}  // namespace sval
