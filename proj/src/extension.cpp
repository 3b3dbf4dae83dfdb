#include "sval/extension.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sval/error.hpp"
#include "sval/parser.hpp"

namespace sval {

namespace {

RawValue raw_of(const GValue& g) {
  if (g.is_infinite()) return std::nullopt;
  return g.coords();
}

void require_ring(const Valuation& v, const Ring& r, const char* what) {
  if (!same_ring(v.ring(), r))
    throw Error(Errc::RingMismatch, std::string(what) + " lives on " + v.ring()->to_string() + ", expected " + r->to_string());
}

RatFunc rf_const(const RingDesc& r, const mpq_class& c) { return RatFunc::constant(r.field(), r.nvars(), c); }
RatFunc rf_var(const RingDesc& r, int i) { return RatFunc::variable(r.field(), r.nvars(), i); }

// Sample of R with the valuation witnesses first.
std::vector<SuperElem> witness_first_sample(const Valuation& v, std::size_t random_count, std::uint64_t seed) {
  std::vector<SuperElem> hints;
  for (const auto& w : v.witnesses()) hints.push_back(w.elem);
  std::vector<SuperElem> out = hints;
  for (auto& x : structured_sample(v.ring(), random_count, seed, hints)) out.push_back(std::move(x));
  return out;
}

bool is_rank_one_place(const Valuation& v) {
  const Rule& r = v.rule();
  return r.kind == Rule::Kind::Place && v.group().rank == 1 && !v.post() &&
         (r.place.kind == PlaceDatum::Kind::Finite || r.place.kind == PlaceDatum::Kind::Infinity) && r.place.var == 0;
}

void check_places(const std::vector<Valuation>& places, const char* op) {
  if (places.empty()) throw Error(Errc::InvalidArgument, std::string(op) + " needs at least one place");
  const Ring& r = places.front().ring();
  if (!r->is_superfield() || r->nvars() != 1)
    throw Error(Errc::Unsupported, std::string(op) + " works on superfields k(x)[θ..]");
  for (std::size_t i = 0; i < places.size(); ++i) {
    require_ring(places[i], r, "place");
    if (!is_rank_one_place(places[i]))
      throw Error(Errc::DependentPlaces, places[i].label() + " is not a rank-one place of k(x)");
    for (std::size_t j = 0; j < i; ++j)
      if (places[i].rule().place == places[j].rule().place)
        throw Error(Errc::DependentPlaces, places[i].label() + " appears twice");
  }
}

// Rank of rational vectors by elimination.
int rank_q(std::vector<std::vector<mpq_class>> rows) {
  int rank = 0;
  std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      mpq_class f = rows[i][col] / p[col];
      for (std::size_t c = col; c < ncols; ++c) rows[i][c] -= f * p[c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

// ---------------------------------------------------------------------------
// Extensions

RingExtension inclusion_extension(const Ring& small, const Ring& big) {
  if (small->even_names != big->even_names || small->odd_count > big->odd_count)
    throw Error(Errc::RingMismatch, small->to_string() + " does not sit inside " + big->to_string());
  if (big->base != BaseRing::Q && small->base != big->base)
    throw Error(Errc::RingMismatch, "coefficient rings differ");
  RingExtension ext;
  ext.small = small;
  ext.big = big;
  ext.embedding = RingEmbedding{small, big, {}, {}};
  for (int i = 0; i < big->nvars(); ++i) ext.embedding.even_images.push_back(SuperElem::variable(big, i));
  for (int i = 0; i < small->odd_count; ++i) ext.embedding.odd_images.push_back(i);
  for (int i = 0; i < big->nvars(); ++i) {
    VarKind a = small->even_kinds[static_cast<std::size_t>(i)], b = big->even_kinds[static_cast<std::size_t>(i)];
    RatFunc x = rf_var(*big, i);
    if (a == VarKind::Poly && b != VarKind::Poly) ext.generators.push_back(SuperElem::even(big, x.inv()));
    if (a == VarKind::Laurent && b == VarKind::Rational)
      ext.generators.push_back(SuperElem::even(big, (x - rf_const(*big, 1)).inv()));
  }
  if (small->base == BaseRing::Z && big->base == BaseRing::Q)
    ext.generators.push_back(SuperElem::constant(big, mpq_class(1, 2)));
  for (int i = small->odd_count; i < big->odd_count; ++i) ext.generators.push_back(SuperElem::theta(big, i));
  ext.label = small->to_string() + " <= " + big->to_string();
  return ext;
}

RingExtension parse_extension(const std::string& relation, const Ring& small, const Ring& big) {
  if (small->nvars() != 1 || big->nvars() != 1)
    throw Error(Errc::Unsupported, "algebraic extensions are supported between one-variable rings");
  if (!(small->field() == big->field()) || small->odd_count > big->odd_count)
    throw Error(Errc::RingMismatch, small->to_string() + " does not embed in " + big->to_string());
  auto eq = relation.find('=');
  if (eq == std::string::npos || relation.find('=', eq + 1) != std::string::npos)
    throw ParseError(Errc::SyntaxError, "relation needs exactly one '='", eq == std::string::npos ? relation.size() : eq);
  MPoly lhs = parse_poly(relation.substr(0, eq), big);
  MPoly rhs = parse_poly(relation.substr(eq + 1), small);
  if (rhs.degree(0) != 1)
    throw ParseError(Errc::SyntaxError, "right side must be linear in " + small->even_names.front(), eq + 1);
  mpq_class a = rhs.coeff_in(0, 1).constant_value();
  mpq_class b = rhs.coeff_in(0, 0).is_zero() ? mpq_class(0) : rhs.coeff_in(0, 0).constant_value();
  MPoly phi = (lhs - MPoly::constant(big->field(), 1, b)).scaled(big->field().inv(a));
  if (phi.degree(0) < 1) throw Error(Errc::InvalidArgument, "left side must involve " + big->even_names.front());
  RingExtension ext;
  ext.small = small;
  ext.big = big;
  ext.embedding = RingEmbedding{small, big, {SuperElem::even(big, RatFunc(phi))}, {}};
  for (int i = 0; i < small->odd_count; ++i) ext.embedding.odd_images.push_back(i);
  ext.generators.push_back(SuperElem::variable(big, 0));
  for (int i = small->odd_count; i < big->odd_count; ++i) ext.generators.push_back(SuperElem::theta(big, i));
  ext.label = relation;
  return ext;
}

RingExtension parse_extension(const std::string& relation, const Ring& small, const std::string& var) {
  if (small->nvars() == 1 && small->even_names.front() == var)
    throw Error(Errc::InvalidArgument, "new variable must differ from " + var);
  RingDesc d = *small;
  d.even_names = {var};
  return parse_extension(relation, small, make_ring(std::move(d)));
}

std::string ExtensionVerdict::J_string() const {
  if (!J) return "?";
  const auto& basis = J->basis();
  if (basis.empty()) return "0";
  if (J->group().rank == 1) {
    std::int64_t k = std::llabs(basis.front()[0]);
    return k == 1 ? "Z" : std::to_string(k) + "Z";
  }
  std::string s = "<";
  for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? "," : "") + basis[i].to_string();
  return s + ">";
}

ExtensionVerdict check_extension(const RingExtension& ext, const Valuation& v, const Valuation& w, std::uint64_t seed) {
  require_ring(v, ext.small, "v");
  require_ring(w, ext.big, "w");
  ExtensionVerdict res;
  std::vector<SuperElem> sample = witness_first_sample(v, 30, seed);
  const GValue zv = GValue::zero(v.group()), zw = GValue::zero(w.group());

  res.checks.pair_precedes = true;
  res.checks.support_contained = true;
  for (const auto& x : sample) {
    GValue vx = v.eval(x), wx = w.eval(ext.apply(x));
    bool in_A = vx >= zv, in_p = vx > zv;
    bool ok_pair = (!in_A || wx >= zw) && (in_p == (in_A && wx > zw));
    if (!ok_pair && res.checks.pair_precedes) {
      res.checks.pair_precedes = false;
      if (!res.counterexample) res.counterexample = x;
      res.reason = "pair containment fails at " + x.to_string() + ": v = " + vx.to_string() + ", w = " + wx.to_string();
    }
    if (vx.is_infinite() && !wx.is_infinite() && res.checks.support_contained) {
      res.checks.support_contained = false;
      if (!res.counterexample) res.counterexample = x;
      if (res.reason.empty()) res.reason = "support not contained at " + x.to_string();
    }
  }

  // w restricted to R, with the witnesses of v.
  std::vector<Witness> pushed;
  for (const auto& wi : v.witnesses()) pushed.push_back({wi.elem, w.eval(ext.apply(wi.elem))});
  Valuation wc = w;
  RingExtension ec = ext;
  Valuation restricted = custom_valuation(
      ext.small, w.group().rank, [wc, ec](const SuperElem& x) { return raw_of(wc.eval(ec.apply(x))); }, pushed,
      "w|R");
  AxiomOptions ax;
  ax.seed = seed;
  ax.trials = 150;
  ax.parallel = false;
  res.checks.restriction_valuation = verify_axioms(restricted, ax).ok();

  auto h = hom_from_witnesses(v, restricted);
  if (h && h->is_injective() && h->is_order_preserving(4)) {
    res.checks.hom_matches = true;
    for (const auto& x : sample) {
      if (!(h->apply(v.eval(x)) == w.eval(ext.apply(x)))) {
        res.checks.hom_matches = false;
        if (!res.counterexample) res.counterexample = x;
        if (res.reason.empty()) res.reason = "w differs from h(v) at " + x.to_string();
        break;
      }
    }
    res.h = h;
    res.J = h->image();
  } else if (res.reason.empty()) {
    res.reason = "no order embedding carries v to w on the witnesses";
  }
  res.extends = res.checks.pair_precedes && res.checks.support_contained && res.checks.restriction_valuation &&
                res.checks.hom_matches;
  if (res.extends) res.reason = "w extends v with J = " + res.J_string();
  return res;
}

CriterionResult extension_criterion(const RingExtension& ext, const Valuation& v, std::uint64_t seed) {
  require_ring(v, ext.small, "v");
  CriterionResult res;
  std::vector<unsigned long> extra;
  if (v.rule().kind == Rule::Kind::ModP) extra.push_back(v.rule().p);
  std::vector<SuperElem> body_gens;
  for (const auto& x : probe_pool(ext.small, extra))
    if (x.is_even() && !x.body().is_zero() && v.eval(x).is_infinite()) body_gens.push_back(x);

  if (body_gens.empty()) {
    // supp(v) = J_R; its extension is generated by odd elements, and the
    // contraction is J_R as long as bodies stay nonzero.
    for (const auto& x : structured_sample(ext.small, 40, seed)) {
      if (!x.body().is_zero() && ext.apply(x).body().is_zero()) {
        res.witness = x;
        res.reason = "embedding kills the body of " + x.to_string();
        return res;
      }
    }
    res.holds = true;
    res.reason = "supp(v) = J_R and R ∩ <J_R>_S = J_R";
    return res;
  }
  const SuperElem& g = body_gens.front();
  SuperElem image = ext.apply(g);
  if (ext.big->is_superfield() || even_is_unit(*ext.big, image.body())) {
    res.witness = SuperElem::constant(ext.small, 1);
    res.reason = g.to_string() + " lies in supp(v) and is a unit of S, so <supp v>_S = S contains 1";
    return res;
  }
  bool same_even = ext.small->nvars() == ext.big->nvars() && ext.small->even_kinds == ext.big->even_kinds &&
                   ext.small->base == ext.big->base && ext.small->localized_at == ext.big->localized_at;
  for (int i = 0; same_even && i < ext.small->nvars(); ++i)
    same_even = ext.embedding.even_images[static_cast<std::size_t>(i)] == SuperElem::variable(ext.big, i);
  if (!same_even)
    throw Error(Errc::UnsupportedIdeal, "extended support of " + v.label() + " is not in a supported family");
  res.holds = true;
  res.reason = "S only adds odd generators, so <supp v>_S ∩ R = supp v";
  return res;
}

// ---------------------------------------------------------------------------
// Integral closure

ClosureProbe closure_probe(const Valuation& v, const SuperElem& x, int degree_bound) {
  ClosureProbe p;
  p.x = x;
  const Ring& r = v.ring();
  GValue vx = v.eval(x);
  const GValue zero = GValue::zero(v.group());
  if (x.is_zero() || x.body().is_zero()) {
    p.in_Av = true;
    p.integral = true;
    SuperElem m = x;
    int k = 1;
    while (!m.is_zero()) {
      m = m * x;
      ++k;
    }
    p.relation.assign(static_cast<std::size_t>(k), SuperElem(r));
    p.log = "x^" + std::to_string(k) + " = 0 and v(x) = inf, so x is in A_v";
    return p;
  }
  if (vx >= zero) {
    p.in_Av = true;
    p.integral = true;
    p.relation = {-x};
    p.log = "v(x) = " + vx.to_string() + " >= 0: x is a root of T - x over A_v";
    return p;
  }
  std::ostringstream log;
  log << "v(x) = " << vx.to_string() << " < 0";
  for (int n = 1; n <= degree_bound; ++n) {
    GValue top = gscale(vx, n), low = gscale(vx, n - 1);
    log << "; n=" << n << ": n*v(x) = " << top.to_string() << " < " << low.to_string() << " <= min v(a_i x^i)";
  }
  log << "; so v(P(x)) = n*v(x) != inf for every monic P over A_v";
  p.log = log.str();
  return p;
}

SpotcheckReport integrally_closed_spotcheck(const Valuation& v, std::size_t trials, std::uint64_t seed,
                                            int degree_bound) {
  SpotcheckReport rep;
  const Ring& r = v.ring();
  const GValue zero = GValue::zero(v.group());
  ElemShape shape;
  shape.max_degree = 2;
  shape.coeff_bound = 4;
  shape.max_terms = 2;
  shape.max_den_degree = 1;
  Valuation vc = v;
  // Element of A_v from a random one: scaled by a witness-built element of opposite value.
  auto into_A = [vc, zero](const SuperElem& a) -> SuperElem {
    GValue va = vc.eval(a);
    if (va.is_infinite() || va >= zero) return a;
    auto u = element_of_value(vc, -va);
    if (!u) return SuperElem(a.ring());
    return a * *u;
  };
  auto check = [&, vc](Rng& rng, std::size_t) -> std::optional<std::string> {
    SuperElem x = SuperElem::even(r, random_even(rng, *r, shape));
    GValue vx = vc.eval(x);
    int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(degree_bound));
    std::vector<SuperElem> a;
    for (int i = 0; i < n; ++i) a.push_back(into_A(SuperElem::even(r, random_even(rng, *r, shape, false))));
    for (const auto& ai : a)
      if (!(vc.eval(ai) >= zero)) return "coefficient " + ai.to_string() + " left A_v";
    SuperElem P = x.pow(n);
    for (int i = 0; i < n; ++i) P += a[static_cast<std::size_t>(i)] * x.pow(i);
    if (vx >= zero) {
      if (!in_Av(vc, x)) return "root " + x.to_string() + " of value >= 0 outside A_v";
      return std::nullopt;
    }
    GValue vp = vc.eval(P);
    if (P.is_zero() || !(vp == gscale(vx, n)))
      return "monic relation of degree " + std::to_string(n) + " at " + x.to_string() + " has value " + vp.to_string();
    return std::nullopt;
  };
  rep.samples = run_samples_serial(seed, trials, check);
  for (std::size_t i = 0; i < std::min<std::size_t>(trials, 4); ++i) {
    Rng rng = sample_rng(seed, i);
    rep.probes.push_back(closure_probe(v, SuperElem::even(r, random_even(rng, *r, shape)), degree_bound));
  }
  return rep;
}

ExtensionVerdict extend_over_integral(const RingExtension& ext, const Valuation& v, const Valuation& w,
                                      int degree_bound, std::uint64_t seed) {
  require_ring(v, ext.small, "v");
  require_ring(w, ext.big, "w");
  for (const auto& g : ext.generators) {
    auto res = is_integral(g, ext.embedding, degree_bound);
    if (!res.yes()) throw Error(Errc::NotIntegral, g.to_string() + " is not integral over " + ext.small->to_string() + " (" + res.note + ")");
  }
  for (const auto& x : witness_first_sample(v, 30, seed)) {
    SuperElem y = ext.apply(x);
    if ((in_Av(v, x) && !in_Av(w, y)) || (in_pv(v, x) && !in_pv(w, y)))
      throw Error(Errc::NotDominating, "(A_w, p_w) does not dominate (A_v, p_v) at " + x.to_string());
  }
  ExtensionVerdict verdict = check_extension(ext, v, w, seed);
  if (!verdict.checks.support_contained)
    throw std::logic_error("integral extension with dominating pair lost the support at " +
                           (verdict.counterexample ? verdict.counterexample->to_string() : std::string("?")));
  return verdict;
}

ClosureReport closure_as_intersection(const Ring& R, const Ring& T, const std::vector<Valuation>& places,
                                      std::size_t samples, std::uint64_t seed, int degree_bound) {
  if (!T->is_superfield() || T->nvars() != 1) throw Error(Errc::Unsupported, "closure check needs T = k(x)[θ..]");
  RingExtension ext = inclusion_extension(R, T);
  ClosureReport rep;
  std::vector<Valuation> over;
  std::vector<SuperElem> gens;
  for (int i = 0; i < R->nvars(); ++i) {
    gens.push_back(SuperElem::variable(T, i));
    if (R->even_kinds[static_cast<std::size_t>(i)] == VarKind::Laurent)
      gens.push_back(SuperElem::variable(T, i).inverse());
  }
  for (const auto& v : places) {
    require_ring(v, T, "place");
    if (std::all_of(gens.begin(), gens.end(), [&](const SuperElem& g) { return in_Av(v, g); })) over.push_back(v);
  }
  rep.places_used = over.size();
  const Field f = T->field();
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = sample_rng(seed, i);
    std::uniform_int_distribution<int> c5(-5, 5), c3(-3, 3), deg(0, 3), ddeg(0, 2);
    std::vector<mpq_class> num, den;
    int dn = deg(rng), dd = ddeg(rng);
    for (int k = 0; k <= dn; ++k) num.emplace_back(c5(rng));
    if (num.back() == 0) num.back() = 1;
    for (int k = 0; k < dd; ++k) den.emplace_back(c3(rng));
    den.emplace_back(1);
    MPoly dpoly = MPoly::univariate(f, 1, 0, den);
    RatFunc z(MPoly::univariate(f, 1, 0, num), dpoly);
    SuperElem elem = SuperElem::even(T, z);
    if (T->odd_count >= 2) elem += SuperElem::theta(T, 0) * SuperElem::theta(T, 1) * SuperElem::constant(T, c5(rng));
    bool in_all = std::all_of(over.begin(), over.end(), [&](const Valuation& v) { return in_Av(v, elem); });
    bool integral = is_integral(elem, ext.embedding, degree_bound).yes();
    if (in_all == integral) {
      ++rep.agreements;
      continue;
    }
    bool bound_limited = false;
    if (in_all && !integral) {
      for (const auto& pf : factor_univariate(z.den(), 0)) {
        SuperElem q = SuperElem::even(T, RatFunc(pf.poly));
        bool seen = std::any_of(over.begin(), over.end(), [&](const Valuation& v) { return in_pv(v, q); });
        if (!seen) bound_limited = true;
      }
    }
    if (bound_limited) {
      ++rep.indeterminate;
      rep.notes.push_back("pole of " + elem.to_string() + " lies outside the enumerated places");
    } else {
      ++rep.disagreements;
      rep.notes.push_back("disagreement at " + elem.to_string());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Inverse property

namespace {

bool partner_works(const std::vector<Valuation>& active, const SuperElem& x, const SuperElem& y) {
  if (!y.in_ring()) return false;
  SuperElem xy = x * y;
  return std::all_of(active.begin(), active.end(), [&](const Valuation& v) { return v.eval(xy).is_zero(); });
}

// Σ e_i x^{k_i} with CRT idempotents e_i for reduction-mod-p valuations at x = 0 or ∞.
std::optional<SuperElem> crt_partner(const std::vector<Valuation>& active, const SuperElem& x) {
  const Ring& r = x.ring();
  if (r->base != BaseRing::Z || r->nvars() != 1 || r->even_kinds.front() != VarKind::Laurent) return std::nullopt;
  std::vector<unsigned long> primes;
  for (const auto& v : active) {
    const Rule& rule = v.rule();
    if (rule.kind != Rule::Kind::ModP || v.post() || v.group().rank != 1) return std::nullopt;
    if (rule.place.kind == PlaceDatum::Kind::Finite) {
      const MPoly& pi = rule.place.poly;
      if (pi.degree(0) != 1 || !pi.coeff_in(0, 0).is_zero()) return std::nullopt;
    } else if (rule.place.kind != PlaceDatum::Kind::Infinity) {
      return std::nullopt;
    }
    if (std::find(primes.begin(), primes.end(), rule.p) != primes.end()) return std::nullopt;
    primes.push_back(rule.p);
  }
  mpz_class M = 1;
  for (auto p : primes) M *= p;
  SuperElem y(r);
  for (std::size_t i = 0; i < active.size(); ++i) {
    mpz_class p(primes[i]), Ni = M / p, inv;
    mpz_invert(inv.get_mpz_t(), Ni.get_mpz_t(), p.get_mpz_t());
    mpz_class e = Ni * inv;
    std::int64_t alpha = active[i].eval(x)[0];
    int k = static_cast<int>(active[i].rule().place.kind == PlaceDatum::Kind::Finite ? -alpha : alpha);
    y += SuperElem::even(r, rf_var(*r, 0).pow(k)) * SuperElem::constant(r, mpq_class(e));
  }
  return y;
}

std::optional<SuperElem> search_partner(const std::vector<Valuation>& active, const SuperElem& x, int bound) {
  const Ring& r = x.ring();
  std::vector<SuperElem> monos{SuperElem::constant(r, 1)};
  for (int i = 0; i < r->nvars(); ++i)
    for (int k = -bound; k <= bound; ++k) {
      if (k == 0) continue;
      SuperElem m = SuperElem::even(r, rf_var(*r, i).pow(k));
      if (m.in_ring()) monos.push_back(m);
    }
  std::vector<int> scalars;
  for (int c = 1; c <= 6; ++c) {
    scalars.push_back(c);
    scalars.push_back(-c);
  }
  for (const auto& m : monos)
    for (int c : scalars) {
      SuperElem y = m * SuperElem::constant(r, c);
      if (partner_works(active, x, y)) return y;
    }
  for (const auto& m1 : monos)
    for (const auto& m2 : monos) {
      if (&m1 == &m2) continue;
      for (int c : scalars) {
        SuperElem y = m1 + m2 * SuperElem::constant(r, c);
        if (partner_works(active, x, y)) return y;
      }
    }
  return std::nullopt;
}

}  // namespace

InverseVerdict inverse_property(const std::vector<Valuation>& lambda, std::size_t samples, std::uint64_t seed,
                                int bound) {
  if (lambda.empty()) throw Error(Errc::InvalidArgument, "empty valuation set");
  const Ring& r = lambda.front().ring();
  for (const auto& v : lambda) require_ring(v, r, "valuation");
  InverseVerdict res;
  std::vector<SuperElem> hints;
  for (const auto& v : lambda)
    for (const auto& w : v.witnesses()) hints.push_back(w.elem);
  std::vector<SuperElem> sample = structured_sample(r, samples, seed, hints);

  if (lambda.size() == 2) {
    auto p_within = [&](const Valuation& a, const Valuation& b) {
      return std::all_of(sample.begin(), sample.end(), [&](const SuperElem& y) { return !in_pv(a, y) || in_pv(b, y); });
    };
    auto criterion = [&](const Valuation& v, const Valuation& w) {
      return std::all_of(sample.begin(), sample.end(), [&](const SuperElem& y) {
        return !in_Av(w, y) || in_Av(v, y) || w.eval(y).is_infinite();
      });
    };
    if (p_within(lambda[0], lambda[1]))
      res.pair_criterion = criterion(lambda[0], lambda[1]);
    else if (p_within(lambda[1], lambda[0]))
      res.pair_criterion = criterion(lambda[1], lambda[0]);
  }

  for (const auto& x : sample) {
    std::vector<Valuation> active;
    for (const auto& v : lambda)
      if (!v.eval(x).is_infinite()) active.push_back(v);
    if (active.empty()) continue;
    SuperElem x0 = homogeneous_parts(x).even;
    std::optional<SuperElem> partner;
    std::string method;
    if (!x0.body().is_zero() && even_is_unit(*r, x0.body())) {
      SuperElem inv = x0.inverse();
      if (partner_works(active, x, inv)) {
        partner = inv;
        method = "even-part inverse";
      }
    }
    if (!partner) {
      if (auto y = crt_partner(active, x); y && partner_works(active, x, *y)) {
        partner = y;
        method = "CRT over the residue pairs";
      }
    }
    if (!partner) {
      if (auto y = search_partner(active, x, bound)) {
        partner = y;
        method = "bounded search";
      }
    }
    if (!partner) {
      res.counterexample = x;
      res.reason = "no partner for " + x.to_string() + " within bound " + std::to_string(bound);
      return res;
    }
    res.witnesses.push_back({x, *partner, method});
  }
  res.pass = true;
  res.reason = std::to_string(res.witnesses.size()) + " sampled elements have partners";
  return res;
}

// ---------------------------------------------------------------------------
// Approximation

SuperElem approximate(const std::vector<Valuation>& places, const std::vector<GValue>& targets) {
  if (places.size() != targets.size()) throw Error(Errc::InvalidArgument, "one target per place");
  check_places(places, "approximation");
  const Ring& r = places.front().ring();
  const RingDesc& d = *r;
  for (const auto& t : targets) {
    if (t.is_infinite()) throw Error(Errc::InfiniteTarget, "targets must be finite");
    if (t.group().rank != 1) throw Error(Errc::GroupMismatch, "targets live in Z");
  }
  RatFunc h = rf_const(d, 1);
  std::int64_t finite_degree = 0;
  std::optional<std::int64_t> at_infinity;
  for (std::size_t i = 0; i < places.size(); ++i) {
    const PlaceDatum& pl = places[i].rule().place;
    std::int64_t a = targets[i][0];
    if (pl.kind == PlaceDatum::Kind::Infinity) {
      at_infinity = a;
      continue;
    }
    MPoly pi = pl.poly;
    if (pi.nvars() != d.nvars()) pi = recast(RatFunc(pi), d).num();
    h = h * RatFunc(pi).pow(static_cast<int>(a));
    finite_degree += a * pi.degree(0);
  }
  if (at_infinity) {
    // Order at ∞ is deg(den) - deg(num); fix it with a power of an unused linear place.
    std::int64_t k = -*at_infinity - finite_degree;
    if (k != 0) {
      for (int c = 0;; ++c) {
        MPoly lin = MPoly::univariate(d.field(), 1, 0, {mpq_class(-c), mpq_class(1)});
        bool used = std::any_of(places.begin(), places.end(), [&](const Valuation& v) {
          return v.rule().place.kind == PlaceDatum::Kind::Finite && v.rule().place.poly == lin;
        });
        if (!used) {
          h = h * RatFunc(lin).pow(static_cast<int>(k));
          break;
        }
      }
    }
  }
  SuperElem out = SuperElem::even(r, h);
  for (std::size_t i = 0; i < places.size(); ++i)
    if (!(places[i].eval(out) == targets[i]))
      throw std::logic_error("approximation check failed at " + places[i].label());
  return out;
}

SuperElem strong_approximate(const std::vector<Valuation>& places, const std::vector<SuperElem>& anchors) {
  if (places.size() != anchors.size()) throw Error(Errc::InvalidArgument, "one anchor per place");
  check_places(places, "strong approximation");
  const Ring& r = places.front().ring();
  const RingDesc& d = *r;
  const Field f = d.field();
  std::vector<std::int64_t> alpha;
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (!same_ring(anchors[i].ring(), r)) throw Error(Errc::RingMismatch, "anchor outside the superfield");
    GValue a = places[i].eval(anchors[i]);
    if (a.is_infinite()) throw Error(Errc::AnchorInSupport, anchors[i].to_string() + " has value inf");
    if (places[i].rule().place.kind != PlaceDatum::Kind::Finite)
      throw Error(Errc::Unsupported, "strong approximation is built for finite places");
    alpha.push_back(a[0]);
  }
  auto pi_of = [&](std::size_t i) {
    MPoly pi = places[i].rule().place.poly;
    return pi.nvars() == d.nvars() ? pi : recast(RatFunc(pi), d).num();
  };
  MPoly M = MPoly::constant(f, 1, 1);
  for (std::size_t i = 0; i < places.size(); ++i)
    if (alpha[i] < 0) M = M * pi_of(i).pow(static_cast<unsigned>(-alpha[i]));
  std::vector<MPoly> mods, residues;
  for (std::size_t i = 0; i < places.size(); ++i) {
    std::int64_t c = std::max<std::int64_t>(0, -alpha[i]);
    MPoly m = pi_of(i).pow(static_cast<unsigned>(alpha[i] + 1 + c));
    RatFunc b = RatFunc(M) * anchors[i].body();
    auto eg = ext_gcd(b.den(), m, 0);
    if (!eg.g.is_one()) throw std::logic_error("anchor denominator meets the place");
    residues.push_back((b.num() * eg.s).divmod_in(0, m).second);
    mods.push_back(std::move(m));
  }
  MPoly y(f, 1);
  for (std::size_t i = 0; i < mods.size(); ++i) {
    MPoly N = MPoly::constant(f, 1, 1);
    for (std::size_t j = 0; j < mods.size(); ++j)
      if (j != i) N = N * mods[j];
    auto eg = ext_gcd(N, mods[i], 0);
    y += residues[i] * N * eg.s.divmod_in(0, mods[i]).second;
  }
  MPoly all = MPoly::constant(f, 1, 1);
  for (const auto& m : mods) all = all * m;
  y = y.divmod_in(0, all).second;
  SuperElem out = SuperElem::even(r, RatFunc(y, M));
  for (std::size_t i = 0; i < places.size(); ++i) {
    GValue vx = places[i].eval(out), vd = places[i].eval(out - anchors[i]);
    if (vx.is_infinite() || vx[0] != alpha[i] || !(vd > vx))
      throw std::logic_error("strong approximation check failed at " + places[i].label());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ramification

RamificationData ramification_table(const RingExtension& ext, const Valuation& v, std::vector<Valuation> lambda,
                                    int degree_bound) {
  require_ring(v, ext.small, "v");
  RamificationData data;
  std::int64_t n = 1;
  for (const auto& g : ext.generators) {
    if (!g.is_even() || g.body().is_zero()) continue;
    auto deg = algebraic_degree(g, ext.embedding, degree_bound);
    if (!deg) throw Error(Errc::InfiniteRank, "no relation of degree <= " + std::to_string(degree_bound) + " for " + g.to_string());
    n = std::max<std::int64_t>(n, *deg);
  }
  data.n = n;

  const Rule& rule = v.rule();
  const bool place_v = is_rank_one_place(v);
  if (lambda.empty()) {
    if (v.is_trivial()) {
      lambda.push_back(trivial_valuation(ext.big));
    } else if (place_v && ext.big->nvars() == 1) {
      if (rule.place.kind == PlaceDatum::Kind::Infinity) {
        if (!ext.embedding.even_images.front().body().den().is_constant())
          throw Error(Errc::Unsupported, "infinite place under a rational substitution");
        lambda.push_back(place_valuation(ext.big, PlaceDatum::infinity(0)));
      } else {
        MPoly pi = rule.place.poly;
        SuperElem image = ext.apply(SuperElem::even(ext.small, recast(RatFunc(pi), *ext.small)));
        for (const auto& pf : factor_univariate(image.body().num(), 0))
          lambda.push_back(place_valuation(ext.big, PlaceDatum::finite(pf.poly)));
      }
    } else {
      throw Error(Errc::Unsupported, "extensions of " + v.label() + " are not enumerated");
    }
  }

  for (const auto& w : lambda) {
    ExtensionVerdict ver = check_extension(ext, v, w);
    if (!ver.extends) throw Error(Errc::InvalidArgument, w.label() + " does not extend " + v.label() + ": " + ver.reason);
    RamificationEntry e{w, ver.J->index(), std::nullopt, 0};
    if (w.group().rank == 0) e.e = 1;
    e.torsion_order = e.e;
    if (v.is_trivial() && w.is_trivial()) {
      e.f = n;
    } else if (place_v && is_rank_one_place(w)) {
      const PlaceDatum& wp = w.rule().place;
      if (wp.kind == PlaceDatum::Kind::Infinity) {
        e.f = 1;
      } else if (rule.place.kind == PlaceDatum::Kind::Finite) {
        // Residue field k[t]/(q) over the image of k[x]/(π): the powers of
        // the class of x span a subfield of degree deg π.
        const MPoly& q = wp.poly;
        const int dq = q.degree(0);
        MPoly xbar = ext.embedding.even_images.front().body().num().divmod_in(0, q).second;
        std::vector<std::vector<mpq_class>> rows;
        MPoly pw = MPoly::constant(q.field(), 1, 1);
        for (int k = 0; k <= dq; ++k) {
          std::vector<mpq_class> row(static_cast<std::size_t>(dq), 0);
          for (int i = 0; i < dq; ++i) {
            MPoly c = pw.coeff_in(0, i);
            if (!c.is_zero()) row[static_cast<std::size_t>(i)] = c.constant_value();
          }
          rows.push_back(row);
          pw = (pw * xbar).divmod_in(0, q).second;
        }
        int sub = rank_q(rows);
        if (sub != rule.place.poly.degree(0) || dq % sub != 0)
          throw std::logic_error("residue field degree mismatch at " + w.label());
        e.f = dq / sub;
      }
    }
    data.entries.push_back(e);
  }

  bool all_finite = true;
  for (const auto& e : data.entries) {
    if (!e.f) {
      all_finite = false;
      continue;
    }
    data.sum_ef += e.e * *e.f;
  }
  if (!all_finite)
    data.inequality = "undecided";
  else if (data.sum_ef == n)
    data.inequality = "holds_with_equality";
  else if (data.sum_ef < n)
    data.inequality = "holds";
  else
    data.inequality = "violated";
  data.note = "e is the index of h(G) in H; the (G:H) notation in the definition reads transposed for these fixtures";
  return data;
}

}  // namespace sval
