#include "sval/pairs.hpp"

#include <algorithm>
#include <unordered_set>

#include "sval/error.hpp"

namespace sval {

// ---------------------------------------------------------------------------
// Pairs

namespace {

SuperElem inverse_in_ring(const SuperElem& g, bool& ok) {
  ok = false;
  if (!g.is_even() || g.body().is_zero()) return g;
  SuperElem inv = g.inverse();
  ok = inv.in_ring();
  return inv;
}

// Exponent of x for each term of a Laurent body, with its coefficient.
std::vector<std::pair<std::int64_t, mpq_class>> laurent_terms(const RatFunc& f) {
  std::vector<std::pair<std::int64_t, mpq_class>> out;
  std::int64_t shift = f.den().degree(0);
  for (const auto& [m, c] : f.num().terms()) out.emplace_back(static_cast<std::int64_t>(m.e[0]) - shift, c);
  return out;
}

bool divisible(const mpq_class& c, unsigned long p) {
  return c.get_den() == 1 && mpz_divisible_ui_p(c.get_num().get_mpz_t(), p);
}

}  // namespace

ValuationPair pair_of(const Valuation& v) {
  ValuationPair pair;
  pair.ring = v.ring();
  pair.in_A = [v](const SuperElem& x) { return in_Av(v, x); };
  pair.in_p = [v](const SuperElem& x) { return in_pv(v, x); };
  pair.provenance = ValuationPair::Provenance::FromValuation;
  pair.label = "pair(" + v.label() + ")";
  for (const auto& w : v.witnesses()) pair.hints.push_back(w.elem);
  if (v.rule().kind == Rule::Kind::ModP) pair.primes.push_back(v.rule().p);
  return pair;
}

ValuationPair laurent_pair(const Ring& r, unsigned long p, bool at_infinity) {
  if (r->base != BaseRing::Z || r->nvars() != 1 || r->even_kinds[0] != VarKind::Laurent)
    throw Error(Errc::Unsupported, "Laurent pair needs Z[x,x^-1][...], got " + r->to_string());
  if (!is_prime_number(p)) throw Error(Errc::InvalidArgument, "Laurent pair needs a prime");
  const int sgn = at_infinity ? -1 : 1;
  ValuationPair pair;
  pair.ring = r;
  pair.in_A = [p, sgn](const SuperElem& x) {
    if (!x.in_ring()) return false;
    for (const auto& [e, c] : laurent_terms(x.body()))
      if (sgn * e < 0 && !divisible(c, p)) return false;
    return true;
  };
  pair.in_p = [p, sgn](const SuperElem& x) {
    if (!x.in_ring()) return false;
    for (const auto& [e, c] : laurent_terms(x.body()))
      if (sgn * e <= 0 && !divisible(c, p)) return false;
    return true;
  };
  std::string ps = std::to_string(p), xn = r->even_names[0];
  pair.label = at_infinity ? "(Z[" + xn + "^-1]+" + ps + "R, " + xn + "^-1*B+" + ps + "R)"
                           : "(Z[" + xn + "]+" + ps + "R, " + xn + "*A+" + ps + "R)";
  SuperElem x = SuperElem::variable(r, 0);
  pair.hints = {x, x.inverse(), SuperElem::constant(r, p)};
  pair.primes = {p};
  return pair;
}

ValuationPair polynomial_pair(const Ring& r, const MPoly& pi) {
  if (!r->is_superfield() || r->nvars() != 1) throw Error(Errc::Unsupported, "polynomial pair needs k(x)[...]");
  ValuationPair pair;
  pair.ring = r;
  pair.in_A = [](const SuperElem& x) { return x.body().is_polynomial(); };
  pair.in_p = [pi](const SuperElem& x) {
    const RatFunc& f = x.body();
    return f.is_polynomial() && (f.is_zero() || f.num().try_div(pi).has_value());
  };
  pair.label = "(k[" + r->even_names[0] + "], (" + pi.to_string(r->even_names) + "))";
  pair.hints = {SuperElem::even(r, RatFunc(pi)), SuperElem::variable(r, 0)};
  return pair;
}

bool pair_precedes(const ValuationPair& a, const ValuationPair& b, const std::vector<SuperElem>& sample) {
  for (const auto& x : sample) {
    if (a.in_A(x) && !b.in_A(x)) return false;
    if (a.in_A(x) && a.in_p(x) != b.in_p(x)) return false;
  }
  return true;
}

std::vector<SuperElem> structured_sample(const Ring& r, std::size_t random_count, std::uint64_t seed,
                                         const std::vector<SuperElem>& hints) {
  std::vector<SuperElem> base = probe_pool(r);
  for (const auto& h : hints) {
    base.push_back(h);
    bool ok = false;
    SuperElem inv = inverse_in_ring(h, ok);
    if (ok) base.push_back(inv);
  }
  std::vector<SuperElem> out = base;
  std::size_t n = std::min<std::size_t>(base.size(), 18);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.push_back(base[i] * base[j]);
  ElemShape shape;
  for (std::size_t i = 0; i < random_count; ++i) {
    Rng rng = sample_rng(seed, i);
    out.push_back(random_elem(rng, r, shape));
  }
  std::unordered_set<std::string> seen;
  std::vector<SuperElem> unique;
  for (auto& x : out)
    if (seen.insert(x.to_string()).second) unique.push_back(std::move(x));
  return unique;
}

namespace {

// Even elements of p used as x' (or z) in witness searches.
std::vector<SuperElem> witness_candidates(const ValuationPair& pair, int bound, bool require_p) {
  std::vector<SuperElem> gens, core;
  for (const auto& g : probe_pool(pair.ring, pair.primes))
    if (g.is_even()) gens.push_back(g);
  for (const auto& h : pair.hints) {
    if (!h.is_even()) continue;
    gens.push_back(h);
    core.push_back(h);
    bool ok = false;
    SuperElem inv = inverse_in_ring(h, ok);
    if (ok) {
      gens.push_back(inv);
      core.push_back(inv);
    }
  }
  std::vector<SuperElem> out;
  auto keep = [&](const SuperElem& c) {
    if (!require_p || pair.in_p(c)) out.push_back(c);
  };
  if (!require_p) out.push_back(SuperElem::constant(pair.ring, 1));
  for (const auto& g : gens) {
    SuperElem acc = g;
    for (int a = 1; a <= bound; ++a, acc = acc * g) keep(acc);
  }
  for (std::size_t i = 0; i < core.size(); ++i)
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      SuperElem ga = core[i];
      for (int a = 1; a <= bound; ++a, ga = ga * core[i]) {
        SuperElem gb = core[j];
        for (int b = 1; b <= bound; ++b, gb = gb * core[j]) keep(ga * gb);
      }
    }
  return out;
}

std::optional<std::string> structural_failure(const ValuationPair& pair, const std::vector<SuperElem>& sample) {
  const Ring& r = pair.ring;
  SuperElem one = SuperElem::constant(r, 1);
  if (!pair.in_A(one)) return "1 is not in A";
  if (pair.in_p(one)) return "1 lies in p";
  for (int k = 0; k < r->odd_count; ++k)
    if (!pair.in_p(SuperElem::theta(r, k))) return "J_R is not contained in p";
  std::vector<SuperElem> inA;
  for (const auto& x : sample) {
    if (pair.in_p(x) && !pair.in_A(x)) return "p is not contained in A at " + x.to_string();
    if (pair.in_A(x) && inA.size() < 30) inA.push_back(x);
  }
  for (std::size_t i = 0; i < inA.size(); ++i)
    for (std::size_t j = i; j < inA.size(); ++j) {
      const SuperElem &a = inA[i], &b = inA[j];
      SuperElem s = a + b, m = a * b;
      if (!pair.in_A(s) || !pair.in_A(m)) return "A is not closed at " + a.to_string() + ", " + b.to_string();
      bool pa = pair.in_p(a), pb = pair.in_p(b), pm = pair.in_p(m);
      if ((pa || pb) && !pm) return "p is not an ideal of A at " + a.to_string() + ", " + b.to_string();
      if (pa && pb && !pair.in_p(s)) return "p is not additive at " + a.to_string() + ", " + b.to_string();
      if (!pa && !pb && pm) return "p is not prime at " + a.to_string() + ", " + b.to_string();
    }
  return std::nullopt;
}

}  // namespace

PairVerdict is_valuation_pair(const ValuationPair& pair, const PairOptions& opt) {
  if (opt.bound < 1) throw Error(Errc::InvalidArgument, "pair search bound must be >= 1");
  PairVerdict out;
  out.bound = opt.bound;
  std::vector<SuperElem> sample = structured_sample(pair.ring, opt.samples, opt.seed, pair.hints);
  if (auto why = structural_failure(pair, sample)) {
    out.reason = *why;
    return out;
  }
  std::vector<SuperElem> outside;
  for (const auto& x : sample)
    if (!pair.in_A(x)) outside.push_back(x);
  std::vector<SuperElem> cands = witness_candidates(pair, opt.bound, true);
  std::vector<std::optional<SuperElem>> found(outside.size());
  const long n = static_cast<long>(outside.size());
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (long i = 0; i < n; ++i) {
    const SuperElem& x = outside[static_cast<std::size_t>(i)];
    for (const auto& c : cands) {
      SuperElem prod = x * c;
      if (pair.in_A(prod) && !pair.in_p(prod)) {
        found[static_cast<std::size_t>(i)] = c;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < outside.size(); ++i) {
    if (!found[i]) {
      out.counterexample = outside[i];
      out.reason = "no x' in p with x x' in A \\ p up to exponent " + std::to_string(opt.bound) + " for x = " + outside[i].to_string();
      return out;
    }
    out.witnesses.emplace_back(outside[i], *found[i]);
  }
  out.pass = true;
  return out;
}

bool pair_greater(const ValuationPair& pair, const SuperElem& x, const SuperElem& y, const PairOptions& opt) {
  for (const auto& z : witness_candidates(pair, opt.bound, false)) {
    SuperElem zy = z * y;
    if (pair.in_p(z * x) && pair.in_A(zy) && !pair.in_p(zy)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Valuation from a pair

namespace {

struct PairGroup {
  ValuationPair pair;
  std::vector<SuperElem> gens, inv, gK;  // top coordinate first
  int K = 16;

  // Coordinate i of y is >= 0, given that all earlier coordinates vanish.
  bool ge(std::size_t i, const SuperElem& y) const {
    return i + 1 < gens.size() ? pair.in_A(y * gK[i + 1]) : pair.in_A(y);
  }

  RawValue eval(const SuperElem& z) const {
    if (z.is_zero()) return std::nullopt;
    if (gens.empty()) {
      if (pair.in_p(z)) return std::nullopt;
      if (pair.in_A(z)) return std::vector<std::int64_t>{};
      throw Error(Errc::GroupUnrecognized, "element outside A for a pair without positive units");
    }
    if (pair.in_p(z)) {
      SuperElem t = z;
      for (int k = 0; k < K; ++k) t = t * inv[0];
      if (pair.in_p(t)) return std::nullopt;
    }
    SuperElem y = z;
    std::vector<std::int64_t> e(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::int64_t k = 0;
      if (ge(i, y)) {
        while (true) {
          SuperElem next = y * inv[i];
          if (!ge(i, next)) break;
          y = std::move(next);
          if (++k > K) throw Error(Errc::GroupUnrecognized, "value outside the search box");
        }
      } else {
        do {
          y = y * gens[i];
          if (--k < -K) throw Error(Errc::GroupUnrecognized, "value outside the search box");
        } while (!ge(i, y));
      }
      e[i] = k;
    }
    if (!pair.in_A(y) || pair.in_p(y)) throw Error(Errc::GroupUnrecognized, "residual " + y.to_string() + " is not a unit of the pair");
    return e;
  }
};

SuperElem power(const SuperElem& g, int k) {
  SuperElem acc = SuperElem::constant(g.ring(), 1);
  for (int i = 0; i < k; ++i) acc = acc * g;
  return acc;
}

}  // namespace

Valuation valuation_from_pair(const ValuationPair& pair, const PairOptions& opt) {
  const Ring& r = pair.ring;
  const int K = opt.box, Kc = 2 * opt.box;
  // Even units of R.
  std::vector<SuperElem> base;
  for (const auto& g : probe_pool(r, pair.primes))
    if (g.is_even()) base.push_back(g);
  for (const auto& h : pair.hints)
    if (h.is_even() && !h.body().is_zero()) base.push_back(h);
  std::vector<SuperElem> units;
  auto add_unit = [&](const SuperElem& u) {
    for (const auto& w : units)
      if (w == u) return;
    units.push_back(u);
  };
  std::vector<SuperElem> hint_units;
  for (const auto& g : base) {
    bool ok = false;
    inverse_in_ring(g, ok);
    if (ok) add_unit(g);
  }
  for (const auto& h : pair.hints) {
    bool ok = false;
    inverse_in_ring(h, ok);
    if (ok) hint_units.push_back(h);
  }
  for (std::size_t i = 0; i < hint_units.size(); ++i)
    for (std::size_t j = i + 1; j < hint_units.size(); ++j) {
      add_unit(hint_units[i] * hint_units[j]);
      add_unit(hint_units[i] * hint_units[j].inverse());
    }
  struct Pos {
    SuperElem u, inv_pow;
  };
  std::vector<Pos> pos;
  for (const auto& u : units) {
    SuperElem p = u;
    if (pair.in_p(u)) p = u;
    else if (!pair.in_A(u)) p = u.inverse();
    else continue;
    pos.push_back({p, p.inverse().pow(Kc)});
  }
  // much_less(a, b): v(b) > Kc v(a).
  auto much_less = [&](const Pos& a, const Pos& b) { return pair.in_p(b.u * a.inv_pow); };
  std::vector<std::vector<Pos>> classes;
  for (const auto& u : pos) {
    bool placed = false;
    for (auto& c : classes)
      if (!much_less(c[0], u) && !much_less(u, c[0])) {
        c.push_back(u);
        placed = true;
        break;
      }
    if (!placed) classes.push_back({u});
  }
  if (classes.size() > static_cast<std::size_t>(kMaxGroupRank))
    throw Error(Errc::GroupUnrecognized, "more than " + std::to_string(kMaxGroupRank) + " archimedean classes of units");
  std::sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) { return much_less(b[0], a[0]); });

  PairGroup pg;
  pg.pair = pair;
  pg.K = K;
  const std::size_t n = classes.size();
  pg.gens.assign(n, SuperElem());
  pg.inv.assign(n, SuperElem());
  pg.gK.assign(n, SuperElem());
  auto zero_at = [&](std::size_t i, const SuperElem& y) { return pg.ge(i, y) && pg.ge(i, y.inverse()); };
  for (std::size_t i = n; i-- > 0;) {
    // Minimal element of the class modulo lower classes.
    SuperElem best = classes[i][0].u;
    for (const auto& h : classes[i])
      if (!pg.ge(i, h.u * best.inverse())) best = h.u;
    pg.gens[i] = best;
    pg.inv[i] = best.inverse();
    pg.gK[i] = best.pow(K);
    for (const auto& hp : classes[i]) {
      const SuperElem& h = hp.u;
      bool multiple = false;
      SuperElem y = h;
      for (int k = 1; k <= Kc && !multiple; ++k) {
        y = y * pg.inv[i];
        multiple = zero_at(i, y);
      }
      if (!multiple)
        throw Error(Errc::GroupUnrecognized, "value of " + h.to_string() + " is not a multiple of that of " + best.to_string());
    }
  }
  if (n == 0) {
    for (const auto& x : structured_sample(r, 0, opt.seed, pair.hints))
      if (!pair.in_A(x)) throw Error(Errc::GroupUnrecognized, "A is proper but no unit of R has nonzero value");
  }
  std::vector<Witness> ws;
  GroupDesc g{static_cast<int>(n)};
  for (std::size_t i = 0; i < n; ++i) ws.push_back({pg.gens[i], GValue::unit(g, static_cast<int>(i))});
  auto fn = [pg](const SuperElem& x) { return pg.eval(x); };
  return custom_valuation(r, static_cast<int>(n), fn, ws, "from" + pair.label);
}

InvertibleOutside invertible_outside(const Valuation& v, const SuperElem& x) {
  bool ok = false;
  SuperElem inv = inverse_in_ring(x, ok);
  if (!ok) throw Error(Errc::NotInvertible, x.to_string() + " is not invertible in " + v.ring()->to_string());
  if (in_Av(v, x)) throw Error(Errc::AlreadyInA, x.to_string() + " already lies in A_v");
  return {v.eval(x), v.eval(inv), in_Av(v, inv)};
}

// ---------------------------------------------------------------------------
// Convex ideals

ConvexIdeal ideal_of_segment(const Segment& h, const Valuation& v) {
  if (v.is_trivial()) throw Error(Errc::TrivialValuation, "segments of the zero group");
  if (!(h.group == v.group())) throw Error(Errc::GroupMismatch, "segment in " + h.group.to_string());
  ConvexIdeal a;
  a.v = v;
  a.datum = h;
  a.label = "a[" + h.to_string() + "]";
  GValue zero = GValue::zero(v.group());
  a.member = [v, h, zero](const SuperElem& x) {
    GValue val = v.eval(x);
    return val.is_infinite() || (zero <= val && !h.contains(val));
  };
  return a;
}

ConvexIdeal ideal_from_predicate(const Valuation& v, std::function<bool(const SuperElem&)> member, const std::string& label) {
  ConvexIdeal a;
  a.v = v;
  a.member = std::move(member);
  a.label = label;
  return a;
}

std::optional<SuperElem> element_of_value(const Valuation& v, const GValue& alpha) {
  if (alpha.is_infinite()) return SuperElem(v.ring());
  const auto& ws = v.witnesses();
  const int m = static_cast<int>(ws.size()), rank = v.group().rank;
  if (m == 0) return alpha.is_zero() ? std::optional<SuperElem>(SuperElem::constant(v.ring(), 1)) : std::nullopt;
  std::int64_t amax = 0;
  for (int i = 0; i < rank; ++i) amax = std::max<std::int64_t>(amax, std::abs(alpha[i]));
  const int R = static_cast<int>(std::min<std::int64_t>(amax + 2, m <= 3 ? 10 : 4));
  std::vector<int> c(static_cast<std::size_t>(m), -R);
  std::optional<std::vector<int>> best;
  int best_norm = 0;
  while (true) {
    bool hit = true;
    for (int i = 0; i < rank && hit; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < m; ++j) s += c[static_cast<std::size_t>(j)] * ws[static_cast<std::size_t>(j)].value[i];
      hit = s == alpha[i];
    }
    if (hit) {
      int norm = 0;
      for (int x : c) norm += std::abs(x);
      if (!best || norm < best_norm) {
        best = c;
        best_norm = norm;
      }
    }
    int k = 0;
    while (k < m && ++c[static_cast<std::size_t>(k)] > R) c[static_cast<std::size_t>(k++)] = -R;
    if (k == m) break;
  }
  if (!best) return std::nullopt;
  SuperElem acc = SuperElem::constant(v.ring(), 1);
  for (int j = 0; j < m; ++j) {
    int e = (*best)[static_cast<std::size_t>(j)];
    SuperElem g = ws[static_cast<std::size_t>(j)].elem;
    if (e < 0) {
      bool ok = false;
      g = inverse_in_ring(g, ok);
      if (!ok) g = g.inverse();
    }
    acc = acc * power(g, std::abs(e));
  }
  return acc;
}

Segment segment_of_ideal(const ConvexIdeal& a, int box) {
  const Valuation& v = a.v;
  if (v.is_trivial()) throw Error(Errc::TrivialValuation, "segments of the zero group");
  GroupDesc g = v.group();
  auto in_av = [&](const GValue& alpha) {
    auto e = element_of_value(v, alpha);
    if (!e) throw Error(Errc::GroupUnrecognized, "no element of value " + alpha.to_string());
    return a.member(*e);
  };
  std::vector<GValue> S, all = box_elements(g, box);
  for (const auto& alpha : all)
    if (!in_av(alpha) && !in_av(-alpha)) S.push_back(alpha);
  auto matches = [&](const Segment& s) {
    for (const auto& alpha : all)
      if (s.contains(alpha) != (std::find(S.begin(), S.end(), alpha) != S.end())) return false;
    return true;
  };
  if (S.empty()) return Segment::empty(g);
  if (S.size() == all.size()) return Segment::whole(g);
  for (const auto& iso : isolated_subgroups(g))
    if (matches(iso)) return iso;
  GValue top = *std::max_element(S.begin(), S.end());
  Segment s = Segment::interval(top);
  if (matches(s)) return s;
  throw Error(Errc::InvalidArgument, "ideal values do not form a segment on the box");
}

SampleReport is_v_convex(const ConvexIdeal& a, const AxiomOptions& opt) {
  const Ring r = a.v.ring();
  ConvexIdeal ac = a;
  SampleCheck check = [ac, r, opt](Rng& rng, std::size_t) -> std::optional<std::string> {
    SuperElem x = random_elem(rng, r, opt.shape), u = random_elem(rng, r, opt.shape);
    const Valuation& v = ac.v;
    if (!ac.member(x)) return std::nullopt;
    auto parts = homogeneous_parts(x);
    if (!ac.member(parts.even) || !ac.member(parts.odd)) return "not graded at " + x.to_string();
    if (!in_Av(v, x)) return "member outside A_v: " + x.to_string();
    if (in_Av(v, u) && !ac.member(x * u)) return "not an A_v-ideal at " + x.to_string() + ", " + u.to_string();
    SuperElem y = random_elem(rng, r, opt.shape);
    if (v.eval(y) >= v.eval(x) && !ac.member(y)) return "not convex at " + x.to_string() + ", " + y.to_string();
    return std::nullopt;
  };
  return opt.parallel ? run_samples_omp(opt.seed, opt.trials, check) : run_samples_serial(opt.seed, opt.trials, check);
}

std::optional<bool> ideal_included(const ConvexIdeal& a, const ConvexIdeal& b, const std::vector<SuperElem>& sample) {
  bool a_not_b = false, b_not_a = false;
  for (const auto& x : sample) {
    bool ia = a.member(x), ib = b.member(x);
    a_not_b = a_not_b || (ia && !ib);
    b_not_a = b_not_a || (ib && !ia);
  }
  if (a_not_b && b_not_a) return std::nullopt;
  return !a_not_b;
}

// ---------------------------------------------------------------------------
// Dominance

Dominance dominates(const Valuation& w, const Valuation& v) {
  if (!same_ring(w.ring(), v.ring())) throw Error(Errc::RingMismatch, "valuations on different rings");
  Dominance d;
  std::vector<SuperElem> hints;
  for (const auto& x : v.witnesses()) hints.push_back(x.elem);
  for (const auto& x : w.witnesses()) hints.push_back(x.elem);
  std::vector<SuperElem> sample = structured_sample(v.ring(), 40, 11, hints);
  for (const auto& x : sample) {
    GValue vx = v.eval(x), wx = w.eval(x);
    std::string fail;
    if (vx.is_infinite() != wx.is_infinite()) fail = "supp(w) != supp(v)";
    else if (in_pv(w, x) && !in_pv(v, x)) fail = "p_w is not contained in p_v";
    else if (in_Av(v, x) && !in_Av(w, x)) fail = "A_v is not contained in A_w";
    if (!fail.empty()) {
      d.reason = fail + " at " + x.to_string();
      d.counterexample = x;
      return d;
    }
  }
  auto h = hom_from_witnesses(v, w);
  if (!h) {
    d.reason = "no integer order map carries v to w on the witnesses";
    return d;
  }
  if (!h->is_order_preserving()) {
    d.reason = "map " + h->to_string() + " does not preserve order";
    return d;
  }
  for (const auto& x : sample)
    if (!(h->apply(v.eval(x)) == w.eval(x))) {
      d.reason = "h(v(x)) != w(x) at " + x.to_string();
      d.counterexample = x;
      return d;
    }
  d.yes = true;
  d.h = h;
  return d;
}

std::vector<PsiEntry> psi_v(const Valuation& v) {
  GroupDesc g = v.group();
  if (g.rank > kMaxGroupRank) throw Error(Errc::RankTooLarge, "rank " + std::to_string(g.rank));
  std::vector<PsiEntry> out;
  for (const auto& iso : isolated_subgroups(g)) {
    int drop = static_cast<int>(iso.basis.size());
    OrderHom h = OrderHom::projection(g, drop);
    Valuation w = drop == 0 ? v : v.then(h, v.label() + "/Z^" + std::to_string(drop));
    out.push_back({iso, w, h});
  }
  return out;
}

GValue InducedQuotient::eval(const SuperElem& x) const {
  if (!in_Av(w, x)) throw Error(Errc::NotInRing, x.to_string() + " is outside A_w");
  if (in_pv(w, x)) return GValue::infinity(v.group());
  return v.eval(x);
}

InducedQuotient induced_on_quotient(const Valuation& w, const Valuation& v) {
  Dominance d = dominates(w, v);
  if (!d.yes) throw Error(Errc::NotDominating, d.reason);
  return {w, v, *d.h, hom_kernel(*d.h)};
}

SampleReport verify_induced(const InducedQuotient& q, const AxiomOptions& opt) {
  const Ring r = q.v.ring();
  std::vector<SuperElem> lifts;
  GValue zw = GValue::zero(q.w.group());
  for (const auto& wi : q.w.witnesses())
    if (wi.value > zw) lifts.push_back(wi.elem);
  InducedQuotient qc = q;
  auto into_Aw = [qc, lifts](SuperElem x) {
    for (int k = 0; k < 8 && !in_Av(qc.w, x) && !lifts.empty(); ++k) x = x * lifts[0];
    return x;
  };
  SampleCheck check = [qc, r, opt, into_Aw](Rng& rng, std::size_t) -> std::optional<std::string> {
    SuperElem x = into_Aw(random_elem(rng, r, opt.shape)), y = into_Aw(random_elem(rng, r, opt.shape));
    if (!in_Av(qc.w, x) || !in_Av(qc.w, y)) return std::nullopt;
    GValue a = qc.eval(x), b = qc.eval(y);
    if (!a.is_infinite() && !qc.kernel.contains(a)) return "value " + a.to_string() + " outside h^-1(0) at " + x.to_string();
    if (a.is_infinite() != in_pv(qc.w, x)) return "support differs from p_w at " + x.to_string();
    bool nonneg = !a.is_infinite() && a >= GValue::zero(a.group());
    if (!a.is_infinite() && nonneg != in_Av(qc.v, x)) return "A differs from A_v/p_w at " + x.to_string();
    if (!(qc.eval(x * y) == a + b)) return "not multiplicative at " + x.to_string() + ", " + y.to_string();
    if (qc.eval(x + y) < gmin(a, b)) return "ultrametric inequality fails at " + x.to_string() + ", " + y.to_string();
    return std::nullopt;
  };
  return opt.parallel ? run_samples_omp(opt.seed, opt.trials, check) : run_samples_serial(opt.seed, opt.trials, check);
}

}  // namespace sval
