#include "sval/zariski.hpp"

#include <algorithm>
#include <map>

#include "sval/error.hpp"
#include "sval/pairs.hpp"

namespace sval {

std::string ZRPoint::to_string(const std::vector<std::string>& names) const {
  if (kind == Kind::Trivial) return "trivial";
  return place.to_string(names);
}

std::string ZRPoint::to_json(const std::vector<std::string>& names) const {
  if (kind == Kind::Trivial) return R"({"kind":"trivial"})";
  if (place.kind == PlaceDatum::Kind::Infinity) return R"({"kind":"infinity"})";
  return R"({"kind":"finite","poly":")" + place.poly.to_string(names) + "\"}";
}

bool operator==(const ZRPoint& a, const ZRPoint& b) {
  if (a.kind != b.kind) return false;
  return a.kind == ZRPoint::Kind::Trivial || a.place == b.place;
}

namespace {

void check_function_field(const Ring& L) {
  if (!L->is_superfield() || L->nvars() != 1)
    throw Error(Errc::UnsupportedField, L->to_string() + " is not of the form k(x)[θ..] with k = Q or F_p");
}

std::vector<mpq_class> height_set(int height) {
  std::vector<mpq_class> cs;
  for (int b = 1; b <= height; ++b)
    for (int a = -height; a <= height; ++a) {
      mpq_class q(a, b);
      q.canonicalize();
      if (std::find(cs.begin(), cs.end(), q) == cs.end()) cs.push_back(q);
    }
  std::sort(cs.begin(), cs.end(), [](const mpq_class& x, const mpq_class& y) {
    if (abs(x) != abs(y)) return abs(x) < abs(y);
    return x > y;
  });
  return cs;
}

// Monic polynomials of degree d with the given coefficient choices (lowest coefficient varies fastest).
std::vector<MPoly> monic_polys(const Field& f, int d, const std::vector<mpq_class>& coeffs) {
  std::vector<MPoly> out;
  std::vector<std::size_t> digit(static_cast<std::size_t>(d), 0);
  while (true) {
    std::vector<mpq_class> c;
    for (auto i : digit) c.push_back(coeffs[i]);
    c.emplace_back(1);
    out.push_back(MPoly::univariate(f, 1, 0, c));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == coeffs.size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return out;
}

std::vector<SuperElem> K_generators(const ZRSpace& s) {
  std::vector<SuperElem> gens;
  if (s.K->nvars() == 0) return gens;
  gens.push_back(SuperElem::variable(s.L, 0));
  if (s.K->even_kinds.front() == VarKind::Laurent) gens.push_back(SuperElem::variable(s.L, 0).inverse());
  return gens;
}

bool contains_K(const Valuation& v, const std::vector<SuperElem>& gens) {
  return std::all_of(gens.begin(), gens.end(), [&](const SuperElem& g) { return in_Av(v, g); });
}

bool in_list(const std::vector<ZRPoint>& list, const ZRPoint& p) {
  return std::find(list.begin(), list.end(), p) != list.end();
}

}  // namespace

ZRSpace make_space(const Ring& L, const Ring& K) {
  check_function_field(L);
  if (K->odd_count > L->odd_count || !(K->field() == L->field()))
    throw Error(Errc::RingMismatch, K->to_string() + " does not sit inside " + L->to_string());
  if (K->nvars() > 1 || (K->nvars() == 1 && K->even_names != L->even_names))
    throw Error(Errc::RingMismatch, K->to_string() + " does not sit inside " + L->to_string());
  if (K->nvars() == 1 && K->even_kinds.front() == VarKind::Rational)
    throw Error(Errc::InvalidArgument, "K = L gives ZR(L, L) = {L}, the excluded algebraic case");
  ZRSpace s;
  s.L = L;
  s.K = K;
  s.metadata = "k = " + L->field().to_string() +
               " is not algebraically closed: closed points are monic irreducibles; topology predicates range over the enumeration only";
  return s;
}

const std::vector<ZRPoint>& enumerate_points(ZRSpace& s, int degree_bound, int height_bound) {
  if (degree_bound < 0) throw Error(Errc::InvalidArgument, "negative degree bound");
  s.degree_bound = degree_bound;
  s.height_bound = height_bound;
  s.points.clear();
  s.valuations.clear();
  auto gens = K_generators(s);
  auto add = [&](const ZRPoint& p, Valuation v) {
    if (!contains_K(v, gens)) return;
    s.points.push_back(p);
    s.valuations.push_back(std::move(v));
  };
  add(ZRPoint::trivial(), trivial_valuation(s.L));
  add(ZRPoint::at(PlaceDatum::infinity(0)), place_valuation(s.L, PlaceDatum::infinity(0)));
  const Field f = s.L->field();
  std::vector<mpq_class> coeffs;
  if (f.is_rationals()) {
    coeffs = height_set(height_bound);
  } else {
    for (unsigned long c = 0; c < f.characteristic(); ++c) coeffs.emplace_back(c);
  }
  for (int d = 1; d <= degree_bound; ++d)
    for (const auto& p : monic_polys(f, d, coeffs))
      if (is_irreducible(p, 0)) add(ZRPoint::at(PlaceDatum::finite(p)), place_valuation(s.L, PlaceDatum::finite(p)));
  return s.points;
}

BasicOpen basic_open(const ZRSpace& space, const std::vector<SuperElem>& gens) {
  BasicOpen u;
  u.space = &space;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), space.L)) throw Error(Errc::RingMismatch, "generator outside " + space.L->to_string());
    if (g.is_odd() && !g.is_zero()) {
      u.notices.push_back("odd generator " + g.to_string() + " dropped: it does not change the open");
      continue;
    }
    if (!g.is_even()) throw Error(Errc::InvalidArgument, "basic open generators must be homogeneous");
    u.generators.push_back(g);
  }
  return u;
}

bool member(const BasicOpen& u, std::size_t i) {
  const Valuation& v = u.space->valuations.at(i);
  return std::all_of(u.generators.begin(), u.generators.end(), [&](const SuperElem& g) { return in_Av(v, g); });
}

BasicOpen intersect(const BasicOpen& a, const BasicOpen& b) {
  if (a.space != b.space) throw Error(Errc::InvalidArgument, "opens of different spaces");
  BasicOpen u = a;
  u.generators.insert(u.generators.end(), b.generators.begin(), b.generators.end());
  u.notices.insert(u.notices.end(), b.notices.begin(), b.notices.end());
  return u;
}

std::vector<std::size_t> open_points(const BasicOpen& u) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < u.space->points.size(); ++i)
    if (member(u, i)) out.push_back(i);
  return out;
}

HomeomorphismReport even_homeomorphism(const ZRSpace& space, std::size_t sampled_opens, std::uint64_t seed) {
  HomeomorphismReport rep;
  ZRSpace bar = make_space(reduced_ring(space.L), reduced_ring(space.K));
  enumerate_points(bar, space.degree_bound, space.height_bound);
  std::map<std::string, std::size_t> index;
  const auto& names = space.L->even_names;
  for (std::size_t j = 0; j < bar.points.size(); ++j) index[bar.points[j].to_string(names)] = j;

  std::vector<bool> hit(bar.points.size(), false);
  bool ok = bar.points.size() == space.points.size();
  for (std::size_t i = 0; i < space.points.size(); ++i) {
    HatValuation h = induced_hat(space.valuations[i]);
    ZRPoint image = ZRPoint::trivial();
    if (!h.vhat.is_trivial()) {
      if (h.vhat.rule().kind != Rule::Kind::Place) throw std::logic_error("hat of a place is not a place");
      image = ZRPoint::at(h.vhat.rule().place);
    }
    auto it = index.find(image.to_string(names));
    if (it == index.end()) {
      ok = false;
      rep.detail = "no image for " + space.points[i].to_string(names);
      rep.psi.push_back(bar.points.size());
      continue;
    }
    if (hit[it->second]) {
      ok = false;
      rep.detail = "two points map to " + image.to_string(names);
    }
    hit[it->second] = true;
    rep.psi.push_back(it->second);
  }
  rep.bijective = ok && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });

  ElemShape shape;
  shape.max_degree = 2;
  shape.coeff_bound = 3;
  shape.max_den_degree = 2;
  rep.opens_commute = rep.bijective;
  for (std::size_t k = 0; k < sampled_opens && rep.opens_commute; ++k) {
    Rng rng = sample_rng(seed, k);
    std::vector<SuperElem> gens, gens_bar;
    std::size_t n = 1 + rng() % 2;
    for (std::size_t j = 0; j < n; ++j) {
      SuperElem g = random_elem(rng, space.L, shape, Parity::Even);
      if (g.body().is_zero()) continue;
      gens.push_back(g);
      gens_bar.push_back(SuperElem::even(bar.L, superreduce(g)));
    }
    BasicOpen u = basic_open(space, gens), ubar = basic_open(bar, gens_bar);
    for (std::size_t i = 0; i < space.points.size(); ++i) {
      if (member(u, i) != member(ubar, rep.psi[i])) {
        rep.opens_commute = false;
        rep.detail = "membership differs at " + space.points[i].to_string(names);
        break;
      }
    }
    ++rep.opens_checked;
  }
  if (rep.detail.empty())
    rep.detail = std::to_string(space.points.size()) + " points, " + std::to_string(rep.opens_checked) + " opens";
  return rep;
}

SheafSections sections(const ZRSpace& space, const std::vector<ZRPoint>& excluded, int degree_bound,
                       std::size_t verify_places, std::uint64_t seed) {
  for (const auto& e : excluded)
    if (e.kind == ZRPoint::Kind::Trivial) throw Error(Errc::InvalidArgument, "the trivial point is not a curve point");
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < space.points.size(); ++i)
    if (space.points[i].kind == ZRPoint::Kind::Place && !in_list(excluded, space.points[i])) open.push_back(i);
  if (open.empty()) throw Error(Errc::EmptyOpen, "O_X of the empty set is the zero ring");

  SheafSections s;
  s.excluded = excluded;
  s.degree_bound = degree_bound;
  const Ring& L = space.L;
  const RatFunc x = RatFunc::variable(L->field(), 1, 0);
  s.even_basis.push_back(SuperElem::constant(L, 1));
  bool inf_allowed = in_list(excluded, ZRPoint::at(PlaceDatum::infinity(0))) ||
                     !in_list(space.points, ZRPoint::at(PlaceDatum::infinity(0)));
  std::string desc = "k";
  for (const auto& e : excluded) {
    if (e.is_infinity()) continue;
    const MPoly& pi = e.place.poly;
    for (int k = 1; k <= degree_bound; ++k)
      for (int i = 0; i < pi.degree(0); ++i)
        s.even_basis.push_back(SuperElem::even(L, x.pow(i) * RatFunc(pi).pow(-k)));
    desc += " + x^i/(" + pi.to_string(L->even_names) + ")^k";
  }
  if (inf_allowed) {
    for (int j = 1; j <= degree_bound; ++j) s.even_basis.push_back(SuperElem::even(L, x.pow(j)));
    desc += " + x^j";
  }
  s.description = desc + " (k <= " + std::to_string(degree_bound) + ") + J_L";

  Rng rng = sample_rng(seed, 0);
  std::vector<std::size_t> check = open;
  std::shuffle(check.begin(), check.end(), rng);
  if (check.size() > verify_places) check.resize(verify_places);
  for (std::size_t i : check)
    for (const auto& b : s.even_basis)
      if (!in_Av(space.valuations[i], b))
        throw std::logic_error("section " + b.to_string() + " has a pole at " + space.points[i].to_string(L->even_names));
  return s;
}

bool is_section(const ZRSpace& space, const std::vector<ZRPoint>& excluded, const SuperElem& f) {
  if (!same_ring(f.ring(), space.L)) throw Error(Errc::RingMismatch, "function outside " + space.L->to_string());
  RatFunc b = f.body();
  if (b.is_zero()) return true;
  const ZRPoint inf = ZRPoint::at(PlaceDatum::infinity(0));
  if (b.num().degree(0) > b.den().degree(0) && in_list(space.points, inf) && !in_list(excluded, inf)) return false;
  if (b.den().is_constant()) return true;
  for (const auto& pf : factor_univariate(b.den(), 0)) {
    ZRPoint p = ZRPoint::at(PlaceDatum::finite(pf.poly));
    if (!in_list(excluded, p)) return false;
  }
  return true;
}

SuperCurve supercurve(const ZRSpace& space) {
  check_function_field(space.L);
  SuperCurve c;
  c.space = space;
  for (std::size_t i = 0; i < space.points.size(); ++i)
    if (space.points[i].kind == ZRPoint::Kind::Place) c.points.push_back(i);
  return c;
}

namespace {

struct Invertible {
  SuperElem x, inv;
};

std::vector<Invertible> invertible_sample(const std::vector<SuperElem>& sample) {
  std::vector<Invertible> out;
  for (const auto& x : sample) {
    if (x.body().is_zero()) continue;
    SuperElem inv = x.inverse();
    if (!(x * inv == SuperElem::constant(x.ring(), 1))) throw std::logic_error("inverse check failed for " + x.to_string());
    out.push_back({x, inv});
  }
  return out;
}

bool units_of_value_zero(const Valuation& v, const std::vector<Invertible>& sample) {
  if (!is_local(v).local) return false;
  return std::all_of(sample.begin(), sample.end(),
                     [&](const Invertible& p) { return !v.eval(p.x).is_zero() || in_Av(v, p.inv); });
}

}  // namespace

bool stalk_is_local(const Valuation& v, const std::vector<SuperElem>& sample) {
  return units_of_value_zero(v, invertible_sample(sample));
}

bool stalk_is_local(const Valuation& v, std::size_t samples, std::uint64_t seed) {
  return stalk_is_local(v, structured_sample(v.ring(), samples, seed));
}

std::vector<std::size_t> nonlocal_stalks(const SuperCurve& c, std::size_t samples, std::uint64_t seed) {
  auto sample = invertible_sample(structured_sample(c.space.L, samples, seed));
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < c.points.size(); ++i)
    if (!units_of_value_zero(c.stalk(i), sample)) bad.push_back(i);
  return bad;
}

FunctionViews function_views(const SuperElem& f) { return {f, superreduce(f)}; }

IdentificationReport check_function_field(const SuperCurve& c, std::size_t samples, std::uint64_t seed) {
  IdentificationReport rep;
  const ZRSpace& s = c.space;
  const Ring& L = s.L;
  const auto& names = L->even_names;
  std::vector<std::vector<ZRPoint>> opens{{}, {ZRPoint::at(PlaceDatum::infinity(0))}};
  if (c.points.size() > 2) opens.push_back({s.points[c.points[1]], s.points[c.points.back()]});
  for (const auto& E : opens) {
    SheafSections sec = sections(s, E, 2, 10, seed);
    for (const auto& b : sec.even_basis) {
      ++rep.sections_checked;
      if (!same_ring(b.ring(), L) || !b.in_ring()) {
        rep.detail = "section " + b.to_string() + " is not an element of L";
        return rep;
      }
    }
  }
  ElemShape shape;
  shape.max_degree = 3;
  shape.coeff_bound = 3;
  shape.max_den_degree = 2;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng = sample_rng(seed, k);
    SuperElem f = random_elem(rng, L, shape, Parity::Any);
    std::vector<ZRPoint> E;
    RatFunc b = f.body();
    if (!b.is_zero()) {
      if (b.num().degree(0) > b.den().degree(0)) E.push_back(ZRPoint::at(PlaceDatum::infinity(0)));
      if (!b.den().is_constant())
        for (const auto& pf : factor_univariate(b.den(), 0)) E.push_back(ZRPoint::at(PlaceDatum::finite(pf.poly)));
    }
    ++rep.elements_checked;
    if (!is_section(s, E, f)) {
      rep.detail = f.to_string() + " lies in no O_X(U) built from its poles";
      return rep;
    }
    for (std::size_t i : c.points) {
      if (in_list(E, s.points[i])) continue;
      if (!in_Av(s.valuations[i], f)) {
        rep.detail = f.to_string() + " has a pole at " + s.points[i].to_string(names);
        return rep;
      }
    }
  }
  if (L->odd_count > 0) {
    SuperElem odd = L->odd_count >= 2 ? SuperElem::theta(L, 0) * SuperElem::theta(L, 1) : SuperElem::theta(L, 0);
    for (std::size_t i : c.points)
      if (!s.valuations[i].eval(odd).is_infinite() || !superreduce(odd).is_zero()) {
        rep.detail = "odd section does not vanish at " + s.points[i].to_string(names);
        return rep;
      }
  }
  rep.ok = true;
  rep.detail = std::to_string(rep.sections_checked) + " sections and " + std::to_string(rep.elements_checked) +
               " elements identified inside " + L->to_string();
  return rep;
}

}  // namespace sval
