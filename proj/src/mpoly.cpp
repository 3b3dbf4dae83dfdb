#include "sval/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "sval/error.hpp"

namespace sval {

MPoly MPoly::constant(Field f, int nvars, const mpq_class& c) {
  MPoly p(f, nvars);
  p.add_term(Monomial{}, c);
  return p;
}

MPoly MPoly::variable(Field f, int nvars, int var) {
  Monomial m;
  m.e[var] = 1;
  return monomial(f, nvars, m, 1);
}

MPoly MPoly::monomial(Field f, int nvars, const Monomial& m, const mpq_class& c) {
  MPoly p(f, nvars);
  p.add_term(m, c);
  return p;
}

MPoly MPoly::univariate(Field f, int nvars, int var, const std::vector<mpq_class>& coeffs) {
  MPoly p(f, nvars);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial m;
    m.e[var] = static_cast<int>(k);
    p.add_term(m, coeffs[k]);
  }
  return p;
}

bool MPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

mpq_class MPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw Error(Errc::InvalidArgument, "polynomial is not constant");
  return terms_.begin()->second;
}

bool MPoly::is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second == 1; }

void MPoly::add_term(const Monomial& m, const mpq_class& c) {
  mpq_class v = field_.reduce(c);
  if (v == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, std::move(v));
    return;
  }
  it->second = field_.add(it->second, v);
  if (it->second == 0) terms_.erase(it);
}

int MPoly::degree(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.e[var]);
  return d;
}

int MPoly::total_degree() const { return terms_.empty() ? -1 : leading_monomial().degree(); }

int MPoly::min_degree(int var) const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first.e[var];
  for (const auto& [m, c] : terms_) d = std::min(d, m.e[var]);
  return d;
}

unsigned MPoly::var_mask() const {
  unsigned mask = 0;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < kMaxEvenVars; ++i)
      if (m.e[i] > 0) mask |= 1u << i;
  return mask;
}

MPoly MPoly::coeff_in(int var, int k) const {
  MPoly r(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.e[var] != k) continue;
    Monomial mm = m;
    mm.e[var] = 0;
    r.terms_.emplace(mm, c);
  }
  return r;
}

MPoly MPoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field_.inv(leading_coeff()));
}

MPoly MPoly::pow(unsigned n) const {
  MPoly result = constant(field_, nvars_, 1);
  MPoly base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

MPoly MPoly::scaled(const mpq_class& c) const {
  MPoly r(field_, nvars_);
  mpq_class cc = field_.reduce(c);
  if (cc == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, field_.mul(v, cc));
  return r;
}

MPoly MPoly::shifted(int var, int k) const {
  MPoly r(field_, nvars_);
  for (const auto& [m, v] : terms_) {
    Monomial mm = m;
    mm.e[var] += k;
    r.terms_.emplace(mm, v);
  }
  return r;
}

MPoly MPoly::eval_var(int var, const mpq_class& value) const {
  MPoly r(field_, nvars_);
  mpq_class val = field_.reduce(value);
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    mm.e[var] = 0;
    mpq_class pw = 1;
    for (int i = 0; i < m.e[var]; ++i) pw = field_.mul(pw, val);
    r.add_term(mm, field_.mul(c, pw));
  }
  return r;
}

MPoly MPoly::substitute(int var, const MPoly& value) const {
  MPoly r(field_, nvars_);
  int d = degree(var);
  if (d < 0) return r;
  std::vector<MPoly> powers{constant(field_, nvars_, 1)};
  for (int k = 1; k <= d; ++k) powers.push_back(powers.back() * value);
  for (int k = 0; k <= d; ++k) {
    MPoly c = coeff_in(var, k);
    if (!c.is_zero()) r += c * powers[static_cast<std::size_t>(k)];
  }
  return r;
}

mpq_class MPoly::content_rational() const {
  mpz_class num = 0, den = 1;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      num = abs(c.get_num());
      den = c.get_den();
      first = false;
    } else {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }
  }
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

std::optional<MPoly> MPoly::try_div(const MPoly& b) const {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  MPoly q(field_, nvars_);
  MPoly r = *this;
  const Monomial& lb = b.leading_monomial();
  mpq_class lb_inv = field_.inv(b.leading_coeff());
  while (!r.is_zero()) {
    const Monomial lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    Monomial qm;
    for (int i = 0; i < kMaxEvenVars; ++i) qm.e[i] = lr.e[i] - lb.e[i];
    mpq_class qc = field_.mul(r.leading_coeff(), lb_inv);
    MPoly t = monomial(field_, nvars_, qm, qc);
    q += t;
    r -= t * b;
  }
  return q;
}

MPoly MPoly::exact_div(const MPoly& b) const {
  auto q = try_div(b);
  if (!q) throw Error(Errc::InvalidArgument, "inexact polynomial division");
  return *q;
}

std::pair<MPoly, MPoly> MPoly::divmod_in(int var, const MPoly& b) const {
  int db = b.degree(var);
  MPoly lc = b.coeff_in(var, db);
  if (!lc.is_constant() || lc.is_zero())
    throw Error(Errc::InvalidArgument, "divmod_in needs a constant leading coefficient");
  mpq_class lc_inv = field_.inv(lc.constant_value());
  MPoly q(field_, nvars_);
  MPoly r = *this;
  int dr = r.degree(var);
  while (!r.is_zero() && dr >= db) {
    MPoly top = r.coeff_in(var, dr).scaled(lc_inv).shifted(var, dr - db);
    q += top;
    r -= top * b;
    dr = r.degree(var);
  }
  return {q, r};
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class coef = c;
    bool neg = coef < 0;
    if (neg) coef = -coef;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (int i = 0; i < kMaxEvenVars; ++i) {
      if (m.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(static_cast<std::size_t>(i));
      if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
    }
    if (mono.empty()) {
      os << coef.get_str();
    } else if (coef == 1) {
      os << mono;
    } else {
      os << coef.get_str() << "*" << mono;
    }
  }
  return os.str();
}

MPoly MPoly::operator-() const {
  MPoly r(field_, nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (nvars_ == 0 && terms_.empty()) {
    field_ = o.field_;
    nvars_ = o.nvars_;
  }
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (nvars_ == 0 && terms_.empty()) {
    field_ = o.field_;
    nvars_ = o.nvars_;
  }
  for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(a.field_, std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, a.field_.mul(ca, cb));
  return r;
}

namespace {

int top_var(unsigned mask) {
  for (int i = kMaxEvenVars - 1; i >= 0; --i)
    if (mask & (1u << i)) return i;
  return -1;
}

// Pseudo-remainder of a by b with respect to var.
MPoly prem(const MPoly& a, const MPoly& b, int var) {
  int db = b.degree(var);
  MPoly lcb = b.coeff_in(var, db);
  MPoly r = a;
  int dr = r.degree(var);
  while (!r.is_zero() && dr >= db) {
    MPoly lcr = r.coeff_in(var, dr);
    r = lcb * r - (lcr * b).shifted(var, dr - db);
    dr = r.degree(var);
  }
  return r;
}

MPoly univariate_gcd(MPoly a, MPoly b, int var) {
  while (!b.is_zero()) {
    MPoly r = a.divmod_in(var, b.monic()).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace

MPoly content_in(const MPoly& a, int var) {
  MPoly g(a.field(), a.nvars());
  int d = a.degree(var);
  for (int k = 0; k <= d; ++k) {
    MPoly c = a.coeff_in(var, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MPoly primitive_in(const MPoly& a, int var) {
  if (a.is_zero()) return a;
  return a.exact_div(content_in(a, var));
}

namespace {

// Degree of gcd(a, b) in var is at most the degree of the univariate image gcd
// at any point where neither leading coefficient in var vanishes.
int image_gcd_degree(const MPoly& a, const MPoly& b, int var, unsigned mask) {
  MPoly la = a.leading_coeff_in(var), lb = b.leading_coeff_in(var);
  long base = 3;
  for (int attempt = 0; attempt < 6; ++attempt, base += 7) {
    MPoly ia = a, ib = b, ja = la, jb = lb;
    long k = 0;
    for (int v = 0; v < kMaxEvenVars; ++v) {
      if (v == var || !(mask & (1u << v))) continue;
      mpq_class pt = base + 5 * k++;
      if (!a.field().is_rationals()) pt = a.field().reduce(pt);
      ia = ia.eval_var(v, pt);
      ib = ib.eval_var(v, pt);
      ja = ja.eval_var(v, pt);
      jb = jb.eval_var(v, pt);
    }
    if (ja.is_zero() || jb.is_zero()) continue;
    return univariate_gcd(ia, ib, var).degree(var);
  }
  return -1;
}

MPoly scalar_primitive(const MPoly& a) {
  if (!a.field().is_rationals() || a.is_zero()) return a;
  return a.scaled(1 / a.content_rational());
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly::constant(a.field(), a.nvars(), 1);
  unsigned ma = a.var_mask(), mb = b.var_mask();
  int var = top_var(ma | mb);
  if ((ma | mb) == (1u << var)) return univariate_gcd(a, b, var);
  if (!(ma & (1u << var))) return gcd(a, content_in(b, var));
  if (!(mb & (1u << var))) return gcd(content_in(a, var), b);
  bool coprime = true;
  for (int v = 0; v < kMaxEvenVars && coprime; ++v)
    if ((ma & mb) & (1u << v)) coprime = image_gcd_degree(a, b, v, ma | mb) == 0;
  if (coprime && (ma & mb) == (ma | mb)) return MPoly::constant(a.field(), a.nvars(), 1);
  if (image_gcd_degree(a, b, var, ma | mb) == 0) return gcd(content_in(a, var), content_in(b, var));
  MPoly ca = content_in(a, var), cb = content_in(b, var);
  MPoly c = gcd(ca, cb);
  MPoly pa = scalar_primitive(a.exact_div(ca)), pb = scalar_primitive(b.exact_div(cb));
  if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);
  MPoly g = pb;
  while (true) {
    MPoly r = prem(pa, pb, var);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree(var) == 0) {
      g = MPoly::constant(a.field(), a.nvars(), 1);
      break;
    }
    pa = std::move(pb);
    pb = scalar_primitive(primitive_in(r, var));
  }
  return (c * primitive_in(g, var)).monic();
}

ExtGcd ext_gcd(const MPoly& a, const MPoly& b, int var) {
  Field f = a.field();
  int n = std::max(a.nvars(), b.nvars());
  MPoly r0 = a, r1 = b;
  MPoly s0 = MPoly::constant(f, n, 1), s1(f, n);
  MPoly t0(f, n), t1 = MPoly::constant(f, n, 1);
  while (!r1.is_zero()) {
    mpq_class lc = r1.leading_coeff_in(var).constant_value();
    auto [q, r] = r0.divmod_in(var, r1);
    (void)lc;
    MPoly s2 = s0 - q * s1;
    MPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  mpq_class inv = f.inv(r0.leading_coeff_in(var).constant_value());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

// All monic univariate polynomials of degree d over F_q.
std::vector<MPoly> monic_polys_fp(const Field& f, int nvars, int var, int d) {
  unsigned long q = f.characteristic();
  std::vector<MPoly> out;
  std::vector<unsigned long> digits(static_cast<std::size_t>(d), 0);
  while (true) {
    std::vector<mpq_class> coeffs;
    for (auto x : digits) coeffs.emplace_back(x);
    coeffs.emplace_back(1);
    out.push_back(MPoly::univariate(f, nvars, var, coeffs));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

}  // namespace

namespace {

mpz_class eval_int(const std::vector<mpz_class>& c, long x) {
  mpz_class acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Integer coefficients, ascending, of a primitive multiple of p.
std::vector<mpz_class> integer_coeffs(const MPoly& p, int var) {
  mpz_class lcm = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> out(static_cast<std::size_t>(p.degree(var) + 1), 0);
  for (const auto& [m, c] : p.terms()) out[static_cast<std::size_t>(m.e[var])] = mpq_class(c * lcm).get_num();
  return out;
}

std::optional<mpq_class> rational_root(const MPoly& p, int var) {
  auto z = integer_coeffs(p, var);
  if (z.front() == 0) return mpq_class(0);
  for (const auto& num : divisors(z.front()))
    for (const auto& den : divisors(z.back()))
      for (int sign : {1, -1}) {
        mpq_class root(num * sign, den);
        root.canonicalize();
        if (p.eval_var(var, root).is_zero()) return root;
      }
  return std::nullopt;
}

// Monic quadratic factor of a rational polynomial, by Kronecker's method at 0, 1, -1.
std::optional<MPoly> quadratic_factor(const MPoly& p, int var) {
  auto z = integer_coeffs(p, var);
  mpz_class v0 = eval_int(z, 0), v1 = eval_int(z, 1), vm = eval_int(z, -1);
  if (v0 == 0 || v1 == 0 || vm == 0) return std::nullopt;
  auto signed_divs = [](const mpz_class& n) {
    std::vector<mpz_class> out;
    for (const auto& d : divisors(n)) {
      out.push_back(d);
      out.push_back(-d);
    }
    return out;
  };
  auto d0 = signed_divs(v0), d1 = signed_divs(v1), dm = signed_divs(vm);
  for (const auto& g0 : d0)
    for (const auto& g1 : d1)
      for (const auto& gm : dm) {
        mpz_class s = g1 + gm - 2 * g0, t = g1 - gm;
        if (s == 0 || s % 2 != 0 || t % 2 != 0) continue;
        MPoly cand = MPoly::univariate(p.field(), p.nvars(), var,
                                       {mpq_class(g0), mpq_class(t / 2), mpq_class(s / 2)});
        if (p.divmod_in(var, cand.monic()).second.is_zero()) return cand.monic();
      }
  return std::nullopt;
}

void push_factor(std::vector<PolyFactor>& out, const MPoly& f) {
  for (auto& pf : out)
    if (pf.poly == f) {
      ++pf.multiplicity;
      return;
    }
  out.push_back({f, 1});
}

}  // namespace

MPoly derivative(const MPoly& p, int var) {
  MPoly out(p.field(), p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.e[var] == 0) continue;
    Monomial n = m;
    --n.e[var];
    out.add_term(n, c * m.e[var]);
  }
  return out;
}

std::vector<PolyFactor> factor_univariate(const MPoly& p, int var) {
  if ((p.var_mask() & ~(1u << var)) != 0)
    throw Error(Errc::InvalidArgument, "factorization needs a univariate polynomial");
  if (p.is_zero()) throw Error(Errc::InvalidArgument, "factorization of zero");
  std::vector<PolyFactor> out;
  MPoly rest = p.monic();
  const Field& f = p.field();
  auto split = [&](const MPoly& fac) {
    push_factor(out, fac);
    rest = rest.divmod_in(var, fac).first;
  };
  if (!f.is_rationals()) {
    for (int k = 1; 2 * k <= rest.degree(var); ++k)
      for (const MPoly& cand : monic_polys_fp(f, p.nvars(), var, k))
        while (rest.degree(var) >= k && rest.divmod_in(var, cand).second.is_zero()) split(cand);
  } else {
    while (rest.degree(var) >= 1) {
      auto r = rational_root(rest, var);
      if (!r) break;
      split(MPoly::univariate(f, p.nvars(), var, {-*r, mpq_class(1)}));
    }
    while (rest.degree(var) >= 4) {
      if (rest.degree(var) > 5) throw Error(Errc::Unsupported, "factorization over Q only up to degree 5 without rational roots");
      auto q = quadratic_factor(rest, var);
      if (!q) break;
      split(*q);
    }
  }
  if (rest.degree(var) >= 1) push_factor(out, rest);
  return out;
}

bool is_irreducible(const MPoly& p, int var) {
  if ((p.var_mask() & ~(1u << var)) != 0)
    throw Error(Errc::InvalidArgument, "irreducibility test needs a univariate polynomial");
  int d = p.degree(var);
  if (d <= 0) return false;
  if (d == 1) return true;
  if (p.field().is_rationals() && d > 5) throw Error(Errc::Unsupported, "irreducibility over Q only decided up to degree 5");
  auto fs = factor_univariate(p, var);
  return fs.size() == 1 && fs.front().multiplicity == 1;
}

}  // namespace sval
