#include "sval/ratfunc.hpp"

#include <algorithm>

#include "sval/error.hpp"

namespace sval {

RatFunc::RatFunc(MPoly num) : num_(std::move(num)) {
  den_ = MPoly::constant(num_.field(), num_.nvars(), 1);
}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(Errc::DivisionByZero, "rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::constant(Field f, int nvars, const mpq_class& c) {
  return RatFunc(MPoly::constant(f, nvars, c));
}

RatFunc RatFunc::variable(Field f, int nvars, int var) { return RatFunc(MPoly::variable(f, nvars, var)); }

void RatFunc::normalize() {
  Field f = num_.field();
  if (num_.is_zero()) {
    den_ = MPoly::constant(f, den_.nvars(), 1);
    return;
  }
  if (!den_.is_constant()) {
    MPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  mpq_class lc_inv = f.inv(den_.leading_coeff());
  if (lc_inv != 1) {
    num_ = num_.scaled(lc_inv);
    den_ = den_.scaled(lc_inv);
  }
}

RatFunc RatFunc::coprime(MPoly num, MPoly den) {
  RatFunc r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  if (r.num_.is_zero()) {
    r.den_ = MPoly::constant(r.num_.field(), r.num_.nvars(), 1);
    return r;
  }
  mpq_class lc_inv = r.num_.field().inv(r.den_.leading_coeff());
  if (lc_inv != 1) {
    r.num_ = r.num_.scaled(lc_inv);
    r.den_ = r.den_.scaled(lc_inv);
  }
  return r;
}

RatFunc RatFunc::inv() const {
  if (num_.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inv().pow(-n);
  RatFunc r;
  r.num_ = num_.pow(static_cast<unsigned>(n));
  r.den_ = den_.pow(static_cast<unsigned>(n));
  return r;
}

RatFunc RatFunc::substitute(int var, const RatFunc& value) const {
  // num(value)/den(value), homogenised with value's denominator.
  auto subst = [&](const MPoly& p, int deg) {
    MPoly acc(p.field(), p.nvars());
    for (int k = 0; k <= p.degree(var); ++k) {
      MPoly c = p.coeff_in(var, k);
      if (c.is_zero()) continue;
      acc += c * value.num_.pow(static_cast<unsigned>(k)) * value.den_.pow(static_cast<unsigned>(deg - k));
    }
    return acc;
  };
  int d = std::max(num_.degree(var), den_.degree(var));
  if (d < 0) d = 0;
  return RatFunc(subst(num_, d), subst(den_, d));
}

RatFunc RatFunc::eval_var(int var, const mpq_class& value) const {
  MPoly d = den_.eval_var(var, value);
  if (d.is_zero()) throw Error(Errc::DivisionByZero, "evaluation at a pole");
  return RatFunc(num_.eval_var(var, value), d);
}

std::string RatFunc::to_string(const std::vector<std::string>& names) const {
  if (den_.is_one()) return num_.to_string(names);
  auto wrap = [&](const MPoly& p, bool divisor) {
    std::string s = p.to_string(names);
    bool atomic = p.terms().size() == 1 && (p.leading_coeff() == 1 || p.is_constant()) && p.leading_coeff() > 0;
    if (atomic && divisor) {
      const Monomial& m = p.terms().begin()->first;
      atomic = std::count_if(m.e.begin(), m.e.end(), [](auto k) { return k != 0; }) <= 1;
    }
    return atomic ? s : "(" + s + ")";
  };
  return wrap(num_, false) + "/" + wrap(den_, true);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc::coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  MPoly g = gcd(a.den_, b.den_);
  if (g.is_constant()) return RatFunc::coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  MPoly bd = a.den_.exact_div(g), dd = b.den_.exact_div(g);
  MPoly num = a.num_ * dd + b.num_ * bd;
  if (num.is_zero()) return RatFunc(num);
  MPoly h = gcd(num, g);
  if (!h.is_constant()) {
    num = num.exact_div(h);
    g = g.exact_div(h);
  }
  return RatFunc::coprime(std::move(num), bd * dd * g);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(MPoly(a.field(), std::max(a.nvars(), b.nvars())));
  MPoly an = a.num_, ad = a.den_, bn = b.num_, bdn = b.den_;
  if (!bdn.is_constant()) {
    MPoly g = gcd(an, bdn);
    if (!g.is_constant()) {
      an = an.exact_div(g);
      bdn = bdn.exact_div(g);
    }
  }
  if (!ad.is_constant()) {
    MPoly g = gcd(bn, ad);
    if (!g.is_constant()) {
      bn = bn.exact_div(g);
      ad = ad.exact_div(g);
    }
  }
  return RatFunc::coprime(an * bn, ad * bdn);
}

}  // namespace sval
