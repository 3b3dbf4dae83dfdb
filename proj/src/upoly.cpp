#include "sval/upoly.hpp"

#include "sval/error.hpp"

namespace sval {

RatPoly::RatPoly(RatFunc zero, std::vector<RatFunc> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(const RatFunc& c) {
  RatFunc z = c - c;
  return RatPoly(z, {c});
}

RatPoly RatPoly::monomial(const RatFunc& c, int k) {
  RatFunc z = c - c;
  std::vector<RatFunc> v(static_cast<std::size_t>(k) + 1, z);
  v.back() = c;
  return RatPoly(z, v);
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const RatFunc& RatPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return zero_;
  return c_[static_cast<std::size_t>(k)];
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inv());
}

RatPoly RatPoly::scaled(const RatFunc& c) const {
  RatPoly r(zero_);
  for (const auto& a : c_) r.c_.push_back(a * c);
  r.trim();
  return r;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  RatPoly r(a.zero_);
  std::size_t n = std::max(a.c_.size(), b.c_.size());
  for (std::size_t i = 0; i < n; ++i) r.c_.push_back(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)));
  r.trim();
  return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  return a + b.scaled(RatFunc(MPoly::constant(a.zero_.field(), a.zero_.nvars(), -1)));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  RatPoly r(a.zero_);
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& b) const {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  RatPoly q(zero_), r = *this;
  RatFunc inv_lead = b.lead().inv();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    RatPoly t = monomial(r.lead() * inv_lead, k);
    q = q + t;
    r = r - t * b;
  }
  return {q, r};
}

std::optional<RatPoly> inverse_mod(const RatPoly& a, const RatPoly& m) {
  RatFunc one = RatFunc(MPoly::constant(m.zero().field(), m.zero().nvars(), 1));
  RatPoly r0 = m, r1 = a.mod(m);
  RatPoly s0(m.zero()), s1 = RatPoly::constant(one);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    RatPoly s = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  if (r0.degree() != 0) return std::nullopt;
  return s0.scaled(r0.lead().inv()).mod(m);
}

std::optional<std::vector<RatFunc>> first_dependency(const std::vector<std::vector<RatFunc>>& vecs) {
  if (vecs.empty()) return std::nullopt;
  const std::size_t dim = vecs.front().size();
  RatFunc zero = vecs.front().empty() ? RatFunc() : vecs.front().front() - vecs.front().front();
  RatFunc one = RatFunc(MPoly::constant(zero.field(), zero.nvars(), 1));
  // Echelon rows with their expressions in terms of the input vectors.
  struct Row {
    std::vector<RatFunc> v;
    std::vector<RatFunc> combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    std::vector<RatFunc> v = vecs[k];
    std::vector<RatFunc> combo(k + 1, zero);
    combo[k] = one;
    for (const auto& row : rows) {
      if (v[row.pivot].is_zero()) continue;
      RatFunc f = v[row.pivot] / row.v[row.pivot];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= f * row.v[i];
      for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] -= f * row.combo[i];
    }
    std::size_t pivot = dim;
    for (std::size_t i = 0; i < dim; ++i)
      if (!v[i].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == dim) return combo;
    rows.push_back({v, combo, pivot});
  }
  return std::nullopt;
}

}  // namespace sval
