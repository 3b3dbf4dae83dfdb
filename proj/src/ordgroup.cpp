#include "sval/ordgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "sval/error.hpp"

namespace sval {

std::string GroupDesc::to_string() const {
  if (rank == 0) return "0";
  if (rank == 1) return "Z";
  return "Z^" + std::to_string(rank) + "-lex";
}

namespace {

void check_rank(GroupDesc g) {
  if (g.rank < 0 || g.rank > kMaxGroupRank)
    throw Error(Errc::RankTooLarge, "group rank " + std::to_string(g.rank) + " exceeds " + std::to_string(kMaxGroupRank));
}

void same_group(const GValue& a, const GValue& b) {
  if (!(a.group() == b.group()))
    throw Error(Errc::GroupMismatch, a.group().to_string() + " vs " + b.group().to_string());
}

}  // namespace

GValue GValue::finite(GroupDesc g, std::span<const std::int64_t> coords) {
  check_rank(g);
  if (static_cast<int>(coords.size()) != g.rank)
    throw Error(Errc::GroupMismatch, "payload length " + std::to_string(coords.size()) + " for " + g.to_string());
  GValue v;
  v.group_ = g;
  std::copy(coords.begin(), coords.end(), v.coords_.begin());
  return v;
}

GValue GValue::zero(GroupDesc g) {
  check_rank(g);
  GValue v;
  v.group_ = g;
  return v;
}

GValue GValue::infinity(GroupDesc g) {
  check_rank(g);
  GValue v;
  v.group_ = g;
  v.inf_ = true;
  return v;
}

GValue GValue::unit(GroupDesc g, int i) {
  GValue v = zero(g);
  v.coords_[static_cast<std::size_t>(i)] = 1;
  return v;
}

std::vector<std::int64_t> GValue::coords() const {
  return {coords_.begin(), coords_.begin() + group_.rank};
}

bool GValue::is_zero() const noexcept {
  if (inf_) return false;
  for (int i = 0; i < group_.rank; ++i)
    if (coords_[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

std::string GValue::to_string() const {
  if (inf_) return "inf";
  std::string s = "(";
  for (int i = 0; i < group_.rank; ++i) {
    if (i) s += ",";
    s += std::to_string(coords_[static_cast<std::size_t>(i)]);
  }
  return s + ")";
}

Ordering lex_compare(const GValue& a, const GValue& b) {
  same_group(a, b);
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return Ordering::Equal;
    return a.is_infinite() ? Ordering::Greater : Ordering::Less;
  }
  for (int i = 0; i < a.group().rank; ++i) {
    if (a[i] < b[i]) return Ordering::Less;
    if (a[i] > b[i]) return Ordering::Greater;
  }
  return Ordering::Equal;
}

GValue gadd(const GValue& a, const GValue& b) {
  same_group(a, b);
  if (a.is_infinite() || b.is_infinite()) return GValue::infinity(a.group());
  std::array<std::int64_t, kMaxGroupRank> c{};
  for (int i = 0; i < a.group().rank; ++i) c[static_cast<std::size_t>(i)] = a[i] + b[i];
  return GValue::finite(a.group(), std::span<const std::int64_t>(c.data(), static_cast<std::size_t>(a.group().rank)));
}

GValue gneg(const GValue& a) {
  if (a.is_infinite()) throw Error(Errc::UndefinedDifference, "negation of inf is undefined");
  return gscale(a, -1);
}

GValue gsub(const GValue& a, const GValue& b) {
  same_group(a, b);
  if (b.is_infinite()) throw Error(Errc::UndefinedDifference, a.to_string() + " - inf is undefined");
  return gadd(a, gneg(b));
}

GValue gscale(const GValue& a, std::int64_t k) {
  if (a.is_infinite()) return a;
  std::array<std::int64_t, kMaxGroupRank> c{};
  for (int i = 0; i < a.group().rank; ++i) c[static_cast<std::size_t>(i)] = a[i] * k;
  return GValue::finite(a.group(), std::span<const std::int64_t>(c.data(), static_cast<std::size_t>(a.group().rank)));
}

const GValue& gmin(const GValue& a, const GValue& b) { return b < a ? b : a; }

GValue parse_gvalue(const std::string& text, GroupDesc g) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s == "inf" || s == "oo" || s == "∞") return GValue::infinity(g);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw Error(Errc::SyntaxError, "unterminated group value '" + text + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::int64_t> coords;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::SyntaxError, "bad group coordinate '" + item + "'");
    }
  }
  return GValue::finite(g, coords);
}

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(GroupDesc g, const std::vector<GValue>& generators) : group_(g) {
  using Row = std::array<std::int64_t, kMaxGroupRank>;
  std::vector<Row> rows;
  for (const auto& v : generators) {
    if (v.is_infinite()) continue;
    if (!(v.group() == g)) throw Error(Errc::GroupMismatch, "lattice generator in wrong group");
    Row r{};
    for (int i = 0; i < g.rank; ++i) r[static_cast<std::size_t>(i)] = v[i];
    rows.push_back(r);
  }
  std::size_t top = 0;
  for (int col = 0; col < g.rank && top < rows.size(); ++col) {
    auto c = static_cast<std::size_t>(col);
    // Euclid down the column until a single nonzero entry remains at `top`.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        std::int64_t q = rows[i][c] / rows[top][c];
        for (int k = 0; k < g.rank; ++k) rows[i][static_cast<std::size_t>(k)] -= q * rows[top][static_cast<std::size_t>(k)];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0)
      for (auto& x : rows[top]) x = -x;
    ++top;
  }
  rows.resize(top);
  for (const auto& r : rows)
    rows_.push_back(GValue::finite(g, std::span<const std::int64_t>(r.data(), static_cast<std::size_t>(g.rank))));
}

bool Lattice::contains(const GValue& x) const {
  if (x.is_infinite()) return false;
  std::array<std::int64_t, kMaxGroupRank> v{};
  for (int i = 0; i < group_.rank; ++i) v[static_cast<std::size_t>(i)] = x[i];
  for (const auto& row : rows_) {
    int pivot = 0;
    while (row[pivot] == 0) ++pivot;
    auto p = static_cast<std::size_t>(pivot);
    for (int i = 0; i < pivot; ++i)
      if (v[static_cast<std::size_t>(i)] != 0) return false;
    if (v[p] % row[pivot] != 0) return false;
    std::int64_t q = v[p] / row[pivot];
    for (int i = 0; i < group_.rank; ++i) v[static_cast<std::size_t>(i)] -= q * row[i];
  }
  for (int i = 0; i < group_.rank; ++i)
    if (v[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

std::int64_t Lattice::index() const {
  if (rank() != group_.rank) return 0;
  std::int64_t d = 1;
  for (const auto& row : rows_) {
    int pivot = 0;
    while (row[pivot] == 0) ++pivot;
    d *= row[pivot];
  }
  return std::llabs(d);
}

bool operator==(const Lattice& a, const Lattice& b) {
  if (!(a.group_ == b.group_)) return false;
  for (const auto& r : a.rows_)
    if (!b.contains(r)) return false;
  for (const auto& r : b.rows_)
    if (!a.contains(r)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Segments

Segment Segment::interval(const GValue& bound) {
  if (bound.is_infinite()) throw Error(Errc::InvalidArgument, "interval bound must be finite");
  GValue b = bound < GValue::zero(bound.group()) ? gneg(bound) : bound;
  return {bound.group(), Kind::SymmetricInterval, b, {}};
}

Segment Segment::subgroup(GroupDesc g, std::vector<GValue> basis) {
  return {g, Kind::Subgroup, {}, Lattice(g, basis).basis()};
}

bool Segment::contains(const GValue& x) const {
  if (x.is_infinite()) return false;
  switch (kind) {
    case Kind::Empty: return false;
    case Kind::Whole: return true;
    case Kind::SymmetricInterval: return gneg(bound) <= x && x <= bound;
    case Kind::Subgroup: return Lattice(group, basis).contains(x);
  }
  return false;
}

std::string Segment::to_string() const {
  switch (kind) {
    case Kind::Empty: return "empty";
    case Kind::Whole: return "whole";
    case Kind::SymmetricInterval: return "[-" + bound.to_string() + "," + bound.to_string() + "]";
    case Kind::Subgroup: {
      std::string s = "<";
      for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? "," : "") + basis[i].to_string();
      return s + ">";
    }
  }
  return "?";
}

std::vector<GValue> box_elements(GroupDesc g, int bound) {
  check_rank(g);
  std::vector<GValue> out;
  std::array<std::int64_t, kMaxGroupRank> c{};
  std::fill(c.begin(), c.begin() + g.rank, -bound);
  while (true) {
    out.push_back(GValue::finite(g, std::span<const std::int64_t>(c.data(), static_cast<std::size_t>(g.rank))));
    int i = g.rank - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == bound) c[static_cast<std::size_t>(i--)] = -bound;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
  }
  return out;
}

bool is_segment(const Segment& s, int box) {
  if (box < 1) throw Error(Errc::InvalidArgument, "segment box must be >= 1");
  if (s.kind == Segment::Kind::Empty || s.kind == Segment::Kind::Whole) return true;
  // The condition "x in H and -x <= y <= x implies y in H" on the box is the
  // same as: H ∩ box is exactly the box elements with |y| <= max |x|.
  auto elems = box_elements(s.group, box);
  GValue zero = GValue::zero(s.group);
  auto absval = [&](const GValue& x) { return x < zero ? gneg(x) : x; };
  bool any = false;
  GValue top = zero;
  for (const auto& x : elems)
    if (s.contains(x)) {
      GValue ax = absval(x);
      if (!any || top < ax) top = ax;
      any = true;
    }
  if (!any) return true;
  for (const auto& y : elems)
    if ((absval(y) <= top) != s.contains(y)) return false;
  return true;
}

std::vector<Segment> isolated_subgroups(GroupDesc g) {
  check_rank(g);
  std::vector<Segment> out;
  for (int k = 0; k < g.rank; ++k) {
    std::vector<GValue> basis;
    for (int j = g.rank - k; j < g.rank; ++j) basis.push_back(GValue::unit(g, j));
    out.push_back(Segment::subgroup(g, basis));
  }
  return out;
}

bool same_on_box(const Segment& a, const Segment& b, int box) {
  if (!(a.group == b.group)) return false;
  for (const auto& x : box_elements(a.group, box))
    if (a.contains(x) != b.contains(x)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Order homomorphisms

OrderHom OrderHom::identity(GroupDesc g) { return scaling(g, 1); }

OrderHom OrderHom::scaling(GroupDesc g, std::int64_t k) {
  OrderHom h{g, g, {}};
  for (int i = 0; i < g.rank; ++i) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(g.rank), 0);
    row[static_cast<std::size_t>(i)] = k;
    h.matrix.push_back(row);
  }
  return h;
}

OrderHom OrderHom::projection(GroupDesc g, int drop) {
  if (drop < 0 || drop > g.rank) throw Error(Errc::InvalidArgument, "projection drops too many coordinates");
  GroupDesc t{g.rank - drop};
  OrderHom h{g, t, {}};
  for (int i = 0; i < t.rank; ++i) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(g.rank), 0);
    row[static_cast<std::size_t>(i)] = 1;
    h.matrix.push_back(row);
  }
  return h;
}

GValue OrderHom::apply(const GValue& a) const {
  if (!(a.group() == source)) throw Error(Errc::GroupMismatch, "hom source is " + source.to_string());
  if (a.is_infinite()) return GValue::infinity(target);
  std::array<std::int64_t, kMaxGroupRank> c{};
  for (int i = 0; i < target.rank; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < source.rank; ++j) s += matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * a[j];
    c[static_cast<std::size_t>(i)] = s;
  }
  return GValue::finite(target, std::span<const std::int64_t>(c.data(), static_cast<std::size_t>(target.rank)));
}

OrderHom OrderHom::compose(const OrderHom& inner) const {
  if (!(inner.target == source)) throw Error(Errc::GroupMismatch, "cannot compose homs");
  OrderHom h{inner.source, target, {}};
  for (int i = 0; i < target.rank; ++i) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(inner.source.rank), 0);
    for (int j = 0; j < inner.source.rank; ++j)
      for (int k = 0; k < source.rank; ++k)
        row[static_cast<std::size_t>(j)] += matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                                            inner.matrix[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    h.matrix.push_back(row);
  }
  return h;
}

bool OrderHom::is_order_preserving(int box) const {
  GValue zs = GValue::zero(source), zt = GValue::zero(target);
  for (const auto& x : box_elements(source, box))
    if (zs < x && apply(x) < zt) return false;
  return true;
}

bool OrderHom::is_injective() const { return hom_kernel(*this).basis.empty(); }

Lattice OrderHom::image() const {
  std::vector<GValue> gens;
  for (int j = 0; j < source.rank; ++j) gens.push_back(apply(GValue::unit(source, j)));
  return Lattice(target, gens);
}

std::string OrderHom::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    s += i ? ";" : "";
    for (std::size_t j = 0; j < matrix[i].size(); ++j) s += (j ? " " : "") + std::to_string(matrix[i][j]);
  }
  return s + "]";
}

Segment hom_kernel(const OrderHom& h) {
  const int n = h.source.rank;
  const int m = h.target.rank;
  // Column reduction on [M; I]; zero columns of M carry kernel vectors in I.
  std::vector<std::vector<std::int64_t>> cols(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto& c = cols[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i) c.push_back(h.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i) c.push_back(i == j ? 1 : 0);
  }
  int pivot = 0;
  for (int row = 0; row < m && pivot < n; ++row) {
    auto r = static_cast<std::size_t>(row);
    while (true) {
      int best = -1;
      for (int j = pivot; j < n; ++j) {
        auto v = cols[static_cast<std::size_t>(j)][r];
        if (v != 0 && (best < 0 || std::llabs(v) < std::llabs(cols[static_cast<std::size_t>(best)][r]))) best = j;
      }
      if (best < 0) break;
      std::swap(cols[static_cast<std::size_t>(pivot)], cols[static_cast<std::size_t>(best)]);
      const auto& pc = cols[static_cast<std::size_t>(pivot)];
      bool done = true;
      for (int j = pivot + 1; j < n; ++j) {
        auto& cj = cols[static_cast<std::size_t>(j)];
        std::int64_t q = cj[r] / pc[r];
        for (std::size_t k = 0; k < cj.size(); ++k) cj[k] -= q * pc[k];
        if (cj[r] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  std::vector<GValue> basis;
  for (int j = pivot; j < n; ++j) {
    std::vector<std::int64_t> v(cols[static_cast<std::size_t>(j)].begin() + m, cols[static_cast<std::size_t>(j)].end());
    basis.push_back(GValue::finite(h.source, v));
  }
  return Segment::subgroup(h.source, basis);
}

}  // namespace sval
