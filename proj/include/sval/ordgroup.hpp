#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sval {

inline constexpr int kMaxGroupRank = 3;
inline constexpr int kDefaultSegmentBox = 8;

/// Z^rank with the lexicographic order; rank 0 is the trivial group.
struct GroupDesc {
  int rank = 0;
  friend bool operator==(const GroupDesc&, const GroupDesc&) = default;
  std::string to_string() const;
};

/// An element of G ∪ {∞}.
class GValue {
 public:
  GValue() = default;
  static GValue finite(GroupDesc g, std::span<const std::int64_t> coords);
  static GValue finite(GroupDesc g, std::initializer_list<std::int64_t> coords) {
    return finite(g, std::span<const std::int64_t>(coords.begin(), coords.size()));
  }
  static GValue zero(GroupDesc g);
  static GValue infinity(GroupDesc g);
  static GValue unit(GroupDesc g, int i);

  GroupDesc group() const noexcept { return group_; }
  bool is_infinite() const noexcept { return inf_; }
  std::int64_t operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::vector<std::int64_t> coords() const;
  bool is_zero() const noexcept;

  std::string to_string() const;

  friend bool operator==(const GValue& a, const GValue& b) noexcept {
    return a.group_ == b.group_ && a.inf_ == b.inf_ && (a.inf_ || a.coords_ == b.coords_);
  }

 private:
  GroupDesc group_;
  bool inf_ = false;
  std::array<std::int64_t, kMaxGroupRank> coords_{};
};

enum class Ordering { Less, Equal, Greater };

Ordering lex_compare(const GValue& a, const GValue& b);
GValue gadd(const GValue& a, const GValue& b);
GValue gneg(const GValue& a);
GValue gsub(const GValue& a, const GValue& b);
GValue gscale(const GValue& a, std::int64_t k);

inline bool operator<(const GValue& a, const GValue& b) { return lex_compare(a, b) == Ordering::Less; }
inline bool operator>(const GValue& a, const GValue& b) { return lex_compare(a, b) == Ordering::Greater; }
inline bool operator<=(const GValue& a, const GValue& b) { return lex_compare(a, b) != Ordering::Greater; }
inline bool operator>=(const GValue& a, const GValue& b) { return lex_compare(a, b) != Ordering::Less; }
inline GValue operator+(const GValue& a, const GValue& b) { return gadd(a, b); }
inline GValue operator-(const GValue& a, const GValue& b) { return gsub(a, b); }
inline GValue operator-(const GValue& a) { return gneg(a); }

const GValue& gmin(const GValue& a, const GValue& b);

// Parses "inf" or "(a1,...,an)"; a bare integer is accepted for rank 1.
GValue parse_gvalue(const std::string& text, GroupDesc g);

/// Subgroup of Z^n given by generators, kept in integer row echelon form.
class Lattice {
 public:
  explicit Lattice(GroupDesc g) : group_(g) {}
  Lattice(GroupDesc g, const std::vector<GValue>& generators);

  GroupDesc group() const noexcept { return group_; }
  bool contains(const GValue& x) const;
  const std::vector<GValue>& basis() const noexcept { return rows_; }
  int rank() const noexcept { return static_cast<int>(rows_.size()); }
  // Index in Z^n when full rank, otherwise 0 (infinite).
  std::int64_t index() const;
  bool is_whole() const { return index() == 1; }
  friend bool operator==(const Lattice& a, const Lattice& b);

 private:
  GroupDesc group_;
  std::vector<GValue> rows_;
};

struct Segment {
  enum class Kind { Empty, SymmetricInterval, Subgroup, Whole };

  GroupDesc group;
  Kind kind = Kind::Empty;
  GValue bound;               // SymmetricInterval
  std::vector<GValue> basis;  // Subgroup

  static Segment empty(GroupDesc g) { return {g, Kind::Empty, {}, {}}; }
  static Segment whole(GroupDesc g) { return {g, Kind::Whole, {}, {}}; }
  static Segment interval(const GValue& bound);
  static Segment subgroup(GroupDesc g, std::vector<GValue> basis);

  bool contains(const GValue& x) const;
  bool is_proper() const { return kind != Kind::Whole; }
  std::string to_string() const;
};

// Enumerates every finite element of the box |x_i| <= bound.
std::vector<GValue> box_elements(GroupDesc g, int bound);

bool is_segment(const Segment& s, int box = kDefaultSegmentBox);
std::vector<Segment> isolated_subgroups(GroupDesc g);
// Segments agree on every element of the box.
bool same_on_box(const Segment& a, const Segment& b, int box = kDefaultSegmentBox);

/// Additive map Z^m -> Z^n (matrix rows = target coordinates), ∞ ↦ ∞.
struct OrderHom {
  GroupDesc source;
  GroupDesc target;
  std::vector<std::vector<std::int64_t>> matrix;

  static OrderHom identity(GroupDesc g);
  // Quotient by the last `drop` coordinates: Z^n -> Z^(n-drop).
  static OrderHom projection(GroupDesc g, int drop);
  static OrderHom scaling(GroupDesc g, std::int64_t k);

  GValue apply(const GValue& a) const;
  OrderHom compose(const OrderHom& inner) const;  // this ∘ inner
  bool is_order_preserving(int box = kDefaultSegmentBox) const;
  bool is_injective() const;
  Lattice image() const;
  std::string to_string() const;
  friend bool operator==(const OrderHom&, const OrderHom&) = default;
};

Segment hom_kernel(const OrderHom& h);

}  // namespace sval
