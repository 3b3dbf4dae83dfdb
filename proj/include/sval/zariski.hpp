#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sval/valuation.hpp"

namespace sval {

struct ZRPoint {
  enum class Kind { Trivial, Place };
  Kind kind = Kind::Trivial;
  PlaceDatum place;

  static ZRPoint trivial() { return {}; }
  static ZRPoint at(const PlaceDatum& p) { return {Kind::Place, p}; }

  bool is_infinity() const { return kind == Kind::Place && place.kind == PlaceDatum::Kind::Infinity; }
  std::string to_string(const std::vector<std::string>& names) const;
  // {"kind":"finite","poly":"x^2+1"}, {"kind":"infinity"} or {"kind":"trivial"}.
  std::string to_json(const std::vector<std::string>& names) const;
  friend bool operator==(const ZRPoint& a, const ZRPoint& b);
};

/// ZR(L, K) for L = k(x)[θ..] over Q or F_p, enumerated up to a degree bound.
struct ZRSpace {
  Ring L;
  Ring K;
  int degree_bound = 0;
  int height_bound = 3;  // over Q: coefficients a/b with |a|, b <= height
  std::vector<ZRPoint> points;
  std::vector<Valuation> valuations;  // parallel to points
  std::string metadata;
};

// K is k[θ..] (no even variable) or k[x][θ..] / k[x,x^-1][θ..] inside L.
ZRSpace make_space(const Ring& L, const Ring& K);
// Trivial point, ∞ when it contains K, and the finite places of degree <= bound.
const std::vector<ZRPoint>& enumerate_points(ZRSpace& space, int degree_bound, int height_bound = 3);

struct BasicOpen {
  const ZRSpace* space = nullptr;
  std::vector<SuperElem> generators;  // even
  std::vector<std::string> notices;
};

BasicOpen basic_open(const ZRSpace& space, const std::vector<SuperElem>& gens);
bool member(const BasicOpen& u, std::size_t point_index);
BasicOpen intersect(const BasicOpen& a, const BasicOpen& b);
std::vector<std::size_t> open_points(const BasicOpen& u);

struct HomeomorphismReport {
  // psi[i]: index in the reduced enumeration of the image of point i.
  std::vector<std::size_t> psi;
  bool bijective = false;
  std::size_t opens_checked = 0;
  bool opens_commute = false;
  std::string detail;
};
// ψ: A_v ↦ A_v̂ against ZR(L̄, K̄) enumerated with the same bounds; also
// ψ(U(X)) = U(X̄) on sampled basic opens.
HomeomorphismReport even_homeomorphism(const ZRSpace& space, std::size_t sampled_opens = 20, std::uint64_t seed = 1);

struct SheafSections {
  std::vector<ZRPoint> excluded;
  std::vector<SuperElem> even_basis;
  bool odd_part = true;  // J_L is included in full
  int degree_bound = 0;
  std::string description;
};

// O_X(U) for U = X \ E (trivial point removed), up to pole order `degree_bound`.
SheafSections sections(const ZRSpace& space, const std::vector<ZRPoint>& excluded, int degree_bound,
                       std::size_t verify_places = 20, std::uint64_t seed = 1);
// Whether f lies in O_X(X \ E): its poles sit in E.
bool is_section(const ZRSpace& space, const std::vector<ZRPoint>& excluded, const SuperElem& f);

/// C_L: the discrete-valuation points with cofinite opens.
struct SuperCurve {
  ZRSpace space;
  std::vector<std::size_t> points;  // indices into space.points, trivial point removed

  const Valuation& stalk(std::size_t i) const { return space.valuations[points[i]]; }
};

SuperCurve supercurve(const ZRSpace& space);

// is_local, and every sampled element of value 0 is a unit of A_v.
bool stalk_is_local(const Valuation& v, std::size_t samples = 20, std::uint64_t seed = 1);
bool stalk_is_local(const Valuation& v, const std::vector<SuperElem>& sample);
// Curve points whose stalk fails stalk_is_local on one shared sample.
std::vector<std::size_t> nonlocal_stalks(const SuperCurve& c, std::size_t samples = 20, std::uint64_t seed = 1);

// The two views of a function: the element of L, and its class in L̄ = k(x).
struct FunctionViews {
  SuperElem element;
  RatFunc reduced;
};
FunctionViews function_views(const SuperElem& f);

struct IdentificationReport {
  std::size_t sections_checked = 0;
  std::size_t elements_checked = 0;
  bool ok = false;
  std::string detail;
};
// Sections embed in L, sampled elements of L appear in some O_X(U), and odd
// sections vanish at every point.
IdentificationReport check_function_field(const SuperCurve& c, std::size_t samples, std::uint64_t seed = 1);

}  // namespace sval
