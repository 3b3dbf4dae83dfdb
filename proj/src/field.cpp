#include "sval/field.hpp"

#include "sval/error.hpp"

namespace sval {

bool is_prime_number(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(unsigned long p) {
  if (!is_prime_number(p)) throw Error(Errc::InvalidArgument, "F_p needs prime p, got " + std::to_string(p));
  return Field(p);
}

mpq_class Field::reduce(const mpq_class& a) const {
  if (p_ == 0) return a;
  mpz_class pz(p_);
  mpz_class num = a.get_num() % pz;
  mpz_class den = a.get_den() % pz;
  if (den == 0) throw Error(Errc::DivisionByZero, "denominator vanishes mod " + std::to_string(p_));
  mpz_class den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  mpz_class r = (num * den_inv) % pz;
  if (r < 0) r += pz;
  return mpq_class(r);
}

mpq_class Field::inv(const mpq_class& a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (p_ == 0) return 1 / a;
  return reduce(mpq_class(a.get_den(), a.get_num()));
}

std::string Field::to_string() const { return p_ == 0 ? "Q" : "Fp" + std::to_string(p_); }

std::string_view errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::RankTooLarge: return "RankTooLarge";
    case Errc::UndefinedDifference: return "UndefinedDifference";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::UnsupportedIdeal: return "UnsupportedIdeal";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotInRing: return "NotInRing";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::OddDenominator: return "OddDenominator";
    case Errc::TrivialValuation: return "TrivialValuation";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::AlreadyInA: return "AlreadyInA";
    case Errc::GroupUnrecognized: return "GroupUnrecognized";
    case Errc::NotDominating: return "NotDominating";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::DependentPlaces: return "DependentPlaces";
    case Errc::InfiniteTarget: return "InfiniteTarget";
    case Errc::AnchorInSupport: return "AnchorInSupport";
    case Errc::InfiniteRank: return "InfiniteRank";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::EmptyOpen: return "EmptyOpen";
    case Errc::SupportMeetsU: return "SupportMeetsU";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

}  // namespace sval
