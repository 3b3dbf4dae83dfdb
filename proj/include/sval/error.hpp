#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sval {

enum class Errc {
  GroupMismatch,
  RankTooLarge,
  UndefinedDifference,
  RingMismatch,
  UnsupportedIdeal,
  NotPrime,
  NotInRing,
  DivisionByZero,
  SyntaxError,
  UnknownVariable,
  OddDenominator,
  TrivialValuation,
  NotInvertible,
  AlreadyInA,
  GroupUnrecognized,
  NotDominating,
  NotIntegral,
  DependentPlaces,
  InfiniteTarget,
  AnchorInSupport,
  InfiniteRank,
  UnsupportedField,
  EmptyOpen,
  SupportMeetsU,
  InvalidArgument,
  Unsupported,
};

std::string_view errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Parse diagnostics carry a byte offset into the source string.
class ParseError : public Error {
 public:
  ParseError(Errc code, const std::string& what, std::size_t offset)
      : Error(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace sval
