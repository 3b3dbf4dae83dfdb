#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "sval/superalgebra.hpp"

namespace sval {

struct Ast {
  enum class Kind { Num, Var, Neg, Add, Mul, Div, Pow };
  Kind kind = Kind::Num;
  mpq_class num;
  std::string name;
  int exponent = 0;
  std::size_t offset = 0;
  std::vector<Ast> kids;
};

// Grammar, loosest first: sums, products and quotients, unary minus, powers.
// Powers take a literal integer exponent, optionally negative.
Ast parse_ast(const std::string& src);
SuperElem elaborate(const Ast& ast, const Ring& ring);
SuperElem parse_expr(const std::string& src, const Ring& ring);
// Even polynomial of the ring, e.g. a place "x^2+1".
MPoly parse_poly(const std::string& src, const Ring& ring);

// Ring descriptors: Q(x)[t1,t2], Z[x,x^-1][t1..t3], Fp5(x)[t1], Q[x]@(x)[t1].
Ring parse_ring(const std::string& src);

}  // namespace sval
