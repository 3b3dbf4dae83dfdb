#pragma once

#include <string>

#include "sval/valuation.hpp"

namespace sval {

// Valuation descriptors:
//   trivial | inf | inf(y) | x-2 | x^2+1 | padic:3 | lex(x,y)
//   comp(x-1; y) | comp(inf(x); lex(y)) | modp:3:x | modp:5:inf
PlaceDatum parse_place(const std::string& src, const Ring& ring);
Valuation parse_valuation(const std::string& src, const Ring& ring);

}  // namespace sval
