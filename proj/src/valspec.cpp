#include "sval/valspec.hpp"

#include <algorithm>
#include <cctype>

#include "sval/error.hpp"
#include "sval/parser.hpp"

namespace sval {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

int var_of(const std::string& name, const Ring& r) {
  for (int i = 0; i < r->nvars(); ++i)
    if (r->even_names[static_cast<std::size_t>(i)] == name) return i;
  throw Error(Errc::UnknownVariable, "'" + name + "' is not an even variable of " + r->to_string());
}

unsigned long parse_prime(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) || s.size() > 6)
    throw ParseError(Errc::SyntaxError, "expected a prime, got '" + s + "'", 0);
  return std::stoul(s);
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

PlaceDatum parse_place(const std::string& src, const Ring& ring) {
  std::string s = strip(src);
  if (s == "inf") {
    if (ring->nvars() != 1) throw Error(Errc::InvalidArgument, "'inf' is ambiguous; write inf(<var>)");
    return PlaceDatum::infinity(0);
  }
  if (starts_with(s, "inf(") && s.back() == ')') return PlaceDatum::infinity(var_of(s.substr(4, s.size() - 5), ring));
  if (starts_with(s, "padic:")) return PlaceDatum::padic(parse_prime(s.substr(6)));
  return PlaceDatum::finite(parse_poly(s, ring));
}

Valuation parse_valuation(const std::string& src, const Ring& ring) {
  std::string s = strip(src);
  if (s.empty()) throw ParseError(Errc::SyntaxError, "empty valuation descriptor", 0);
  if (s == "trivial") return trivial_valuation(ring);
  if (starts_with(s, "lex(") && s.back() == ')') {
    std::string body = s.substr(4, s.size() - 5);
    std::vector<int> center;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      center.push_back(var_of(body.substr(pos, comma - pos), ring));
      pos = comma + 1;
    }
    return monomial_lex(ring, center);
  }
  if (starts_with(s, "comp(") && s.back() == ')') {
    std::string body = s.substr(5, s.size() - 6);
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')') --depth;
      if (body[i] == ';' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) throw ParseError(Errc::SyntaxError, "comp needs 'outer; inner'", 5);
    PlaceDatum outer = parse_place(body.substr(0, split), ring);
    return composite_valuation(ring, outer, parse_valuation(body.substr(split + 1), ring));
  }
  if (starts_with(s, "modp:")) {
    std::size_t colon = s.find(':', 5);
    if (colon == std::string::npos) throw ParseError(Errc::SyntaxError, "modp needs 'modp:<p>:<place>'", 5);
    return modp_valuation(ring, parse_prime(s.substr(5, colon - 5)), parse_place(s.substr(colon + 1), ring));
  }
  return place_valuation(ring, parse_place(s, ring));
}

}  // namespace sval
