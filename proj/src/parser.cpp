#include "sval/parser.hpp"

#include <cctype>

#include "sval/error.hpp"

namespace sval {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const std::string kTheta = "\xCE\xB8";  // θ

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  Ast parse() {
    Ast a = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(Errc::SyntaxError, msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Ast node(Ast::Kind k, std::size_t off, std::vector<Ast> kids) {
    Ast a;
    a.kind = k;
    a.offset = off;
    a.kids = std::move(kids);
    return a;
  }

  Ast expr() {
    Ast lhs = product();
    while (true) {
      skip();
      std::size_t off = pos_;
      if (accept('+')) {
        lhs = node(Ast::Kind::Add, off, {lhs, product()});
      } else if (accept('-')) {
        Ast rhs = product();
        lhs = node(Ast::Kind::Add, off, {lhs, node(Ast::Kind::Neg, off, {rhs})});
      } else {
        return lhs;
      }
    }
  }

  Ast product() {
    Ast lhs = unary();
    while (true) {
      skip();
      std::size_t off = pos_;
      if (accept('*')) {
        lhs = node(Ast::Kind::Mul, off, {lhs, unary()});
      } else if (accept('/')) {
        lhs = node(Ast::Kind::Div, off, {lhs, unary()});
      } else {
        skip();
        if (pos_ < s_.size() && (is_ident_start(s_[pos_]) || std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
          fail("implicit multiplication is not allowed");
        return lhs;
      }
    }
  }

  Ast unary() {
    skip();
    std::size_t off = pos_;
    if (accept('-')) return node(Ast::Kind::Neg, off, {unary()});
    return power();
  }

  Ast power() {
    Ast base = primary();
    skip();
    std::size_t off = pos_;
    if (!accept('^')) return base;
    skip();
    bool neg = accept('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer literal");
    std::string digits = s_.substr(start, pos_ - start);
    if (digits.size() > 4) fail("exponent too large");
    Ast p = node(Ast::Kind::Pow, off, {base});
    p.exponent = std::stoi(digits) * (neg ? -1 : 1);
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') fail("chained powers need parentheses");
    return p;
  }

  Ast primary() {
    skip();
    std::size_t off = pos_;
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Ast inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Ast a = node(Ast::Kind::Num, off, {});
      a.num = mpq_class(s_.substr(off, pos_ - off));
      return a;
    }
    if (s_.compare(pos_, kTheta.size(), kTheta) == 0) {
      pos_ += kTheta.size();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an index after θ");
      Ast a = node(Ast::Kind::Var, off, {});
      a.name = "t" + s_.substr(start, pos_ - start);
      return a;
    }
    if (is_ident_start(c)) {
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      Ast a = node(Ast::Kind::Var, off, {});
      a.name = s_.substr(off, pos_ - off);
      return a;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

int odd_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 't') return -1;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
  if (name.size() > 4) return -1;
  return std::stoi(name.substr(1));
}

}  // namespace

Ast parse_ast(const std::string& src) { return ExprParser(src).parse(); }

SuperElem elaborate(const Ast& a, const Ring& ring) {
  switch (a.kind) {
    case Ast::Kind::Num:
      return SuperElem::constant(ring, a.num);
    case Ast::Kind::Var: {
      int v = ring->var_index(a.name);
      if (v >= 0) return SuperElem::variable(ring, v);
      int k = odd_index(a.name);
      if (k >= 1 && k <= ring->odd_count) return SuperElem::theta(ring, k - 1);
      throw ParseError(Errc::UnknownVariable, "unknown variable '" + a.name + "'", a.offset);
    }
    case Ast::Kind::Neg:
      return -elaborate(a.kids[0], ring);
    case Ast::Kind::Add:
      return elaborate(a.kids[0], ring) + elaborate(a.kids[1], ring);
    case Ast::Kind::Mul:
      return elaborate(a.kids[0], ring) * elaborate(a.kids[1], ring);
    case Ast::Kind::Div: {
      SuperElem num = elaborate(a.kids[0], ring);
      SuperElem den = elaborate(a.kids[1], ring);
      if (!den.is_even()) throw ParseError(Errc::OddDenominator, "denominator " + den.to_string() + " is not even", a.offset);
      if (den.body().is_zero()) throw ParseError(Errc::DivisionByZero, "denominator " + den.to_string() + " is not invertible", a.offset);
      return num * den.inverse();
    }
    case Ast::Kind::Pow: {
      SuperElem base = elaborate(a.kids[0], ring);
      if (a.exponent < 0) {
        if (!base.is_even()) throw ParseError(Errc::OddDenominator, "negative power of a non-even element", a.offset);
        if (base.body().is_zero()) throw ParseError(Errc::DivisionByZero, "negative power of a non-invertible element", a.offset);
      }
      return base.pow(a.exponent);
    }
  }
  throw ParseError(Errc::SyntaxError, "bad expression node", a.offset);
}

SuperElem parse_expr(const std::string& src, const Ring& ring) {
  try {
    return elaborate(parse_ast(src), ring);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == Errc::DivisionByZero || e.code() == Errc::NotInvertible)
      throw ParseError(Errc::DivisionByZero, e.what(), 0);
    throw;
  }
}

MPoly parse_poly(const std::string& src, const Ring& ring) {
  SuperElem e = parse_expr(src, ring);
  if (!e.nilpotent_part().is_zero() || !e.body().is_polynomial())
    throw ParseError(Errc::SyntaxError, "expected an even polynomial, got " + e.to_string(), 0);
  return e.body().num();
}

// ---------------------------------------------------------------------------
// Ring descriptors

namespace {

class RingParser {
 public:
  explicit RingParser(const std::string& s) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  Ring parse() {
    RingDesc d;
    if (eat("Fp")) {
      d.base = BaseRing::Fp;
      d.p = number();
    } else if (eat("Q")) {
      d.base = BaseRing::Q;
    } else if (eat("Z")) {
      d.base = BaseRing::Z;
    } else {
      fail("expected Q, Z or Fp<p>");
    }
    std::string local_src;
    bool odd_seen = false;
    while (pos_ < s_.size()) {
      if (odd_seen) fail("odd variables must come last");
      char c = s_[pos_];
      if (c == '@') {
        if (!local_src.empty()) fail("only one localization");
        ++pos_;
        if (!eat("(")) fail("expected '(' after '@'");
        int depth = 1;
        std::size_t start = pos_;
        while (pos_ < s_.size() && depth > 0) {
          if (s_[pos_] == '(') ++depth;
          if (s_[pos_] == ')') --depth;
          ++pos_;
        }
        if (depth != 0) fail("unbalanced '(' in localization");
        local_src = s_.substr(start, pos_ - start - 1);
        continue;
      }
      if (c != '(' && c != '[') fail("expected '(' or '['");
      char close = c == '(' ? ')' : ']';
      ++pos_;
      std::size_t end = s_.find(close, pos_);
      if (end == std::string::npos) fail(std::string("missing '") + close + "'");
      auto items = split(s_.substr(pos_, end - pos_));
      std::size_t group_at = pos_;
      pos_ = end + 1;
      if (items.empty()) fail("empty variable group");
      if (is_odd_group(items)) {
        if (c == '(') fail("odd variables go in brackets");
        d.odd_count = odd_group(items, group_at);
        odd_seen = true;
        continue;
      }
      if (!local_src.empty()) fail("localization must follow the even variables");
      for (std::size_t i = 0; i < items.size(); ++i) {
        const std::string& it = items[i];
        if (it.size() > 3 && it.ends_with("^-1")) {
          std::string base = it.substr(0, it.size() - 3);
          if (c == '(' || d.even_names.empty() || d.even_names.back() != base) fail("'" + it + "' must follow " + base);
          d.even_kinds.back() = VarKind::Laurent;
          continue;
        }
        if (!is_name(it)) fail("bad variable name '" + it + "'");
        d.even_names.push_back(it);
        d.even_kinds.push_back(c == '(' ? VarKind::Rational : VarKind::Poly);
      }
    }
    Ring r;
    try {
      r = make_ring(d);
    } catch (const Error& e) {
      throw ParseError(e.code(), e.what(), 0);
    }
    if (!local_src.empty()) {
      MPoly p = parse_poly(local_src, r);
      r = localize(r, PrimeDatum{PrimeDatum::Kind::Polynomial, p});
    }
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(Errc::SyntaxError, msg, pos_); }

  bool eat(const std::string& tok) {
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  unsigned long number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) fail("expected a prime after Fp");
    return std::stoul(s_.substr(start, pos_ - start));
  }

  static std::vector<std::string> split(const std::string& body) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : body) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!body.empty()) out.push_back(cur);
    return out;
  }

  static bool is_name(const std::string& s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    for (char c : s)
      if (!is_ident_char(c)) return false;
    return true;
  }

  static std::string normalise_odd(const std::string& s) {
    return s.starts_with(kTheta) ? "t" + s.substr(kTheta.size()) : s;
  }

  static bool is_odd_group(const std::vector<std::string>& items) {
    for (const auto& raw : items) {
      std::string it = normalise_odd(raw);
      auto dots = it.find("..");
      if (dots != std::string::npos) {
        if (odd_index(it.substr(0, dots)) < 0 || odd_index(normalise_odd(it.substr(dots + 2))) < 0) return false;
      } else if (odd_index(it) < 0) {
        return false;
      }
    }
    return true;
  }

  int odd_group(const std::vector<std::string>& items, std::size_t at) {
    std::vector<int> idx;
    for (const auto& raw : items) {
      std::string it = normalise_odd(raw);
      auto dots = it.find("..");
      if (dots == std::string::npos) {
        idx.push_back(odd_index(it));
        continue;
      }
      int a = odd_index(it.substr(0, dots)), b = odd_index(normalise_odd(it.substr(dots + 2)));
      if (b < a) throw ParseError(Errc::SyntaxError, "empty odd range", at);
      for (int k = a; k <= b; ++k) idx.push_back(k);
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i] != static_cast<int>(i) + 1) throw ParseError(Errc::SyntaxError, "odd variables must be t1..tN in order", at);
    return static_cast<int>(idx.size());
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Ring parse_ring(const std::string& src) { return RingParser(src).parse(); }

}  // namespace sval
