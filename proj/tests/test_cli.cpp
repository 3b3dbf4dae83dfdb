#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "sval/parser.hpp"
#include "sval/random.hpp"

using namespace sval;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Invocation& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, EvalGolden) {
  Invocation r = run({"eval", "--ring", "Q(x)[t1]", "--place", "x-2", "--expr", "(x-2)^3/(x-1)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(3)\n");
  Invocation j = run({"--json", "eval", "--ring", "Q(x)[t1]", "--place", "x-2", "--expr", "(x-2)*t1"});
  auto doc = json_of(j);
  EXPECT_EQ(doc["schema"], "sval/1");
  EXPECT_EQ(doc["value"], "inf");
  EXPECT_EQ(doc["support_member"], true);
  auto lex = json_of(run({"--json", "eval", "--ring", "Q(x,y)", "--val", "lex(x,y)", "--expr", "x*y^2 + x^2"}));
  EXPECT_EQ(lex["value"]["group"], 2);
  EXPECT_EQ(lex["value"]["value"], (std::vector<int>{1, 2}));
}

TEST(Cli, EfnJson) {
  Invocation r = run({"--json", "efn", "--ext", "t^2=x", "--val", "x"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = json_of(r);
  EXPECT_EQ(doc["e"], 2);
  EXPECT_EQ(doc["f"], 1);
  EXPECT_EQ(doc["n"], 2);
  EXPECT_EQ(doc["inequality"], "holds_with_equality");
  auto inert = json_of(run({"--json", "efn", "--ext", "t^2=x-1", "--val", "x"}));
  EXPECT_EQ(inert["e"], 1);
  EXPECT_EQ(inert["f"], 2);
  auto split = json_of(run({"--json", "efn", "--ext", "t^2=x", "--val", "x-1"}));
  EXPECT_EQ(split["entries"].size(), 2u);
  EXPECT_FALSE(split.contains("e"));
}

TEST(Cli, TextGoldens) {
  EXPECT_EQ(run({"psi", "--ring", "Q(x,y)[t1]", "--val", "lex(x,y)"}).out,
            "2 dominating classes of lex(x,y)\n"
            "  <> -> lex(x,y)  h = [1 0;0 1]\n"
            "  <(0,1)> -> lex(x,y)/Z^1  h = [1 0]\n");
  EXPECT_EQ(run({"approx", "--places", "x;x-1", "--targets", "2;-1"}).out,
            "x^2/(x - 1)\n"
            "  ord[x]: (2)\n"
            "  ord[x - 1]: (-1)\n");
  EXPECT_EQ(run({"extend", "--ext", "t^2=x", "--v", "x", "--w", "t"}).out.substr(0, 44),
            "ord[t] extends ord[x] along t^2=x\n  h = [2]\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"pair-check", "--ring", "Z[x,x^-1][t1,t2]", "--laurent", "3"}).code, 0);
  EXPECT_EQ(run({"pair-check", "--poly-pair", "x"}).code, 1);
  EXPECT_EQ(run({"extend", "--ext", "t^2=x", "--v", "x", "--w", "t-1"}).code, 1);
  EXPECT_EQ(run({"dominate", "--ring", "Q(x,y)[t1]", "--w", "x", "--v", "lex(x,y)"}).code, 0);
  EXPECT_EQ(run({"dominate", "--ring", "Q(x,y)[t1]", "--w", "lex(x,y)", "--v", "x"}).code, 1);
  EXPECT_EQ(run({"convex", "--val", "x", "--segment", "[-2,2]"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--expr", "x"}).code, 2);
  EXPECT_EQ(run({"approx", "--places", "x;x", "--targets", "1;2"}).code, 2);
  EXPECT_EQ(run({"zr", "points", "--ring", "Q(x,y)[t1]"}).code, 2);
  EXPECT_EQ(run({"check", "--suite", "nope"}).code, 2);
}

TEST(Cli, DiagnosticsCarrySpans) {
  Invocation r = run({"eval", "--place", "x", "--expr", "(x-2))"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("SyntaxError"), std::string::npos);
  EXPECT_NE(r.err.find("  --expr: (x-2))\n               ^"), std::string::npos) << r.err;
  Invocation odd = run({"eval", "--place", "x", "--expr", "1/t1"});
  EXPECT_NE(odd.err.find("OddDenominator"), std::string::npos);
  Invocation unk = run({"eval", "--place", "x", "--expr", "y+1"});
  EXPECT_NE(unk.err.find("UnknownVariable"), std::string::npos);
  Invocation ring = run({"eval", "--ring", "Q(x)[t1", "--place", "x", "--expr", "1"});
  EXPECT_NE(ring.err.find("--ring"), std::string::npos);
}

TEST(Cli, GarbageNeverEscapes) {
  const std::string alphabet = "xyt1230()+-*/^ θ.,[]";
  Rng rng = sample_rng(11, 0);
  for (int i = 0; i < 300; ++i) {
    std::string s;
    std::size_t len = 1 + rng() % 12;
    for (std::size_t k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
    Invocation r = run({"eval", "--ring", "Q(x)[t1,t2]", "--place", "x", "--expr", s});
    EXPECT_TRUE(r.code == 0 || r.code == 2) << s;
    if (r.code == 2) EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << s;
  }
}

TEST(Cli, Determinism) {
  std::vector<std::string> a{"--seed", "7", "pair-check", "--ring", "Z[x,x^-1][t1]", "--laurent", "5", "--side", "inf"};
  EXPECT_EQ(run(a).out, run(a).out);
  std::vector<std::string> c{"--json", "--seed", "7", "check", "--suite", "convexity,approximation"};
  Invocation first = run(c), second = run(c);
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
  ::setenv("SVAL_SEED", "7", 1);
  Invocation env = run({"--json", "check", "--suite", "convexity,approximation"});
  ::unsetenv("SVAL_SEED");
  EXPECT_EQ(env.out, first.out);
  EXPECT_EQ(json_of(env)["seed"], 7);
  Invocation trailing = run({"check", "--suite", "convexity,approximation", "--seed", "7", "--json"});
  EXPECT_EQ(trailing.out, first.out);
}

TEST(Cli, ZariskiVerbs) {
  auto pts = json_of(run({"--json", "zr", "points", "--degree", "1"}));
  EXPECT_EQ(pts["count"], 17);
  EXPECT_EQ(pts["points"][0]["kind"], "trivial");
  EXPECT_EQ(pts["points"][1]["kind"], "infinity");
  auto open = json_of(run({"--json", "zr", "open", "--degree", "1", "--gens", "1/x;t1"}));
  EXPECT_EQ(open["count"], 16);
  EXPECT_EQ(open["notices"].size(), 1u);
  Invocation sec = run({"--json", "zr", "sections", "--exclude", "inf", "--bound", "2"});
  ASSERT_EQ(sec.code, 0) << sec.err;
  EXPECT_EQ(json_of(sec)["even_basis"], (std::vector<std::string>{"1", "x", "x^2"}));
}

TEST(Parser, Examples) {
  Ring r = parse_ring("Q(x)[t1,t2]");
  EXPECT_TRUE(parse_expr("t1*t2 + t2*t1", r).is_zero());
  EXPECT_TRUE(parse_expr("θ1*θ2 + t2*t1", r).is_zero());
  EXPECT_EQ(parse_expr("-x^2", r), parse_expr("-(x^2)", r));
  EXPECT_EQ(parse_expr("2^-1*x", r), parse_expr("x/2", r));
  EXPECT_EQ(parse_expr("(x-2)^3/(x-1) + (x-2)*t1", r).to_string(), parse_expr("(x-2)*t1 + (x-2)^3/(x-1)", r).to_string());
}

TEST(Parser, RoundTripCorpus) {
  std::vector<std::pair<std::string, std::vector<std::string>>> fixed{
      {"Q(x)[t1,t2]",
       {"0", "1", "-3/4", "x", "-x", "x^2 - 1", "1/x", "(x-2)^3/(x-1)", "t1", "t1*t2", "x*t1 - t2/(x+1)",
        "(1 + t1*t2)^-1", "(x + t1*t2)^3", "t2*t1", "θ2*x", "2*(x-1)/(3*x^2+1) + 5*t1*t2/x", "(x^2+1)^2/(x^2+1)"}},
      {"Z[x,x^-1][t1,t2,t3]", {"x^-1", "3*x^-2 + 6*x", "x^-1*t1*t3", "(1+x)^3 - t2*t3", "t3*t2*t1"}},
      {"Fp5(x)[t1]", {"4*x + 3", "1/(x^2+2)", "6*x", "x^5 - x + t1"}},
      {"Q(x,y)[t1]", {"x*y - y*x", "x/y + y/x", "(x+y)^2*t1", "x^2*y - 1/(x-y)"}},
      {"Q[x]@(x)[t1]", {"1/(x+1)", "x^2/(1-x)", "t1/(2+x)"}},
  };
  std::size_t n = 0;
  for (const auto& [desc, exprs] : fixed) {
    Ring r = parse_ring(desc);
    for (const auto& s : exprs) {
      SuperElem a = parse_expr(s, r);
      EXPECT_EQ(parse_expr(a.to_string(), r), a) << desc << ": " << s << " -> " << a.to_string();
      ++n;
    }
  }
  ElemShape shape;
  for (const char* desc : {"Q(x)[t1,t2,t3]", "Z[x,x^-1][t1,t2]", "Fp7(x)[t1,t2]", "Q(x,y)[t1]"}) {
    Ring r = parse_ring(desc);
    for (std::uint64_t i = 0; i < 30; ++i) {
      Rng rng = sample_rng(21, i);
      SuperElem a = random_elem(rng, r, shape);
      std::string printed = a.to_string();
      SuperElem b = parse_expr(printed, r);
      EXPECT_EQ(b, a) << desc << ": " << printed;
      EXPECT_EQ(b.to_string(), printed);
      ++n;
    }
  }
  EXPECT_GE(n, 100u);
}
