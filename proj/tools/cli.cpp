#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "sval/error.hpp"
#include "sval/extension.hpp"
#include "sval/pairs.hpp"
#include "sval/parser.hpp"
#include "sval/suite.hpp"
#include "sval/valspec.hpp"
#include "sval/zariski.hpp"

namespace sval::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "sval/1";

// An input error tied to one option value.
struct Diagnostic {
  std::string option;
  std::string source;
  std::string message;
  std::optional<std::size_t> offset;
};

template <class F>
auto with_source(const std::string& option, const std::string& src, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw Diagnostic{option, src, e.what(), e.offset()};
  } catch (const Error& e) {
    throw Diagnostic{option, src, e.what(), std::nullopt};
  }
}

std::vector<std::string> split(const std::string& s, char sep = ';') {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& x : out) {
    x.erase(0, x.find_first_not_of(' '));
    x.erase(x.find_last_not_of(' ') + 1);
  }
  out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
  return out;
}

Ring ring_of(const std::string& src, const std::string& option = "--ring") {
  return with_source(option, src, [&] { return parse_ring(src); });
}
SuperElem expr_of(const std::string& src, const Ring& r, const std::string& option) {
  return with_source(option, src, [&] { return parse_expr(src, r); });
}
Valuation val_of(const std::string& src, const Ring& r, const std::string& option) {
  return with_source(option, src, [&] { return parse_valuation(src, r); });
}

Json gvalue_json(const GValue& g) {
  if (g.is_infinite()) return "inf";
  return Json{{"group", g.group().rank}, {"value", g.coords()}};
}

Json hom_json(const OrderHom& h) { return Json{{"source", h.source.rank}, {"target", h.target.rank}, {"matrix", h.matrix}}; }

Segment parse_segment(const std::string& src, GroupDesc g) {
  return with_source("--segment", src, [&]() -> Segment {
    if (src == "empty") return Segment::empty(g);
    if (src == "whole") return Segment::whole(g);
    if (src == "0" || src == "{0}" || src == "<>") return Segment::subgroup(g, {});
    if (src.size() >= 2 && src.front() == '<' && src.back() == '>') {
      std::vector<GValue> basis;
      std::string body = src.substr(1, src.size() - 2);
      std::size_t pos = 0;
      while (pos < body.size()) {
        std::size_t close = body.find(')', pos);
        if (body[pos] != '(' || close == std::string::npos) throw ParseError(Errc::SyntaxError, "expected (a,..)", pos + 1);
        basis.push_back(parse_gvalue(body.substr(pos, close - pos + 1), g));
        pos = close + 1;
        if (pos < body.size() && body[pos] == ',') ++pos;
      }
      return Segment::subgroup(g, basis);
    }
    if (src.size() > 4 && src.rfind("[-", 0) == 0 && src.back() == ']') {
      std::string inner = src.substr(2, src.size() - 3);
      std::string bound = inner;
      if (inner.front() == '(') {
        bound = inner.substr(0, inner.find(')') + 1);
      } else {
        bound = "(" + inner.substr(0, inner.find(',')) + ")";
      }
      return Segment::interval(parse_gvalue(bound, g));
    }
    throw ParseError(Errc::SyntaxError, "expected empty, whole, 0, <(a,..),..> or [-k,k]", 0);
  });
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("SVAL_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Diagnostic{"SVAL_SEED", s, "not an unsigned integer", std::nullopt};
    }
  }
  return 1;
}

struct Output {
  Output(std::ostream& o, bool j) : out(o), json(j) {}

  std::ostream& out;
  bool json = false;
  Json doc = Json{{"schema", kSchema}};
  std::ostringstream text;

  int finish(int code) {
    if (json) {
      out << doc.dump() << '\n';
    } else {
      out << text.str();
    }
    return code;
  }
};

struct Options {
  std::string ring = "Q(x)[t1]";
  std::string val = "x";
  std::string expr, w, v, ext, big, places, targets, anchors, over = "Q", gens, exclude, suite = "all";
  std::string segment, laurent_side = "zero";
  std::string poly_pair;
  unsigned long laurent = 0;
  int bound = 6;
  int pole_bound = 3;
  int degree = 3;
  int height = 3;
  std::size_t samples = 60;
  bool strong = false;
};

int cmd_eval(const Options& o, Output& w) {
  Ring r = ring_of(o.ring);
  Valuation v = val_of(o.val, r, "--place");
  SuperElem x = expr_of(o.expr, r, "--expr");
  GValue g = with_source("--expr", o.expr, [&] { return v.eval(x); });
  w.doc["value"] = gvalue_json(g);
  w.doc["support_member"] = g.is_infinite();
  w.text << g.to_string() << '\n';
  return 0;
}

int cmd_pair_check(const Options& o, std::uint64_t seed, Output& w) {
  Ring r = ring_of(o.ring);
  ValuationPair pair;
  if (o.laurent) {
    pair = with_source("--laurent", std::to_string(o.laurent), [&] { return laurent_pair(r, o.laurent, o.laurent_side == "inf"); });
  } else if (!o.poly_pair.empty()) {
    MPoly pi = with_source("--poly-pair", o.poly_pair, [&] { return parse_poly(o.poly_pair, r); });
    pair = polynomial_pair(r, pi);
  } else {
    pair = pair_of(val_of(o.val, r, "--val"));
  }
  PairOptions opt;
  opt.bound = o.bound;
  opt.samples = o.samples;
  opt.seed = seed;
  PairVerdict pv = is_valuation_pair(pair, opt);
  w.doc["pair"] = pair.label;
  w.doc["verdict"] = pv.verdict();
  w.doc["bound"] = pv.bound;
  Json wit = Json::array();
  for (const auto& [x, xp] : pv.witnesses) wit.push_back(Json{{"x", x.to_string()}, {"x_prime", xp.to_string()}});
  w.doc["witnesses"] = wit;
  w.doc["counterexample"] = pv.counterexample ? Json(pv.counterexample->to_string()) : Json(nullptr);
  w.doc["reason"] = pv.reason;
  w.text << pair.label << ": " << pv.verdict() << " (bound " << pv.bound << ", " << pv.witnesses.size() << " witnesses)\n";
  for (const auto& [x, xp] : pv.witnesses) w.text << "  x = " << x.to_string() << "  x' = " << xp.to_string() << '\n';
  if (pv.counterexample) w.text << "  counterexample: " << pv.counterexample->to_string() << '\n';
  if (!pv.reason.empty()) w.text << "  " << pv.reason << '\n';
  return pv.pass ? 0 : 1;
}

int cmd_convex(const Options& o, std::uint64_t seed, Output& w) {
  Ring r = ring_of(o.ring);
  Valuation v = val_of(o.val, r, "--val");
  Segment h = parse_segment(o.segment, v.group());
  ConvexIdeal a = with_source("--segment", o.segment, [&] { return ideal_of_segment(h, v); });
  Segment back = segment_of_ideal(a);
  AxiomOptions opt;
  opt.seed = seed;
  opt.trials = o.samples;
  SampleReport conv = is_v_convex(a, opt);
  bool round_trip = same_on_box(back, h);
  Json members = Json::array();
  w.text << "ideal " << a.label << '\n';
  w.text << "segment back: " << back.to_string() << (round_trip ? " (round trip)" : " (differs)") << '\n';
  w.text << "v-convex on " << conv.trials << " samples: " << (conv.ok() ? "yes" : "no") << '\n';
  if (!o.expr.empty()) {
    for (const auto& s : split(o.expr)) {
      bool in = a.member(expr_of(s, r, "--expr"));
      members.push_back(Json{{"element", s}, {"member", in}});
      w.text << "  " << s << ": " << (in ? "in" : "out") << '\n';
    }
  }
  w.doc["ideal"] = a.label;
  w.doc["segment"] = h.to_string();
  w.doc["segment_back"] = back.to_string();
  w.doc["round_trip"] = round_trip;
  w.doc["convex"] = conv.ok();
  w.doc["members"] = members;
  return round_trip && conv.ok() ? 0 : 1;
}

int cmd_dominate(const Options& o, Output& w) {
  Ring r = ring_of(o.ring);
  Valuation wv = val_of(o.w, r, "--w"), vv = val_of(o.v, r, "--v");
  Dominance d = dominates(wv, vv);
  w.doc["dominates"] = d.yes;
  w.doc["h"] = d.h ? hom_json(*d.h) : Json(nullptr);
  w.doc["counterexample"] = d.counterexample ? Json(d.counterexample->to_string()) : Json(nullptr);
  w.doc["reason"] = d.reason;
  w.text << wv.label() << (d.yes ? " dominates " : " does not dominate ") << vv.label() << '\n';
  if (d.h) w.text << "  h = " << d.h->to_string() << '\n';
  if (d.counterexample) w.text << "  counterexample: " << d.counterexample->to_string() << '\n';
  if (!d.reason.empty()) w.text << "  " << d.reason << '\n';
  return d.yes ? 0 : 1;
}

int cmd_psi(const Options& o, Output& w) {
  Ring r = ring_of(o.ring);
  Valuation v = val_of(o.val, r, "--val");
  auto entries = psi_v(v);
  Json list = Json::array();
  w.text << entries.size() << " dominating classes of " << v.label() << '\n';
  for (const auto& e : entries) {
    list.push_back(Json{{"subgroup", e.subgroup.to_string()}, {"valuation", e.w.label()}, {"h", hom_json(e.h)}});
    w.text << "  " << e.subgroup.to_string() << " -> " << e.w.label() << "  h = " << e.h.to_string() << '\n';
  }
  w.doc["classes"] = list;
  return 0;
}

RingExtension extension_of(const Options& o, const Ring& small) {
  if (!o.ext.empty()) {
    if (!o.big.empty()) {
      Ring big = ring_of(o.big, "--big");
      return with_source("--ext", o.ext, [&] { return parse_extension(o.ext, small, big); });
    }
    return with_source("--ext", o.ext, [&] { return parse_extension(o.ext, small); });
  }
  if (o.big.empty()) throw Diagnostic{"--ext", "", "one of --ext or --big is required", std::nullopt};
  Ring big = ring_of(o.big, "--big");
  return with_source("--big", o.big, [&] { return inclusion_extension(small, big); });
}

int cmd_extend(const Options& o, std::uint64_t seed, Output& w) {
  Ring small = ring_of(o.ring);
  RingExtension ext = extension_of(o, small);
  Valuation v = val_of(o.v, small, "--v"), wv = val_of(o.w, ext.big, "--w");
  ExtensionVerdict ev = check_extension(ext, v, wv, seed);
  w.doc["extension"] = ext.label;
  w.doc["extends"] = ev.extends;
  w.doc["h"] = ev.h ? hom_json(*ev.h) : Json(nullptr);
  w.doc["J"] = ev.J ? Json(ev.J_string()) : Json(nullptr);
  w.doc["checks"] = Json{{"pair_precedes", ev.checks.pair_precedes},
                         {"restriction_valuation", ev.checks.restriction_valuation},
                         {"support_contained", ev.checks.support_contained},
                         {"hom_matches", ev.checks.hom_matches}};
  w.doc["counterexample"] = ev.counterexample ? Json(ev.counterexample->to_string()) : Json(nullptr);
  w.doc["reason"] = ev.reason;
  w.text << wv.label() << (ev.extends ? " extends " : " does not extend ") << v.label() << " along " << ext.label << '\n';
  if (ev.h) w.text << "  h = " << ev.h->to_string() << '\n';
  if (ev.J) w.text << "  J = " << ev.J_string() << '\n';
  if (ev.counterexample) w.text << "  counterexample: " << ev.counterexample->to_string() << '\n';
  if (!ev.reason.empty()) w.text << "  " << ev.reason << '\n';
  return ev.extends ? 0 : 1;
}

int cmd_approx(const Options& o, Output& w) {
  Ring r = ring_of(o.ring);
  std::vector<Valuation> places;
  for (const auto& p : split(o.places)) places.push_back(val_of(p, r, "--places"));
  if (places.empty()) throw Diagnostic{"--places", o.places, "no places given", std::nullopt};
  SuperElem h;
  if (o.strong) {
    std::vector<SuperElem> anchors;
    for (const auto& a : split(o.anchors)) anchors.push_back(expr_of(a, r, "--anchors"));
    h = with_source("--anchors", o.anchors, [&] { return strong_approximate(places, anchors); });
  } else {
    std::vector<GValue> targets;
    for (const auto& t : split(o.targets)) {
      std::string text = t.front() == '(' || t == "inf" ? t : "(" + t + ")";
      targets.push_back(with_source("--targets", t, [&] { return parse_gvalue(text, places[0].group()); }));
    }
    h = with_source("--targets", o.targets, [&] { return approximate(places, targets); });
  }
  Json vals = Json::array();
  w.text << h.to_string() << '\n';
  for (const auto& p : places) {
    GValue g = p.eval(h);
    vals.push_back(Json{{"place", p.label()}, {"value", gvalue_json(g)}});
    w.text << "  " << p.label() << ": " << g.to_string() << '\n';
  }
  w.doc["element"] = h.to_string();
  w.doc["values"] = vals;
  return 0;
}

int cmd_efn(const Options& o, Output& w) {
  Ring small = ring_of(o.ring);
  RingExtension ext = extension_of(o, small);
  Valuation v = val_of(o.val, small, "--val");
  RamificationData d = with_source("--ext", o.ext, [&] { return ramification_table(ext, v, {}, o.bound); });
  Json entries = Json::array();
  for (const auto& e : d.entries) {
    entries.push_back(Json{{"w", e.w.label()},
                           {"e", e.e},
                           {"f", e.f ? Json(*e.f) : Json("inf")},
                           {"torsion_order", e.torsion_order}});
  }
  if (d.entries.size() == 1) {
    w.doc["e"] = d.entries[0].e;
    w.doc["f"] = d.entries[0].f ? Json(*d.entries[0].f) : Json("inf");
  }
  w.doc["n"] = d.n ? Json(*d.n) : Json(nullptr);
  w.doc["inequality"] = d.inequality;
  w.doc["sum_ef"] = d.sum_ef;
  w.doc["entries"] = entries;
  w.doc["note"] = d.note;
  w.text << "extension " << ext.label << ", v = " << v.label() << '\n';
  for (const auto& e : d.entries)
    w.text << "  " << e.w.label() << ": e = " << e.e << ", f = " << (e.f ? std::to_string(*e.f) : "inf") << '\n';
  w.text << "n = " << (d.n ? std::to_string(*d.n) : "?") << ", sum ef = " << d.sum_ef << ": " << d.inequality << '\n';
  if (!d.note.empty()) w.text << d.note << '\n';
  return d.inequality == "violated" ? 1 : 0;
}

std::vector<ZRPoint> points_of(const std::string& src, const ZRSpace& s, const std::string& option) {
  std::vector<ZRPoint> out;
  for (const auto& p : split(src)) {
    PlaceDatum d = with_source(option, p, [&] { return parse_place(p, s.L); });
    out.push_back(ZRPoint::at(d));
  }
  return out;
}

int cmd_zr(const std::string& what, const Options& o, std::uint64_t seed, Output& w) {
  Ring L = ring_of(o.ring), K = ring_of(o.over, "--over");
  ZRSpace s = with_source("--ring", o.ring, [&] { return make_space(L, K); });
  enumerate_points(s, o.degree, o.height);
  const auto& names = s.L->even_names;
  w.doc["degree_bound"] = o.degree;
  w.doc["height_bound"] = o.height;
  auto point_list = [&](const std::vector<std::size_t>& idx) {
    Json arr = Json::array();
    for (std::size_t i : idx) arr.push_back(Json::parse(s.points[i].to_json(names)));
    return arr;
  };
  if (what == "points") {
    std::vector<std::size_t> all(s.points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    w.doc["count"] = s.points.size();
    w.doc["points"] = point_list(all);
    w.text << s.points.size() << " points (degree <= " << o.degree << ")\n";
    for (const auto& p : s.points) w.text << "  " << p.to_string(names) << '\n';
    return 0;
  }
  if (what == "open") {
    std::vector<SuperElem> gens;
    for (const auto& g : split(o.gens)) gens.push_back(expr_of(g, s.L, "--gens"));
    BasicOpen u = basic_open(s, gens);
    auto idx = open_points(u);
    w.doc["count"] = idx.size();
    w.doc["points"] = point_list(idx);
    w.doc["notices"] = u.notices;
    for (const auto& n : u.notices) w.text << "note: " << n << '\n';
    w.text << idx.size() << " of " << s.points.size() << " points\n";
    for (std::size_t i : idx) w.text << "  " << s.points[i].to_string(names) << '\n';
    return 0;
  }
  std::vector<ZRPoint> ex = points_of(o.exclude, s, "--exclude");
  SheafSections sec = with_source("--exclude", o.exclude, [&] { return sections(s, ex, o.pole_bound, 20, seed); });
  Json basis = Json::array();
  for (const auto& b : sec.even_basis) basis.push_back(b.to_string());
  Json excluded = Json::array();
  for (const auto& p : sec.excluded) excluded.push_back(Json::parse(p.to_json(names)));
  w.doc["excluded"] = excluded;
  w.doc["even_basis"] = basis;
  w.doc["odd_part"] = sec.odd_part;
  w.doc["description"] = sec.description;
  w.text << sec.description << '\n';
  for (const auto& b : sec.even_basis) w.text << "  " << b.to_string() << '\n';
  return 0;
}

int cmd_check(const Options& o, std::uint64_t seed, Output& w) {
  std::vector<SuiteResult> results;
  if (o.suite == "all") {
    results = run_all_suites(seed);
  } else {
    for (const auto& name : split(o.suite, ','))
      results.push_back(with_source("--suite", name, [&] { return run_suite(name, seed); }));
  }
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back(Json{{"id", r.id}, {"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    w.text << r.id << ' ' << r.name << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail << '\n';
  }
  w.doc["seed"] = seed;
  w.doc["suites"] = arr;
  w.doc["pass"] = all;
  return all ? 0 : 1;
}

void report(std::ostream& err, const Diagnostic& d) {
  err << "error: " << d.message << '\n';
  if (d.option.empty() && d.source.empty()) return;
  std::string prefix = "  " + d.option + ": ";
  err << prefix << d.source << '\n';
  if (d.offset) err << std::string(prefix.size() + std::min(*d.offset, d.source.size()), ' ') << "^\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valuations on supercommutative rings", "sval"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  bool json = false;
  std::optional<std::uint64_t> seed_opt;
  app.add_flag("--json", json, "Emit JSON (schema sval/1)");
  app.add_option("--seed", seed_opt, "Sampling seed (default: SVAL_SEED or 1)");

  auto ring_opt = [&](CLI::App* c) { c->add_option("--ring", o.ring, "Ring descriptor, e.g. Q(x)[t1,t2]")->capture_default_str(); };
  auto samples_opt = [&](CLI::App* c) { c->add_option("--samples", o.samples, "Random samples")->capture_default_str(); };

  auto* eval = app.add_subcommand("eval", "Value of an element");
  ring_opt(eval);
  eval->add_option("--place,--val", o.val, "Valuation: x-2, inf, x^2+1, lex(x,y), comp(x-1; y), modp:3:x, trivial")->required();
  eval->add_option("--expr", o.expr, "Element")->required();

  auto* pair = app.add_subcommand("pair-check", "Check that a pair (A, p) is a valuation pair");
  ring_opt(pair);
  samples_opt(pair);
  pair->add_option("--val", o.val, "Pair of a valuation");
  pair->add_option("--laurent", o.laurent, "Declared pair (Z[x] + pR, xA + pR) for the prime p");
  pair->add_option("--side", o.laurent_side, "zero or inf, for --laurent")->check(CLI::IsMember({"zero", "inf"}));
  pair->add_option("--poly-pair", o.poly_pair, "Pair (k[x] + J, pi k[x] + J) for the polynomial pi");
  pair->add_option("--bound", o.bound, "Witness exponent bound")->capture_default_str();

  auto* convex = app.add_subcommand("convex", "v-convex ideal of a segment");
  ring_opt(convex);
  samples_opt(convex);
  convex->add_option("--val", o.val, "Valuation")->required();
  convex->add_option("--segment", o.segment, "empty, whole, 0, <(a,..),..> or [-k,k]")->required();
  convex->add_option("--expr", o.expr, "Elements to test, separated by ';'");

  auto* dom = app.add_subcommand("dominate", "Whether w dominates v");
  ring_opt(dom);
  dom->add_option("--w", o.w, "Dominating valuation")->required();
  dom->add_option("--v", o.v, "Dominated valuation")->required();

  auto* psi = app.add_subcommand("psi", "Dominating classes by isolated subgroup");
  ring_opt(psi);
  psi->add_option("--val", o.val, "Valuation")->required();

  auto* extend = app.add_subcommand("extend", "Whether w on S extends v on R");
  ring_opt(extend);
  extend->add_option("--ext", o.ext, "Relation such as t^2=x");
  extend->add_option("--big", o.big, "Larger ring (inclusion, or the target of --ext)");
  extend->add_option("--v", o.v, "Valuation on R")->required();
  extend->add_option("--w", o.w, "Valuation on S")->required();

  auto* approx = app.add_subcommand("approx", "Approximation at independent places");
  ring_opt(approx);
  approx->add_option("--places", o.places, "Places separated by ';'")->required();
  approx->add_option("--targets", o.targets, "Target values separated by ';'");
  approx->add_option("--anchors", o.anchors, "Anchor elements separated by ';' (with --strong)");
  approx->add_flag("--strong", o.strong, "Strong approximation");

  auto* efn = app.add_subcommand("efn", "Ramification indices and residue degrees");
  ring_opt(efn);
  efn->add_option("--ext", o.ext, "Relation such as t^2=x");
  efn->add_option("--big", o.big, "Larger ring for an inclusion");
  efn->add_option("--val", o.val, "Valuation on the small ring")->capture_default_str();
  efn->add_option("--bound", o.bound, "Degree bound")->capture_default_str();

  auto* zr = app.add_subcommand("zr", "Zariski-Riemann space of k(x)[θ..] over K");
  zr->require_subcommand(1);
  std::string zr_verb;
  for (const char* name : {"points", "open", "sections"}) {
    auto* c = zr->add_subcommand(name, std::string("ZR ") + name);
    c->add_option("--ring", o.ring, "L, e.g. Q(x)[t1,t2]")->capture_default_str();
    c->add_option("--over", o.over, "K, e.g. Q or Q[x]")->capture_default_str();
    c->add_option("--degree", o.degree, "Enumeration degree bound")->capture_default_str();
    c->add_option("--height", o.height, "Coefficient height bound over Q")->capture_default_str();
    c->callback([&zr_verb, name] { zr_verb = name; });
    if (std::string(name) == "open") c->add_option("--gens", o.gens, "Generators separated by ';'");
    if (std::string(name) == "sections") {
      c->add_option("--exclude", o.exclude, "Excluded places separated by ';'");
      c->add_option("--bound", o.pole_bound, "Pole order bound")->capture_default_str();
    }
  }

  auto* check = app.add_subcommand("check", "Run property suites");
  check->add_option("--suite", o.suite, "all, or names separated by ','")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << "run 'sval --help' for usage\n";
    return 2;
  }

  Output w{out, json};
  try {
    std::uint64_t seed = seed_opt ? *seed_opt : default_seed();
    int code = 0;
    if (eval->parsed()) {
      w.doc["command"] = "eval";
      code = cmd_eval(o, w);
    } else if (pair->parsed()) {
      w.doc["command"] = "pair-check";
      code = cmd_pair_check(o, seed, w);
    } else if (convex->parsed()) {
      w.doc["command"] = "convex";
      code = cmd_convex(o, seed, w);
    } else if (dom->parsed()) {
      w.doc["command"] = "dominate";
      code = cmd_dominate(o, w);
    } else if (psi->parsed()) {
      w.doc["command"] = "psi";
      code = cmd_psi(o, w);
    } else if (extend->parsed()) {
      w.doc["command"] = "extend";
      code = cmd_extend(o, seed, w);
    } else if (approx->parsed()) {
      w.doc["command"] = "approx";
      code = cmd_approx(o, w);
    } else if (efn->parsed()) {
      w.doc["command"] = "efn";
      code = cmd_efn(o, w);
    } else if (zr->parsed()) {
      w.doc["command"] = "zr " + zr_verb;
      code = cmd_zr(zr_verb, o, seed, w);
    } else {
      w.doc["command"] = "check";
      code = cmd_check(o, seed, w);
    }
    return w.finish(code);
  } catch (const Diagnostic& d) {
    report(err, d);
    return 2;
  } catch (const Error& e) {
    report(err, Diagnostic{"", "", e.what(), std::nullopt});
    return 2;
  } catch (const std::exception& e) {
    report(err, Diagnostic{"", "", std::string("internal: ") + e.what(), std::nullopt});
    return 2;
  }
}

}  // namespace sval::cli
