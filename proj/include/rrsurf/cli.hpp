#ifndef RRSURF_CLI_HPP
#define RRSURF_CLI_HPP

// Command-line front end: single computations and verification suites.
// Exit codes: 0 all checks pass, 1 failed check or computation error,
// 2 invalid configuration.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "rrsurf/verify.hpp"

namespace rrsurf {

/// Raised for bad flags or inputs; maps to exit code 2.
class config_error : public error {
 public:
  using error::error;
};

namespace cli {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw config_error(what + ": expected an integer, got '" + s + "'");
}

/// "lo:hi" or "lo:hi,lo:hi".
inline std::vector<std::pair<int, int>> parse_range(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  for (const auto& part : split(text, ',')) {
    const auto ends = split(part, ':');
    if (ends.size() != 2) throw config_error("--range: expected lo:hi or lo:hi,lo:hi, got '" + text + "'");
    const int lo = to_int(ends[0], "--range"), hi = to_int(ends[1], "--range");
    if (lo > hi) throw config_error("--range: empty interval " + part);
    out.emplace_back(lo, hi);
  }
  if (out.empty() || out.size() > 2) throw config_error("--range: expected one or two intervals");
  return out;
}

inline Precision parse_precision(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty() || parts.size() > 2) throw config_error("--precision: expected N or U:T");
  Precision p{to_int(parts[0], "--precision"), to_int(parts.back(), "--precision")};
  if (p.u < 1 || p.t < 1) throw config_error("--precision: values must be positive");
  return p;
}

inline ClassVector parse_class(const Surface& S, const std::string& text) {
  ClassVector c;
  for (const auto& x : split(text, ',')) c.v.push_back(to_int(x, "--class"));
  if (c.v.size() != class_zero(S).v.size())
    throw config_error("--class: " + model_name(S.model) + " classes have " + std::to_string(class_zero(S).v.size()) +
                       " coordinate(s)");
  return c;
}

/// "name:polynomial" or a bare polynomial.
inline Curve parse_named_curve(const Surface& S, const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = colon == std::string::npos ? std::string{} : text.substr(0, colon);
  const std::string poly = colon == std::string::npos ? text : text.substr(colon + 1);
  try {
    return parse_curve(S, poly, name);
  } catch (const error& e) {
    throw config_error("curve '" + text + "': " + e.what());
  }
}

inline RationalFunction parse_fn(const Surface& S, const std::string& text, const std::string& flag) {
  try {
    return parse_function(S, text);
  } catch (const error& e) {
    throw config_error(flag + " '" + text + "': " + e.what());
  }
}

/// Rational point from packed base-field coordinates "a:b:c" (P2) or "a:b:c:d" (P1xP1).
inline ClosedPoint parse_point(const Surface& S, const std::string& text) {
  std::vector<Elem> c;
  for (const auto& x : split(text, ':')) {
    const int v = to_int(x, "--point");
    if (v < 0 || static_cast<std::uint64_t>(v) >= S.base.order())
      throw config_error("--point: coordinate " + x + " is not a packed element of " + S.base.name());
    c.push_back(static_cast<Elem>(v));
  }
  if (c.size() != static_cast<std::size_t>(S.nvars()))
    throw config_error("--point: " + model_name(S.model) + " points have " + std::to_string(S.nvars()) + " coordinates");
  const bool bad = S.model == Model::P2 ? (c[0] == 0 && c[1] == 0 && c[2] == 0)
                                        : ((c[0] == 0 && c[1] == 0) || (c[2] == 0 && c[3] == 0));
  if (bad) throw config_error("--point: a coordinate block is zero");
  return detail::closed_point_from(S, S.base, c);
}

inline std::string series1_text(const LaurentSeries1& s) {
  std::string out;
  for (int a = s.lo(); a < s.hi(); ++a)
    if (s.raw(a) != 0) out += (out.empty() ? "" : " + ") + s.field().format(s.raw(a)) + "*u^" + std::to_string(a);
  if (out.empty()) out = "0";
  if (!s.is_exact()) out += " + O(u^" + std::to_string(s.prec()) + ")";
  return out;
}

struct Options {
  std::string surface = "P2";
  int q = 3;
  std::string range;
  std::uint64_t seed = 1;
  std::string json;
  std::string precision;
  bool allow_large_q = false;
  bool timing = false;
  std::string fault;
  // subcommand inputs
  std::string suites;
  bool suites_given = false;  // an explicit empty list runs nothing
  int forms = 25;
  std::string function, f, g, curve, point, curves, cls;
};

inline Surface make_surface(const Options& o) {
  Model m;
  try {
    m = model_from_name(o.surface);
  } catch (const error& e) {
    throw config_error(e.what());
  }
  if (o.q > 9 && !o.allow_large_q) throw config_error("q = " + std::to_string(o.q) + " exceeds 9; pass --allow-large-q to run it anyway");
  try {
    return surface_make(m, o.q);
  } catch (const error& e) {
    throw config_error(e.what());
  }
}

inline RunConfig make_run_config(const Options& o, const Surface& S) {
  RunConfig cfg;
  cfg.model = S.model;
  cfg.q = o.q;
  cfg.range = parse_range(o.range.empty() ? (S.model == Model::P2 ? "-6:6" : "-4:4") : o.range);
  if (S.model == Model::P2 && cfg.range.size() != 1) throw config_error("--range: P2 takes a single interval");
  cfg.seed = o.seed;
  if (!o.precision.empty()) cfg.prec = parse_precision(o.precision);
  cfg.suites = !o.suites_given ? suite_names() : o.suites.empty() ? std::vector<std::string>{} : split(o.suites, ',');
  for (const auto& s : cfg.suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw config_error("--suites: unknown suite '" + s + "'");
  if (o.forms < 0) throw config_error("--forms must be nonnegative");
  cfg.forms = o.forms;
  if (!o.fault.empty() && o.fault != "h0") throw config_error("--inject-fault: only 'h0' is known");
  cfg.fault = o.fault;
  cfg.timing = o.timing;
  return cfg;
}

inline Flag pick_flag(const Surface& S, const Curve& D, const std::string& point) {
  if (point.empty()) return flag_on_curve(S, D);
  const ClosedPoint x = parse_point(S, point);
  if (!point_on(D, x)) throw config_error("--point " + point_text(S, x) + " is not on " + curve_text(S, D));
  return flag_make(S, x, D);
}

/// {config, result, checks, summary}
inline ordered_json document(const Report& rep, ordered_json result) {
  const ordered_json r = rep.to_json();
  ordered_json j;
  j["config"] = r["config"];
  if (!result.is_null()) j["result"] = std::move(result);
  j["checks"] = r["checks"];
  j["summary"] = r["summary"];
  return j;
}

inline void write_json(const std::string& path, const ordered_json& j, std::ostream& out) {
  if (path.empty()) return;
  if (path == "-") {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << j.dump(2) << "\n";
  if (!f) throw error("cannot write JSON report to '" + path + "'");
}

inline ordered_json base_config(const std::string& command, const Options& o, const Surface& S) {
  ordered_json c;
  c["command"] = command;
  c["surface"] = model_name(S.model);
  c["q"] = o.q;
  return c;
}

inline int finish(const Report& rep, std::ostream& out) {
  if (const Check* c = rep.first_failure()) {
    out << "FAIL " << rep.failed() << " of " << rep.checks().size() << " checks; first counterexample: " << check_text(*c) << "\n";
    return 1;
  }
  return 0;
}

inline int cmd_verify(const Options& o, const Surface& S, std::ostream& out) {
  const RunConfig cfg = make_run_config(o, S);
  Report rep(cfg.to_json(), cfg.timing);
  for (const auto& s : cfg.suites) {
    const std::size_t before = rep.checks().size(), failed_before = rep.failed();
    run_suite(s, S, cfg, rep);
    const std::size_t n = rep.checks().size() - before;
    out << s << ": " << n - (rep.failed() - failed_before) << "/" << n << " passed\n";
  }
  write_json(o.json, document(rep, nullptr), out);
  const int code = finish(rep, out);
  if (code == 0) out << "PASS " << rep.checks().size() << " checks\n";
  return code;
}

inline int cmd_expand(const Options& o, const Surface& S, std::ostream& out) {
  if (o.function.empty() || o.curve.empty()) throw config_error("expand needs --function and --curve");
  const RationalFunction f = parse_fn(S, o.function, "--function");
  const Curve D = parse_named_curve(S, o.curve);
  const Flag fl = pick_flag(S, D, o.point);
  const Precision prec = o.precision.empty() ? Precision{} : parse_precision(o.precision);
  const auto [u, t] = flag_params_text(S, fl);
  const std::string series = ls2_to_text(expand_at_flag(S, f, fl, prec));
  out << "point " << point_text(S, fl.point) << " on " << curve_text(S, D) << "\nu = " << u << "\nt = " << t << "\n" << series;
  ordered_json cfg = base_config("expand", o, S);
  cfg["function"] = o.function;
  cfg["curve"] = o.curve;
  cfg["point"] = point_text(S, fl.point);
  cfg["precision"] = {prec.u, prec.t};
  write_json(o.json, document(Report(cfg), {{"u", u}, {"t", t}, {"series", series}}), out);
  return 0;
}

inline int cmd_residue(const Options& o, const Surface& S, std::ostream& out) {
  if (o.function.empty() || (o.curve.empty() && o.point.empty()))
    throw config_error("residue needs --function and at least one of --curve, --point");
  const GlobalForm w = form_make(S, parse_fn(S, o.function, "--function"));
  const Precision prec = o.precision.empty() ? Precision{} : parse_precision(o.precision);
  ordered_json cfg = base_config("residue", o, S);
  cfg["function"] = o.function;
  ordered_json result;
  Report rep;
  if (!o.curve.empty() && !o.point.empty()) {
    const Curve D = parse_named_curve(S, o.curve);
    const Flag fl = pick_flag(S, D, o.point);
    const FieldElem r = local_residue(S, w, fl, prec);
    out << "res at " << point_text(S, fl.point) << " on " << curve_text(S, D) << " = " << r.to_string() << "\n";
    cfg["curve"] = o.curve;
    cfg["point"] = o.point;
    result = {{"residue", r.to_string()}, {"trace", trace_to_base(S, r).to_string()}};
  } else if (!o.curve.empty()) {
    const Curve D = parse_named_curve(S, o.curve);
    const auto r = residue_sum_along_curve_report(S, w, D, prec);
    result = {{"terms", ordered_json::array()}, {"sum", r.sum.to_string()}};
    for (const auto& [x, v] : r.terms) {
      out << point_text(S, x) << ": " << v.to_string() << "\n";
      result["terms"].push_back({point_text(S, x), v.to_string()});
    }
    out << "sum along " << curve_text(S, D) << " = " << r.sum.to_string() << "\n";
    cfg["curve"] = o.curve;
    rep = Report(cfg);
    rep.add({"reciprocity.along", {{"curve", curve_text(S, D)}}, r.sum.value(), 0, r.sum.is_zero(), 0, {}});
  } else {
    const ClosedPoint x = parse_point(S, o.point);
    std::vector<Curve> through;
    for (const auto& E : polar_support(S, w))
      if (point_on(E, x)) through.push_back(E);
    const FieldElem s = residue_sum_around_point(S, w, x, through, prec);
    out << "sum around " << point_text(S, x) << " over " << through.size() << " curve(s) = " << s.to_string() << "\n";
    cfg["point"] = o.point;
    rep = Report(cfg);
    rep.add({"reciprocity.around", {{"point", point_text(S, x)}}, s.value(), 0, s.is_zero(), 0, {}});
    result = {{"curves", through.size()}, {"sum", s.to_string()}};
  }
  if (rep.checks().empty()) rep = Report(cfg);
  write_json(o.json, document(rep, result), out);
  return finish(rep, out);
}

inline int cmd_symbol(const Options& o, const Surface& S, std::ostream& out) {
  if (o.f.empty() || o.g.empty() || o.curve.empty()) throw config_error("symbol needs --f, --g and --curve");
  const RationalFunction f = parse_fn(S, o.f, "--f"), g = parse_fn(S, o.g, "--g");
  const Curve D = parse_named_curve(S, o.curve);
  const Flag fl = pick_flag(S, D, o.point);
  const Precision prec = o.precision.empty() ? Precision{} : parse_precision(o.precision);
  const LaurentSeries2 fs = expand_at_flag(S, f, fl, prec), gs = expand_at_flag(S, g, fl, prec);
  const std::string tame = series1_text(tame_t(fs, gs, true, prec.u));
  const int n = bisymbol(fs, gs);
  out << "point " << point_text(S, fl.point) << " on " << curve_text(S, D) << "\ntame symbol = " << tame << "\nbisymbol = " << n
      << "\n";
  ordered_json cfg = base_config("symbol", o, S);
  cfg["f"] = o.f;
  cfg["g"] = o.g;
  cfg["curve"] = o.curve;
  cfg["point"] = point_text(S, fl.point);
  write_json(o.json, document(Report(cfg), {{"tame", tame}, {"bisymbol", n}}), out);
  return 0;
}

inline int cmd_intersect(const Options& o, const Surface& S, std::ostream& out) {
  const auto specs = split(o.curves, ',');
  if (specs.size() != 2) throw config_error("intersect needs --curves with exactly two comma-separated curves");
  const Curve C = parse_named_curve(S, specs[0]), H = parse_named_curve(S, specs[1]);
  if (C == H) throw config_error("intersect: the two curves coincide");
  const Divisor Cd = Divisor::of_curve(C), Hd = Divisor::of_curve(H);
  ordered_json cfg = base_config("intersect", o, S);
  cfg["curves"] = specs;
  Report rep(cfg);
  const int n = intersection_number(S, Cd, Hd, o.precision.empty() ? Precision{} : parse_precision(o.precision));
  rep.run("bezout", {{"C", curve_text(S, C)}, {"H", curve_text(S, H)}},
          [&] { return std::pair<ordered_json, ordered_json>{n, intersection_oracle(S, Cd, Hd)}; });
  out << n << "\n";
  write_json(o.json, document(rep, {{"intersection", n}}), out);
  return finish(rep, out);
}

inline int cmd_cohomology(const Options& o, const Surface& S, std::ostream& out) {
  if (o.cls.empty()) throw config_error("cohomology needs --class");
  const ClassVector c = parse_class(S, o.cls);
  const CohomologyVector h = h_vector(S, c);
  ordered_json cfg = base_config("cohomology", o, S);
  cfg["class"] = c.v;
  Report rep(cfg);
  rep.run("oracles", {{"class", c.v}}, [&] {
    const CohomologyVector b = cech_h_vector(S.model, c);
    return std::pair<ordered_json, ordered_json>{ordered_json{h.h0, h.h1, h.h2}, ordered_json{b.h0, b.h1, b.h2}};
  });
  out << "h0 = " << h.h0 << "\nh1 = " << h.h1 << "\nh2 = " << h.h2 << "\nchi = " << h.chi() << "\n";
  write_json(o.json, document(rep, {{"h0", h.h0}, {"h1", h.h1}, {"h2", h.h2}, {"chi", h.chi()}}), out);
  return finish(rep, out);
}

}  // namespace cli

/// Runs the command line; returns the process exit code.
inline int cli_run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  cli::Options o;
  CLI::App app{"Exact Riemann-Roch verification on P2 and P1xP1 over finite fields", "rrsurf_cli"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--surface", o.surface, "P2 or P1xP1")->capture_default_str();
  app.add_option("--q", o.q, "field size, a prime power")->capture_default_str();
  app.add_option("--range", o.range, "class range lo:hi (P2) or lo:hi[,lo:hi] (P1xP1)");
  app.add_option("--seed", o.seed, "seed for randomized corpora")->capture_default_str();
  app.add_option("--json", o.json, "write the JSON report to this path ('-' for stdout)");
  app.add_option("--precision", o.precision, "series precision N or U:T");
  app.add_flag("--allow-large-q", o.allow_large_q, "lift the q <= 9 guard");
  app.add_flag("--timing", o.timing, "record per-check micros (output is no longer byte-stable)");
  app.add_option("--inject-fault", o.fault)->group("");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suites", o.suites, "comma-separated subset of suites (default: all)");
  verify->add_option("--forms", o.forms, "rational 2-forms in the reciprocity corpus")->capture_default_str();
  auto* expand = app.add_subcommand("expand", "expand a rational function at a flag");
  expand->add_option("--function", o.function, "num/den of equal class")->required();
  expand->add_option("--curve", o.curve, "curve through the point")->required();
  expand->add_option("--point", o.point, "rational point a:b:c or a:b:c:d (default: first point found)");
  auto* residue = app.add_subcommand("residue", "residue of f*omega at a flag, along a curve, or around a point");
  residue->add_option("--function", o.function, "coefficient of omega")->required();
  residue->add_option("--curve", o.curve, "curve");
  residue->add_option("--point", o.point, "rational point");
  auto* symbol = app.add_subcommand("symbol", "tame symbol and bisymbol of two functions at a flag");
  symbol->add_option("--f", o.f)->required();
  symbol->add_option("--g", o.g)->required();
  symbol->add_option("--curve", o.curve)->required();
  symbol->add_option("--point", o.point);
  auto* intersect = app.add_subcommand("intersect", "intersection number of two curves via symbols");
  intersect->add_option("--curves", o.curves, "name:poly,name:poly")->required();
  auto* cohomology = app.add_subcommand("cohomology", "h-vector of a class");
  cohomology->add_option("--class", o.cls, "n (P2) or a,b (P1xP1)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  o.suites_given = verify->count("--suites") > 0;
  try {
    const Surface S = cli::make_surface(o);
    if (verify->parsed()) return cli::cmd_verify(o, S, out);
    if (expand->parsed()) return cli::cmd_expand(o, S, out);
    if (residue->parsed()) return cli::cmd_residue(o, S, out);
    if (symbol->parsed()) return cli::cmd_symbol(o, S, out);
    if (intersect->parsed()) return cli::cmd_intersect(o, S, out);
    return cli::cmd_cohomology(o, S, out);
  } catch (const config_error& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rrsurf

#endif  // RRSURF_CLI_HPP
