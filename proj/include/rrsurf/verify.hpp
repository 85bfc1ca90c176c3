#ifndef RRSURF_VERIFY_HPP
#define RRSURF_VERIFY_HPP

// Verification suites shared by the command-line tool and the acceptance
// runner. Every suite appends checks to a Report; nothing here prints.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/cohomology.hpp"
#include "rrsurf/measures.hpp"
#include "rrsurf/parse.hpp"
#include "rrsurf/report.hpp"
#include "rrsurf/residues.hpp"
#include "rrsurf/symbols.hpp"

namespace rrsurf {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"reciprocity", "bezout", "serre", "chi", "commutator", "rr", "windows", "oracles"};
  return names;
}

struct RunConfig {
  Model model = Model::P2;
  int q = 3;
  std::vector<std::pair<int, int>> range{{-6, 6}};  // one interval, or one per class coordinate
  std::uint64_t seed = 1;
  Precision prec{};
  std::vector<std::string> suites;
  int forms = 25;       // rational 2-forms in the reciprocity corpus
  std::string fault;    // "h0" perturbs the h^0 oracle of the rr suite
  bool timing = false;  // record wall-clock micros (breaks byte-identical output)

  std::vector<ClassVector> classes() const {
    std::vector<ClassVector> out;
    const auto a = range.at(0);
    if (model == Model::P2) {
      for (int n = a.first; n <= a.second; ++n) out.push_back({{n}});
      return out;
    }
    const auto b = range.size() > 1 ? range[1] : a;
    for (int i = a.first; i <= a.second; ++i)
      for (int j = b.first; j <= b.second; ++j) out.push_back({{i, j}});
    return out;
  }

  ordered_json to_json() const {
    ordered_json j;
    j["surface"] = model_name(model);
    j["q"] = q;
    j["range"] = ordered_json::array();
    for (const auto& [lo, hi] : range) j["range"].push_back({lo, hi});
    j["seed"] = seed;
    j["precision"] = {prec.u, prec.t};
    j["suites"] = suites;
    j["forms"] = forms;
    if (!fault.empty()) j["fault"] = fault;
    return j;
  }
};

inline ordered_json class_json(const ClassVector& c) { return c.v; }

namespace detail {

inline MPoly random_form_of_class(const Surface& S, const ClassVector& c, std::mt19937_64& rng) {
  MPoly f(S.base, S.nvars());
  const auto monos = monomials_of_class(S, c);
  while (f.is_zero())
    for (const auto& m : monos) f.set(m, static_cast<Elem>(rng() % S.base.order()));
  return f;
}

inline std::optional<Curve> random_curve_of_class(const Surface& S, const ClassVector& c, std::mt19937_64& rng) {
  for (int i = 0; i < 20; ++i) {
    try {
      return curve_make(S, random_form_of_class(S, c, rng));
    } catch (const error&) {
    }
  }
  return std::nullopt;
}

/// f omega with f = G / (C_1 ... C_n), irreducible C_i, total degree at most 3.
inline std::optional<GlobalForm> random_global_form(const Surface& S, std::mt19937_64& rng) {
  std::vector<ClassVector> pieces;
  const int n = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < n; ++i) {
    if (S.model == Model::P2) {
      pieces.push_back({{1 + static_cast<int>(rng() % 2)}});
    } else {
      static const std::vector<ClassVector> opts{{{1, 0}}, {{0, 1}}, {{1, 1}}};
      pieces.push_back(opts[rng() % opts.size()]);
    }
  }
  MPoly den = MPoly::constant(S.base, S.nvars(), 1);
  ClassVector total = class_zero(S);
  for (const auto& c : pieces) {
    auto C = random_curve_of_class(S, c, rng);
    if (!C) return std::nullopt;
    den = den * C->poly;
    total = total + c;
  }
  for (int x : total.v)
    if (x > 3) return std::nullopt;
  try {
    return form_make(S, RationalFunction(S, random_form_of_class(S, total, rng), den));
  } catch (const error&) {
    return std::nullopt;
  }
}

/// Desk curves: lines, conics and a cubic on P^2; fibers and low bidegrees on P^1 x P^1.
inline std::vector<std::string> desk_curves(Model m) {
  if (m == Model::P2) return {"X", "Y", "X + Y + Z", "YZ - X^2", "XY + YZ + XZ", "Y^2Z + YZ^2 - X^3 - XZ^2 - Z^3"};
  return {"X0", "Y1", "X0Y1 + X1Y0", "X0Y0 + X1Y1", "X0^2Y0 + X1^2Y1 + X0X1Y1", "X0Y0^2 + X1Y1^2 + X1Y0Y1"};
}

/// A curve and a tangent line (or fiber) meeting it at a single point with multiplicity 2.
inline std::pair<std::string, std::string> desk_tangency(Model m) {
  if (m == Model::P2) return {"YZ - X^2", "Y"};
  return {"X0Y0^2 - X1Y1^2", "X1"};
}

}  // namespace detail

inline void suite_reciprocity(const Surface& S, const RunConfig& cfg, Report& rep) {
  std::mt19937_64 rng(cfg.seed);
  int forms = 0, nonzero = 0;
  for (int attempt = 0; forms < cfg.forms && attempt < 400; ++attempt) {
    const auto w = detail::random_global_form(S, rng);
    if (!w) continue;
    const auto curves = polar_support(S, *w);
    std::vector<Check> batch;
    int terms = 0;
    try {
      for (const auto& D : curves) {
        const auto r = residue_sum_along_curve_report(S, *w, D, cfg.prec);
        for (const auto& t : r.terms) terms += !t.second.is_zero();
        batch.push_back({"reciprocity.along",
                         {{"form", w->coefficient.to_string(S)}, {"curve", curve_text(S, D)}, {"points", r.terms.size()}},
                         r.sum.value(), 0, r.sum.is_zero(), 0, {}});
      }
      std::vector<ClosedPoint> seen;
      for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = i + 1; j < curves.size(); ++j)
          for (const auto& x : intersection_support(S, curves[i], curves[j])) {
            if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
            seen.push_back(x);
            std::vector<Curve> through;
            for (const auto& c : curves)
              if (point_on(c, x)) through.push_back(c);
            const FieldElem s = residue_sum_around_point(S, *w, x, through, cfg.prec);
            batch.push_back({"reciprocity.around",
                             {{"form", w->coefficient.to_string(S)}, {"point", point_text(S, x)}, {"curves", through.size()}},
                             s.value(), 0, s.is_zero(), 0, {}});
          }
    } catch (const unsupported&) {
      continue;  // a polar curve is singular at a needed flag
    }
    for (auto& c : batch) rep.add(std::move(c));
    nonzero += terms;
    ++forms;
  }
  rep.run("reciprocity.corpus", {{"surface", model_name(S.model)}, {"q", S.base.order()}},
          [&] { return std::pair<ordered_json, ordered_json>{{{"forms", forms}, {"nonzero_terms_at_least_10", nonzero >= 10}},
                                                             {{"forms", cfg.forms}, {"nonzero_terms_at_least_10", true}}}; });
}

inline void suite_bezout(const Surface& S, const RunConfig&, Report& rep) {
  std::vector<Curve> curves;
  for (const auto& t : detail::desk_curves(S.model)) curves.push_back(parse_curve(S, t));
  for (const auto& C : curves)
    for (const auto& H : curves) {
      if (C == H) continue;
      const Divisor Cd = Divisor::of_curve(C), Hd = Divisor::of_curve(H);
      rep.run("bezout", {{"C", curve_text(S, C)}, {"H", curve_text(S, H)}}, [&] {
        return std::pair<ordered_json, ordered_json>{intersection_number(S, Cd, Hd), intersection_oracle(S, Cd, Hd)};
      });
    }
  const auto [ct, ht] = detail::desk_tangency(S.model);
  const Curve C = parse_curve(S, ct), H = parse_curve(S, ht);
  rep.run("bezout.tangency", {{"C", curve_text(S, C)}, {"H", curve_text(S, H)}}, [&] {
    const Divisor Cd = Divisor::of_curve(C), Hd = Divisor::of_curve(H);
    const ordered_json lhs = {{"number", intersection_number(S, Cd, Hd)}, {"points", intersection_support(S, C, H).size()}};
    const ordered_json rhs = {{"number", intersection_oracle(S, Cd, Hd)}, {"points", 1}};
    return std::pair<ordered_json, ordered_json>{lhs, rhs};
  });
}

inline void suite_serre(const Surface& S, const RunConfig& cfg, Report& rep) {
  const Divisor w = canonical_divisor(S);
  const auto classes = cfg.classes();
  for (const auto& c : classes)
    for (const auto& h : classes) {
      rep.run("serre", {{"C", class_json(c)}, {"H", class_json(h)}}, [&] {
        const IdentityCheck e = derive_eq1(S, class_representative(S, c), class_representative(S, h), w);
        return std::pair<ordered_json, ordered_json>{e.lhs, e.rhs};
      });
    }
  // h^0 from rr_space against a monomial count for effective classes
  for (const auto& c : classes) {
    if (std::any_of(c.v.begin(), c.v.end(), [](int x) { return x < 0; })) continue;
    rep.run("serre.h0", {{"C", class_json(c)}}, [&] {
      return std::pair<ordered_json, ordered_json>{rr_space(S, class_representative(S, c)).size(),
                                                   detail::monomials_of_class(S, c).size()};
    });
  }
}

inline void suite_chi(const Surface& S, const RunConfig& cfg, Report& rep) {
  const Divisor w = canonical_divisor(S);
  for (const auto& c : cfg.classes())
    rep.run("chi", {{"S", class_json(c)}}, [&] {
      const IdentityCheck e = derive_eq2(S, class_representative(S, c), w);
      return std::pair<ordered_json, ordered_json>{{{"chi", e.lhs}, {"conjugate", e.equal}}, {{"chi", e.rhs}, {"conjugate", true}}};
    });
}

inline void suite_commutator(const Surface& S, const RunConfig& cfg, Report& rep) {
  const Divisor w = canonical_divisor(S);
  for (const auto& c : cfg.classes())
    rep.run("commutator", {{"C", class_json(c)}}, [&] {
      const CommutatorCheck r = central_commutator(S, class_representative(S, c), w);
      return std::pair<ordered_json, ordered_json>{{{"q_exponent", r.measure_route.exponent}},
                                                   {{"q_exponent", r.symbol_route.exponent}}};
    });
}

inline void suite_rr(const Surface& S, const RunConfig& cfg, Report& rep) {
  const Divisor w = canonical_divisor(S);
  for (const auto& c : cfg.classes())
    rep.run("rr", {{"C", class_json(c)}}, [&] {
      const RRReport r = rr_assemble(S, class_representative(S, c), w);
      std::int64_t lhs2 = r.lhs2;
      if (cfg.fault == "h0" && std::all_of(c.v.begin(), c.v.end(), [](int x) { return x == 0; })) lhs2 += 2;
      const ordered_json lhs = {{"twice", lhs2}, {"serre", r.eq1.equal}, {"chi", r.eq2.equal}, {"commutator", r.commutator.equal}};
      const ordered_json rhs = {{"twice", r.rhs2}, {"serre", true}, {"chi", true}, {"commutator", true}};
      return std::pair<ordered_json, ordered_json>{lhs, rhs};
    });
}

namespace detail {

struct WindowSpec {
  std::vector<std::pair<std::string, std::pair<int, int>>> curves;  // curve text, (r, s)
  WindowOptions opt;
};

inline std::vector<WindowSpec> window_specs(Model m) {
  WindowOptions affine;
  WindowOptions all;
  all.affine_only = false;
  all.max_point_degree = 2;
  WindowOptions wide = affine;
  wide.max_point_degree = 2;
  wide.u_size = 3;
  if (m == Model::P2)
    return {{{{"X", {-1, 1}}}, affine},
            {{{"X", {-2, 2}}}, wide},
            {{{"Z", {-3, 0}}}, all},
            {{{"Z", {-2, -1}}}, all},
            {{{"X", {-1, 1}}, {"Y", {-1, 1}}}, affine}};
  return {{{{"X1", {-1, 1}}}, affine},
          {{{"X1", {-2, 2}}}, wide},
          {{{"X0", {-2, 0}}}, all},
          {{{"X0", {-3, 1}}, {"Y1", {-1, 1}}}, affine}};
}

}  // namespace detail

inline void suite_windows(const Surface& S, const RunConfig&, Report& rep) {
  const Divisor w = canonical_divisor(S);
  for (const auto& spec : detail::window_specs(S.model)) {
    Divisor R, Sd;
    std::vector<Curve> curves;
    std::vector<std::pair<int, int>> bounds;
    ordered_json in = ordered_json::object();
    for (const auto& [text, rs] : spec.curves) {
      curves.push_back(parse_curve(S, text));
      bounds.push_back(rs);
      R.add(curves.back(), rs.first);
      Sd.add(curves.back(), rs.second);
      in[text] = {rs.first, rs.second};
    }
    std::optional<Window> win;
    rep.run("windows.gram", {{"window", in}}, [&] {
      win = window_build(S, R, Sd, spec.opt);
      return std::pair<ordered_json, ordered_json>{{{"rank", rank(win->gram)}, {"compatible", win->compatible}},
                                                   {{"rank", win->dimension()}, {"compatible", true}}};
    });
    if (!win) continue;
    // every C between R and S along the window curves
    std::vector<int> c(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) c[i] = bounds[i].first;
    while (true) {
      Divisor C;
      ordered_json cj = ordered_json::object();
      for (std::size_t i = 0; i < curves.size(); ++i) {
        C.add(curves[i], c[i]);
        cj[spec.curves[i].first] = c[i];
      }
      rep.run("windows.annihilator", {{"window", in}, {"C", cj}},
              [&] { return std::pair<ordered_json, ordered_json>{window_annihilator_check(*win, C, w), true}; });
      std::size_t i = 0;
      for (; i < c.size() && c[i] == bounds[i].second; ++i) c[i] = bounds[i].first;
      if (i == c.size()) break;
      ++c[i];
    }
  }
  // dim L(C)/L(H) for coordinate-line divisors with multiplicities in [-2, 2]
  std::vector<Curve> lines;
  for (int v = 0; v < S.nvars(); ++v) lines.push_back(coordinate_curve(S, v));
  std::vector<int> m(lines.size(), -2);
  while (true) {
    Divisor C;
    for (std::size_t i = 0; i < lines.size(); ++i) C.add(lines[i], m[i]);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (m[i] == -2) continue;
      const Divisor H = C - Divisor::of_curve(lines[i]);
      ordered_json cm = ordered_json::array();
      for (int x : m) cm.push_back(x);
      rep.run("windows.quotient", {{"C", cm}, {"minus", curve_text(S, lines[i])}}, [&] {
        const std::int64_t expect = h_vector(S, divisor_class(S, C)).h0 - h_vector(S, divisor_class(S, H)).h0;
        return std::pair<ordered_json, ordered_json>{rr_quotient_dimension(S, C, H), expect};
      });
    }
    std::size_t i = 0;
    while (i < m.size() && m[i] == 2) m[i++] = -2;
    if (i == m.size()) break;
    ++m[i];
  }
}

inline void suite_oracles(const Surface& S, const RunConfig& cfg, Report& rep) {
  for (const auto& c : cfg.classes())
    rep.run("oracles", {{"class", class_json(c)}}, [&] {
      const CohomologyVector a = h_vector(S, c), b = cech_h_vector(S.model, c);
      return std::pair<ordered_json, ordered_json>{ordered_json{a.h0, a.h1, a.h2}, ordered_json{b.h0, b.h1, b.h2}};
    });
}

inline void run_suite(const std::string& name, const Surface& S, const RunConfig& cfg, Report& rep) {
  if (name == "reciprocity") return suite_reciprocity(S, cfg, rep);
  if (name == "bezout") return suite_bezout(S, cfg, rep);
  if (name == "serre") return suite_serre(S, cfg, rep);
  if (name == "chi") return suite_chi(S, cfg, rep);
  if (name == "commutator") return suite_commutator(S, cfg, rep);
  if (name == "rr") return suite_rr(S, cfg, rep);
  if (name == "windows") return suite_windows(S, cfg, rep);
  if (name == "oracles") return suite_oracles(S, cfg, rep);
  throw error("unknown suite '" + name + "'");
}

inline Report run_verify(const RunConfig& cfg) {
  const Surface S = surface_make(cfg.model, cfg.q);
  Report rep(cfg.to_json(), cfg.timing);
  for (const auto& s : cfg.suites) run_suite(s, S, cfg, rep);
  return rep;
}

}  // namespace rrsurf

#endif  // RRSURF_VERIFY_HPP
