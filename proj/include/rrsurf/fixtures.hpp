#ifndef RRSURF_FIXTURES_HPP
#define RRSURF_FIXTURES_HPP

// JSON fixtures: a surface, named curves, divisors over those names and
// rational functions, with polynomials stored as [exponents, coefficient]
// pairs. Coefficients are packed field elements, so round trips are exact.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rrsurf/surface.hpp"

namespace rrsurf {

using ordered_json = nlohmann::ordered_json;

struct Fixture {
  Surface surface;
  std::vector<Curve> curves;
  std::vector<std::pair<std::string, Divisor>> divisors;
  std::vector<std::pair<std::string, RationalFunction>> functions;
};

inline ordered_json poly_to_json(const MPoly& f) {
  ordered_json out = ordered_json::array();
  for (const auto& [m, c] : f.terms()) {
    ordered_json e = ordered_json::array();
    for (int v = 0; v < f.nvars(); ++v) e.push_back(m[v]);
    out.push_back(ordered_json::array({e, c}));
  }
  return out;
}

inline MPoly poly_from_json(const Surface& S, const ordered_json& j) {
  MPoly f(S.base, S.nvars());
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || term[0].size() != static_cast<std::size_t>(S.nvars()))
      throw error("fixture: polynomial terms are [[exponents], coefficient] with " + std::to_string(S.nvars()) + " exponents");
    Mono m{};
    for (int v = 0; v < S.nvars(); ++v) m[v] = term[0][v].get<int>();
    const auto c = term[1].get<std::uint64_t>();
    if (c >= S.base.order()) throw error("fixture: coefficient " + std::to_string(c) + " is not a packed element of " + S.base.name());
    f.add_term(m, static_cast<Elem>(c));
  }
  return f;
}

inline ordered_json fixture_to_json(const Fixture& fx) {
  const Surface& S = fx.surface;
  ordered_json j;
  j["surface"] = {{"model", model_name(S.model)}, {"q", S.base.order()}};
  j["curves"] = ordered_json::array();
  for (const auto& c : fx.curves) j["curves"].push_back({{"name", c.name}, {"coefficients", poly_to_json(c.poly)}});
  j["divisors"] = ordered_json::object();
  for (const auto& [name, D] : fx.divisors) {
    ordered_json d = ordered_json::object();
    for (const auto& [c, m] : D.components()) {
      if (c.name.empty()) throw error("fixture: divisor '" + name + "' uses an unnamed curve");
      d[c.name] = m;
    }
    j["divisors"][name] = d;
  }
  j["functions"] = ordered_json::object();
  for (const auto& [name, f] : fx.functions) j["functions"][name] = {{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
  return j;
}

inline Fixture fixture_from_json(const ordered_json& j) {
  const Surface S = surface_make(model_from_name(j.at("surface").at("model").get<std::string>()),
                                 j.at("surface").at("q").get<int>());
  Fixture fx{S, {}, {}, {}};
  const ordered_json curves = j.value("curves", ordered_json::array());
  const ordered_json divisors = j.value("divisors", ordered_json::object());
  const ordered_json functions = j.value("functions", ordered_json::object());
  for (const auto& c : curves)
    fx.curves.push_back(curve_make(S, poly_from_json(S, c.at("coefficients")), c.at("name").get<std::string>()));
  auto find = [&](const std::string& name) -> const Curve& {
    for (const auto& c : fx.curves)
      if (c.name == name) return c;
    throw error("fixture: unknown curve '" + name + "'");
  };
  for (const auto& [name, d] : divisors.items()) {
    Divisor D;
    for (const auto& [cname, m] : d.items()) D.add(find(cname), m.get<int>());
    fx.divisors.emplace_back(name, D);
  }
  for (const auto& [name, f] : functions.items())
    fx.functions.emplace_back(name, RationalFunction(S, poly_from_json(S, f.at("num")), poly_from_json(S, f.at("den"))));
  return fx;
}

}  // namespace rrsurf

#endif  // RRSURF_FIXTURES_HPP
