#ifndef RRSURF_FLAGS_HPP
#define RRSURF_FLAGS_HPP

// Flags x in D with local parameters (u, t), expansion of rational
// functions into k(x)((u))((t)), the canonical divisor and Riemann-Roch
// spaces.
//
// A flag works in an affine chart containing x with affine coordinates
// (s1, s2) translated to x. The parameter t is the local equation g of D;
// u is the first translated coordinate whose differential is independent
// of dg at x. Expansion solves g = t for the remaining coordinate as a
// power series in (u, t) and substitutes.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/linalg.hpp"
#include "rrsurf/series.hpp"
#include "rrsurf/surface.hpp"

namespace rrsurf {

struct Flag {
  ClosedPoint point;
  Curve curve;
  std::vector<int> chart_vars;  // coordinates set to 1
  std::array<int, 2> affine{};  // ambient indices of s1, s2
  std::array<Elem, 2> center{};  // x in (s1, s2), in k(x)
  int u_slot = 0;               // u is s1 - c1 (0) or s2 - c2 (1)
  MPoly t_local;                // translated local equation, two variables over k(x)
  Elem t_scale = 1;             // t = t_scale * (dehomogenized curve equation)

  const FieldDesc& field() const { return point.field; }
};

namespace detail {

/// Default chart: last nonzero coordinate on P^2, X0 / Y0 when nonzero on P^1 x P^1.
inline std::vector<int> default_chart(const Surface& S, const ClosedPoint& x) {
  const auto& c = x.coords;
  if (S.model == Model::P2) {
    for (int i = 2; i >= 0; --i)
      if (c[i] != 0) return {i};
    throw error("invalid point");
  }
  return {c[0] != 0 ? 0 : 1, c[2] != 0 ? 2 : 3};
}

inline std::array<int, 2> affine_vars(const Surface& S, const std::vector<int>& chart) {
  if (S.model == Model::P2) {
    std::array<int, 2> a{};
    int k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != chart[0]) a[k++] = i;
    return a;
  }
  return {1 - chart[0], 5 - chart[1]};
}

/// Polynomial in the chart's affine coordinates (s1, s2), over the base field.
inline MPoly dehomogenize(const Surface& S, const MPoly& f, const std::vector<int>& chart, const std::array<int, 2>& aff) {
  const FieldDesc& F = f.field();
  std::vector<MPoly> images(static_cast<std::size_t>(S.nvars()));
  for (int v : chart) images[v] = MPoly::constant(F, 2, 1);
  images[aff[0]] = MPoly::var(F, 2, 0);
  images[aff[1]] = MPoly::var(F, 2, 1);
  return f.compose(images);
}

/// f(c1 + s1, c2 + s2) over k(x).
inline MPoly translate(const MPoly& f2, const FieldDesc& K, const std::array<Elem, 2>& c) {
  const MPoly fk = base_change(f2, K);
  std::vector<MPoly> images{MPoly::constant(K, 2, c[0]) + MPoly::var(K, 2, 0),
                            MPoly::constant(K, 2, c[1]) + MPoly::var(K, 2, 1)};
  return fk.compose(images);
}

}  // namespace detail

/// Local polynomial of a form at the flag: dehomogenized in its chart, translated to x.
inline MPoly flag_local(const Surface& S, const Flag& fl, const MPoly& f) {
  return detail::translate(detail::dehomogenize(S, f, fl.chart_vars, fl.affine), fl.field(), fl.center);
}

/// Flag at x on D. `chart` overrides the default chart (it must contain x).
inline Flag flag_make(const Surface& S, const ClosedPoint& x, const Curve& D, std::optional<std::vector<int>> chart = {}) {
  if (!point_on(D, x)) throw error("flag_make: point " + point_text(S, x) + " is not on the curve");
  Flag fl;
  fl.point = x;
  fl.curve = D;
  fl.chart_vars = chart ? *chart : detail::default_chart(S, x);
  const FieldDesc& K = x.field;
  for (int v : fl.chart_vars)
    if (x.coords[v] == 0) throw error("flag_make: chart does not contain the point");
  fl.affine = detail::affine_vars(S, fl.chart_vars);
  for (int k = 0; k < 2; ++k) {
    const int a = fl.affine[k];
    // the chart variable of the same factor
    int ch = fl.chart_vars[0];
    if (S.model == Model::P1xP1) ch = a < 2 ? fl.chart_vars[0] : fl.chart_vars[1];
    fl.center[k] = K.div(x.coords[a], x.coords[ch]);
  }
  fl.t_local = flag_local(S, fl, D.poly);
  const Elem d1 = fl.t_local.coeff(Mono{1, 0, 0, 0}), d2 = fl.t_local.coeff(Mono{0, 1, 0, 0});
  if (d2 != 0)
    fl.u_slot = 0;
  else if (d1 != 0)
    fl.u_slot = 1;
  else
    throw unsupported("flag_make: curve is singular at " + point_text(S, x));
  // scale t so its linear term in the other coordinate is 1
  fl.t_scale = K.inv(fl.u_slot == 0 ? d2 : d1);
  fl.t_local = fl.t_local.scale(fl.t_scale);
  return fl;
}

/// The first point of least degree at which D is smooth.
inline Flag flag_on_curve(const Surface& S, const Curve& D, int max_degree = 4) {
  for (int e = 1; e <= max_degree; ++e)
    for (const auto& x : points_on_curve(S, D, e)) {
      if (x.degree != e) continue;
      try {
        return flag_make(S, x, D);
      } catch (const unsupported&) {
      }
    }
  throw unsupported("no smooth point of small degree on the curve");
}

/// Text form of the local parameters, in the chart's affine names.
inline std::pair<std::string, std::string> flag_params_text(const Surface& S, const Flag& fl) {
  const auto names = S.names();
  auto aff = [&](int k) {
    std::string n = names[fl.affine[k]];
    for (int v : fl.chart_vars)
      if (S.model == Model::P2 || (v < 2) == (fl.affine[k] < 2)) n += "/" + names[v];
    return n;
  };
  const std::vector<std::string> loc{"(" + aff(0) + " - " + fl.field().format(fl.center[0]) + ")",
                                     "(" + aff(1) + " - " + fl.field().format(fl.center[1]) + ")"};
  return {loc[fl.u_slot], fl.t_local.to_string({loc[0], loc[1]})};
}

namespace detail {

/// Polynomial in (s1, s2) evaluated at (u, w) or (w, u), with w a box.
inline PowerBox eval_local(const MPoly& p, int u_slot, const PowerBox& w) {
  const FieldDesc& K = p.field();
  const int nu = w.nu(), nt = w.nt();
  const int ov = 1 - u_slot;
  const int dw = std::max(0, p.degree_in(ov));
  // group by the exponent of w
  std::vector<PowerBox> parts(static_cast<std::size_t>(dw + 1), PowerBox(K, nu, nt));
  for (const auto& [m, c] : p.terms())
    if (m[u_slot] < nu) parts[m[ov]].at(m[u_slot], 0) = K.add(parts[m[ov]].at(m[u_slot], 0), c);
  PowerBox acc(K, nu, nt);
  for (int j = dw; j >= 0; --j) acc = acc * w + parts[j];
  return acc;
}

/// The remaining coordinate as a power series in (u, t): solves g(u, w) = t.
inline PowerBox solve_other(const Flag& fl, int nu, int nt) {
  const FieldDesc& K = fl.field();
  const int ov = 1 - fl.u_slot;
  Mono lin{0, 0, 0, 0};
  lin[ov] = 1;
  const Elem c = fl.t_local.coeff(lin);
  const Elem ci = K.inv(c);
  MPoly h = fl.t_local;
  h.set(lin, 0);
  const PowerBox t = PowerBox::t(K, nu, nt);
  PowerBox w(K, nu, nt);
  for (int it = 0; it < nu + nt + 1; ++it) {
    PowerBox next = (t - eval_local(h, fl.u_slot, w)).scale(ci);
    if (next == w) break;
    w = std::move(next);
  }
  return w;
}

/// Rows below a known t-order are exactly zero.
inline LaurentSeries2 drop_below(const LaurentSeries2& s, int v) {
  if (s.rows().empty() || s.t_lo() >= v) return s;
  std::vector<LaurentSeries1> rows;
  for (int b = v; b < s.t_hi(); ++b) rows.push_back(s.raw_row(b));
  return LaurentSeries2(s.field(), v, std::move(rows), s.t_prec());
}

/// The box solution as an exact polynomial in (u, t), if it solves g(u, w) = t exactly.
inline std::optional<MPoly> exact_other(const Flag& fl, const PowerBox& w) {
  const FieldDesc& K = fl.field();
  MPoly W(K, 2);
  for (int b = 0; b < w.nt(); ++b)
    for (int a = 0; a < w.nu(); ++a)
      if (w.at(a, b) != 0) {
        if (a + 1 >= w.nu() || b + 1 >= w.nt()) return std::nullopt;  // touches the box edge
        W.set(Mono{a, b, 0, 0}, w.at(a, b));
      }
  std::vector<MPoly> images(2);
  images[fl.u_slot] = MPoly::var(K, 2, 0);
  images[1 - fl.u_slot] = W;
  if (fl.t_local.compose(images) != MPoly::var(K, 2, 1)) return std::nullopt;
  return W;
}

/// Exact polynomial in (u, t) as a series.
inline LaurentSeries2 poly_to_series(const MPoly& p) {
  LaurentSeries2 s = LaurentSeries2::zero(p.field());
  for (const auto& [m, c] : p.terms()) s = s + LaurentSeries2::monomial(p.field(), m[0], m[1], c);
  return s;
}

inline LaurentSeries2 expand_local_poly(const MPoly& p, const Flag& fl, int nu, int nt) {
  const PowerBox w = solve_other(fl, nu, nt);
  return eval_local(p, fl.u_slot, w).to_laurent();
}

}  // namespace detail

/// Image of f in k(x)((u))((t)). `prec` is the relative window requested.
inline LaurentSeries2 expand_at_flag(const Surface& S, const RationalFunction& f, const Flag& fl, Precision prec = {}) {
  const MPoly N = flag_local(S, fl, f.num()), M = flag_local(S, fl, f.den());
  const int vt = poly_multiplicity(f.den(), fl.curve.poly);
  const int nt = prec.t + vt + 1;
  // u-valuation of the leading t-row of M decides how much u-room is needed
  int nu = prec.u + 1;
  int vu = -1;
  for (int attempt = 0; attempt < 6 && vu < 0; ++attempt) {
    const LaurentSeries2 m = detail::expand_local_poly(M, fl, nu, nt);
    const LaurentSeries1 lead = m.raw_row(vt);
    if (!lead.is_zero_in_window())
      vu = lead.valuation();
    else
      nu *= 2;
  }
  if (vu < 0) throw insufficient_precision("u", "denominator vanishes to high order along the curve at the flag point");
  nu = prec.u + vu + 1;
  const PowerBox w = detail::solve_other(fl, nu, nt);
  if (auto W = detail::exact_other(fl, w)) {
    // the curve is a graph over u: everything is polynomial in (u, t)
    std::vector<MPoly> images(2);
    images[fl.u_slot] = MPoly::var(fl.field(), 2, 0);
    images[1 - fl.u_slot] = *W;
    const LaurentSeries2 ne = detail::poly_to_series(N.compose(images));
    const LaurentSeries2 me = detail::poly_to_series(M.compose(images));
    return ne * me.inverse(prec);
  }
  const int vn = poly_multiplicity(f.num(), fl.curve.poly);
  const LaurentSeries2 n = detail::drop_below(detail::eval_local(N, fl.u_slot, w).to_laurent(), vn);
  const LaurentSeries2 m = detail::drop_below(detail::eval_local(M, fl.u_slot, w).to_laurent(), vt);
  if (M.size() == 1 && M.terms().begin()->first == Mono{0, 0, 0, 0}) return n.scale(fl.field().inv(M.terms().begin()->second));
  return n * m.truncate_t(nt).inverse(prec);
}

/// Standard affine coordinates x, y with omega = dx ^ dy.
inline std::pair<RationalFunction, RationalFunction> standard_coordinates(const Surface& S) {
  const FieldDesc& F = S.base;
  auto v = [&](int i) { return MPoly::var(F, S.nvars(), i); };
  if (S.model == Model::P2) return {RationalFunction(S, v(0), v(2)), RationalFunction(S, v(1), v(2))};
  return {RationalFunction(S, v(1), v(0)), RationalFunction(S, v(3), v(2))};
}

/// omega = J du ^ dt at the flag.
inline LaurentSeries2 omega_at_flag(const Surface& S, const Flag& fl, Precision prec = {}) {
  auto [x, y] = standard_coordinates(S);
  const Precision p1{prec.u + 1, prec.t + 1};
  const LaurentSeries2 ex = expand_at_flag(S, x, fl, p1), ey = expand_at_flag(S, y, fl, p1);
  return ls2_derive(ex, Var::u) * ls2_derive(ey, Var::t) - ls2_derive(ex, Var::t) * ls2_derive(ey, Var::u);
}

/// The canonical divisor read off candidate curves.
struct FormDivisor {
  Divisor divisor;
  bool checked = false;
  std::vector<std::pair<Curve, int>> orders;  // every candidate, including zeros
};

inline FormDivisor divisor_of_form(const Surface& S, const std::vector<Curve>& candidates, Precision prec = {}) {
  FormDivisor out;
  for (const auto& D : candidates) {
    const Flag fl = flag_on_curve(S, D);
    const int ord = ls2_valuation(omega_at_flag(S, fl, prec)).first;
    out.orders.emplace_back(D, ord);
    out.divisor.add(D, ord);
  }
  out.checked = divisor_class(S, out.divisor) == canonical_class(S);
  return out;
}

/// The curves carrying the canonical divisor of omega = dx ^ dy.
inline std::vector<Curve> omega_polar_curves(const Surface& S) {
  if (S.model == Model::P2) return {coordinate_curve(S, 2, "Z")};
  return {coordinate_curve(S, 0, "X0"), coordinate_curve(S, 2, "Y0")};
}

/// (omega) as a divisor, computed from expansions.
inline Divisor canonical_divisor(const Surface& S) {
  FormDivisor fd = divisor_of_form(S, omega_polar_curves(S));
  if (!fd.checked) throw error("canonical divisor does not have the canonical class");
  return fd.divisor;
}

/// Local equation of E as a global rational function: E / (chart form)^class.
inline RationalFunction local_equation(const Surface& S, const Curve& E, const Flag& fl) {
  const ClassVector c = curve_class(S, E);
  MPoly den = MPoly::constant(S.base, S.nvars(), 1);
  if (S.model == Model::P2) {
    den = MPoly::var(S.base, 3, fl.chart_vars[0]).pow(c.v[0]);
  } else {
    den = MPoly::var(S.base, 4, fl.chart_vars[0]).pow(c.v[0]) * MPoly::var(S.base, 4, fl.chart_vars[1]).pow(c.v[1]);
  }
  return RationalFunction(S, E.poly, den);
}

/// The flag parameter t as a global rational function.
inline RationalFunction flag_t_function(const Surface& S, const Flag& fl) {
  const auto emb = embedding(S.base, fl.field());
  if (!emb->contains(fl.t_scale)) throw error("flag_t_function: scale is not in the base field");
  const Elem c = emb->pull(fl.t_scale);
  return local_equation(S, fl.curve, fl).scale(S, c);
}

/// Basis of H^0(X, O(D)) = { f : div f + D >= 0 }.
inline std::vector<RationalFunction> rr_space(const Surface& S, const Divisor& D) {
  const Divisor P = D.positive_part(), Nn = D.negative_part();
  const ClassVector cp = divisor_class(S, P);
  const auto monos = detail::monomials_of_class(S, cp);
  if (monos.empty()) return {};
  const FieldDesc& F = S.base;
  const int nv = S.nvars();
  // coordinates of the remainders modulo each C_j^{n_j}
  std::map<std::pair<std::size_t, Mono>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Elem>>> cols(monos.size());
  std::size_t nrows = 0;
  std::size_t j = 0;
  for (const auto& [C, n] : Nn.components()) {
    const MPoly Cn = C.poly.pow(n);
    for (std::size_t k = 0; k < monos.size(); ++k) {
      const MPoly r = MPoly::monomial(F, nv, monos[k]).remainder(Cn);
      for (const auto& [m, c] : r.terms()) {
        auto [it, fresh] = row_of.emplace(std::make_pair(j, m), nrows);
        if (fresh) ++nrows;
        cols[k].emplace_back(it->second, c);
      }
    }
    ++j;
  }
  std::vector<std::vector<Elem>> kernel;
  if (nrows == 0) {
    for (std::size_t k = 0; k < monos.size(); ++k) {
      std::vector<Elem> e(monos.size(), 0);
      e[k] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    Matrix A(F, nrows, monos.size());
    for (std::size_t k = 0; k < monos.size(); ++k)
      for (auto [r, c] : cols[k]) A(r, k) = F.add(A(r, k), c);
    kernel = nullspace(A);
  }
  MPoly den = MPoly::constant(F, nv, 1);
  for (const auto& [C, m] : P.components()) den = den * C.poly.pow(m);
  std::vector<RationalFunction> basis;
  for (const auto& v : kernel) {
    MPoly num(F, nv);
    for (std::size_t k = 0; k < monos.size(); ++k) num.set(monos[k], v[k]);
    basis.emplace_back(S, num, den);
  }
  return basis;
}

}  // namespace rrsurf

#endif  // RRSURF_FLAGS_HPP
