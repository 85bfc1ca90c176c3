#ifndef RRSURF_SYMBOLS_HPP
#define RRSURF_SYMBOLS_HPP

// Tame symbols in k(x)((u))((t)), the integer bisymbol (f, g)_{x,D}, the
// commutator pairing of idele choices and intersection numbers, with a
// resultant-based oracle.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/flags.hpp"

namespace rrsurf {

/// The number q^exponent, optionally times a rational multiplier.
struct QPower {
  std::int64_t exponent = 0;
  std::int64_t mult_num = 1;
  std::int64_t mult_den = 1;

  QPower operator*(const QPower& o) const {
    QPower r{exponent + o.exponent, mult_num * o.mult_num, mult_den * o.mult_den};
    const std::int64_t g = std::gcd(r.mult_num, r.mult_den);
    r.mult_num /= g;
    r.mult_den /= g;
    if (r.mult_den < 0) {
      r.mult_num = -r.mult_num;
      r.mult_den = -r.mult_den;
    }
    return r;
  }
  bool operator==(const QPower& o) const {
    return exponent == o.exponent && mult_num * o.mult_den == o.mult_num * mult_den;
  }
  std::string to_string() const {
    std::string s = "q^" + std::to_string(exponent);
    if (mult_num != 1 || mult_den != 1) s = std::to_string(mult_num) + "/" + std::to_string(mult_den) + " * " + s;
    return s;
  }
};

/// (-1)^{v(f)v(g)} f^{v(g)} g^{-v(f)} mod t, with v the t-valuation.
/// `with_sign = false` drops the (-1) factor.
inline LaurentSeries1 tame_t(const LaurentSeries2& f, const LaurentSeries2& g, bool with_sign = true, int cap = Precision{}.u) {
  const int a = ls2_valuation(f).first;
  const int b = ls2_valuation(g).first;
  const LaurentSeries1& f0 = f.rows().front();
  const LaurentSeries1& g0 = g.rows().front();
  const FieldDesc& K = f.field();
  auto pow1 = [&](const LaurentSeries1& s, std::int64_t e) {
    LaurentSeries1 base = e < 0 ? s.inverse(cap) : s;
    LaurentSeries1 r = LaurentSeries1::monomial(K, 0, 1);
    for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r = r * base;
    return r;
  };
  LaurentSeries1 r = pow1(f0, b) * pow1(g0, -a);
  if (with_sign && ((static_cast<std::int64_t>(a) * b) & 1)) r = -r;
  return r;
}

/// u-valuation of the tame symbol.
inline int bisymbol(const LaurentSeries2& f, const LaurentSeries2& g) {
  const auto [a, ua] = ls2_valuation(f);
  const auto [b, ub] = ls2_valuation(g);
  // the u-valuation of f0^b g0^-a, read without expanding
  return b * ua - a * ub;
}

/// Deterministic choice of idele components for a divisor.
struct IdeleRule {
  enum class Kind { along_curves, at_points };
  Kind kind = Kind::along_curves;
  Divisor divisor;
};

inline IdeleRule idele_j(const Divisor& E, IdeleRule::Kind kind) { return {kind, E}; }

/// Product of two rules of the same kind.
inline IdeleRule operator*(const IdeleRule& a, const IdeleRule& b) {
  if (a.kind != b.kind) throw error("idele rules of different kinds");
  return {a.kind, a.divisor + b.divisor};
}

namespace detail {

/// Reference form used to make D^m a function along D: a coordinate form not equal to D.
inline MPoly along_denominator(const Surface& S, const Curve& D) {
  const FieldDesc& F = S.base;
  const ClassVector c = curve_class(S, D);
  if (S.model == Model::P2) {
    for (int v : {2, 0, 1}) {
      const MPoly l = MPoly::var(F, 3, v);
      if (l != D.poly) return l.pow(c.v[0]);
    }
  }
  const MPoly lx = MPoly::var(F, 4, 0) != D.poly ? MPoly::var(F, 4, 0) : MPoly::var(F, 4, 1);
  const MPoly ly = MPoly::var(F, 4, 2) != D.poly ? MPoly::var(F, 4, 2) : MPoly::var(F, 4, 3);
  return lx.pow(c.v[0]) * ly.pow(c.v[1]);
}

}  // namespace detail

/// The rule's component at a flag, as a global rational function.
inline RationalFunction idele_component(const Surface& S, const IdeleRule& r, const Flag& fl) {
  RationalFunction out = RationalFunction::constant(S, 1);
  if (r.kind == IdeleRule::Kind::along_curves) {
    const int m = r.divisor.multiplicity(fl.curve);
    if (m == 0) return out;
    return RationalFunction(S, fl.curve.poly, detail::along_denominator(S, fl.curve)).pow(S, m);
  }
  for (const auto& [E, m] : r.divisor.components()) out = out.mul(S, local_equation(S, E, fl).pow(S, m));
  return out;
}

inline int flag_bisymbol(const Surface& S, const IdeleRule& g1, const IdeleRule& g2, const Flag& fl, Precision prec = {}) {
  const RationalFunction f = idele_component(S, g1, fl), g = idele_component(S, g2, fl);
  return bisymbol(expand_at_flag(S, f, fl, prec), expand_at_flag(S, g, fl, prec));
}

/// Commutator of two idele choices, summed over the given flags.
/// Every probe flag must carry a zero symbol; otherwise the flag list is incomplete.
inline QPower commutator_pairing(const Surface& S, const IdeleRule& g1, const IdeleRule& g2, const std::vector<Flag>& flags,
                                 const std::vector<Flag>& probes = {}, Precision prec = {}) {
  QPower out;
  for (const auto& fl : flags) out.exponent -= static_cast<std::int64_t>(fl.point.degree) * flag_bisymbol(S, g1, g2, fl, prec);
  for (const auto& fl : probes)
    if (flag_bisymbol(S, g1, g2, fl, prec) != 0)
      throw error("commutator_pairing: nonzero symbol at " + point_text(S, fl.point) + " on " + curve_text(S, fl.curve) +
                  ", outside the supplied flags");
  return out;
}

/// Flags x in supp C on D, for each D in supp H.
inline std::vector<Flag> intersection_flags(const Surface& S, const Divisor& C, const Divisor& H) {
  std::vector<Flag> flags;
  for (const auto& [D, m] : H.components()) {
    std::vector<ClosedPoint> pts;
    for (const auto& [E, n] : C.components()) {
      if (E == D) throw error("divisors share the component " + curve_text(S, D) + "; move one within its class first");
      for (auto& x : intersection_support(S, E, D))
        if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(std::move(x));
    }
    std::sort(pts.begin(), pts.end(), [&](const ClosedPoint& a, const ClosedPoint& b) { return point_less(S.model, a, b); });
    for (const auto& x : pts) flags.push_back(flag_make(S, x, D));
  }
  return flags;
}

/// Degree-1 flags on supp H away from the listed ones.
inline std::vector<Flag> probe_flags(const Surface& S, const Divisor& H, const std::vector<Flag>& used, std::size_t per_curve = 2) {
  std::vector<Flag> out;
  for (const auto& [D, m] : H.components()) {
    std::size_t n = 0;
    for (const auto& x : points_on_curve(S, D, 1)) {
      if (n >= per_curve) break;
      bool taken = false;
      for (const auto& f : used) taken |= f.curve == D && f.point == x;
      if (taken) continue;
      try {
        out.push_back(flag_make(S, x, D));
        ++n;
      } catch (const unsupported&) {
      }
    }
  }
  return out;
}

/// (C, H) through the symbol route: -exponent of <j_{2,C}, j_{1,H}>.
inline int intersection_number(const Surface& S, const Divisor& C, const Divisor& H, Precision prec = {}) {
  const auto flags = intersection_flags(S, C, H);
  const auto probes = probe_flags(S, H, flags);
  const QPower p = commutator_pairing(S, idele_j(C, IdeleRule::Kind::at_points), idele_j(H, IdeleRule::Kind::along_curves),
                                      flags, probes, prec);
  return static_cast<int>(-p.exponent);
}

/// Intersection number of two classes.
inline int class_intersection(const Surface& S, const ClassVector& a, const ClassVector& b) {
  if (S.model == Model::P2) return a.v[0] * b.v[0];
  return a.v[0] * b.v[1] + a.v[1] * b.v[0];
}

namespace detail {

/// Res_v(f, g) with formal degrees, after fixing one variable to 1; `w` is the remaining variable.
inline UPoly formal_resultant(const MPoly& f, const MPoly& g, int v, int w, int one, int df, int dg) {
  const FieldDesc& F = f.field();
  auto coeffs = [&](const MPoly& p, int d) {
    std::vector<UPoly> out(static_cast<std::size_t>(d + 1), UPoly(F));
    for (const auto& [m, c] : p.terms()) {
      (void)one;
      std::vector<Elem> u(static_cast<std::size_t>(m[w] + 1), 0);
      u[m[w]] = c;
      out[m[v]] = out[m[v]] + UPoly(F, u);
    }
    return out;
  };
  return bivariate_resultant(coeffs(f, df), coeffs(g, dg), F);
}

inline int curve_pair_oracle(const Surface& S, const Curve& C, const Curve& H) {
  if (C == H) throw error("intersection_oracle: common component; use the class formula");
  if (S.model == Model::P1xP1) return class_intersection(S, curve_class(S, C), curve_class(S, H));
  const int a = curve_class(S, C).v[0], b = curve_class(S, H).v[0];
  // choose an eliminated variable whose point (e_v) is not on both curves
  for (int v : {1, 0, 2}) {
    std::vector<Elem> e(3, 0);
    e[v] = 1;
    if (C.poly.eval(e) == 0 && H.poly.eval(e) == 0) continue;
    int o1 = -1, o2 = -1;
    for (int i = 0; i < 3; ++i)
      if (i != v) (o1 < 0 ? o1 : o2) = i;
    // R(o1, o2) as a binary form: degree of R(x, 1) plus the order at (1 : 0)
    const UPoly r1 = formal_resultant(C.poly, H.poly, v, o1, o2, a, b);
    const UPoly r2 = formal_resultant(C.poly, H.poly, v, o2, o1, a, b);
    if (r1.is_zero() || r2.is_zero()) throw error("intersection_oracle: curves share a component");
    int ord = 0;
    while (r2.coeff(ord) == 0) ++ord;
    return r1.degree() + ord;
  }
  throw error("intersection_oracle: no admissible elimination variable");
}

}  // namespace detail

/// Classical intersection number: resultants on P^2, the class formula on P^1 x P^1.
inline int intersection_oracle(const Surface& S, const Divisor& C, const Divisor& H) {
  for (const auto& [E, m] : C.components())
    for (const auto& [D, n] : H.components())
      if (E == D) return class_intersection(S, divisor_class(S, C), divisor_class(S, H));
  int total = 0;
  for (const auto& [E, m] : C.components())
    for (const auto& [D, n] : H.components()) total += m * n * detail::curve_pair_oracle(S, E, D);
  return total;
}

/// Representatives of two classes with disjoint supports, built from coordinate lines.
inline std::pair<Divisor, Divisor> general_position_pair(const Surface& S, const ClassVector& a, const ClassVector& b) {
  if (S.model == Model::P2) {
    const Curve L1 = coordinate_curve(S, 2, "Z"), L2 = coordinate_curve(S, 0, "X");
    return {Divisor::of_curve(L1, a.v[0]), Divisor::of_curve(L2, b.v[0])};
  }
  const Curve F1 = coordinate_curve(S, 0, "X0"), G1 = coordinate_curve(S, 2, "Y0");
  const Curve F2 = coordinate_curve(S, 1, "X1"), G2 = coordinate_curve(S, 3, "Y1");
  return {Divisor::of_curve(F1, a.v[0]) + Divisor::of_curve(G1, a.v[1]),
          Divisor::of_curve(F2, b.v[0]) + Divisor::of_curve(G2, b.v[1])};
}

/// (a, b) for classes, via the symbol route on general-position representatives.
inline int class_intersection_by_symbols(const Surface& S, const ClassVector& a, const ClassVector& b) {
  auto [C, H] = general_position_pair(S, a, b);
  return intersection_number(S, C, H);
}

}  // namespace rrsurf

#endif  // RRSURF_SYMBOLS_HPP
