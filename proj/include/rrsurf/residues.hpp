#ifndef RRSURF_RESIDUES_HPP
#define RRSURF_RESIDUES_HPP

// Residues of rational 2-forms f * omega at flags, the two reciprocity sums
// and the adelic pairing on finite-support fragments.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/flags.hpp"

namespace rrsurf {

/// coefficient * omega, with omega = dx ^ dy of the standard chart.
struct GlobalForm {
  RationalFunction coefficient;
  std::vector<Curve> polar;  // components of the denominator of the coefficient
};

inline GlobalForm form_make(const Surface& S, const RationalFunction& f) {
  GlobalForm w{f, {}};
  for (auto& [g, m] : factor_form(S, f.den()).factors) w.polar.push_back(Curve{g, {}});
  return w;
}

/// Curves along which f * omega may have a pole: the coefficient's polar curves and those of omega.
inline std::vector<Curve> polar_support(const Surface& S, const GlobalForm& w) {
  std::vector<Curve> out = w.polar;
  for (auto& c : omega_polar_curves(S))
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of times precision is doubled before giving up.
inline constexpr int kPrecisionRetries = 4;

template <class Fn>
auto with_escalation(Precision prec, Fn fn, Precision* used = nullptr) {
  for (int attempt = 0;; ++attempt) {
    try {
      auto r = fn(prec);
      if (used) *used = prec;
      return r;
    } catch (const insufficient_precision&) {
      if (attempt >= kPrecisionRetries) throw;
      prec = prec.doubled();
    }
  }
}

/// f * J, the coefficient of du ^ dt at the flag.
inline LaurentSeries2 form_at_flag(const Surface& S, const RationalFunction& f, const Flag& fl, Precision prec = {}) {
  return expand_at_flag(S, f, fl, prec) * omega_at_flag(S, fl, prec);
}

/// res_{x,D}(w) in k(x).
inline FieldElem local_residue(const Surface& S, const GlobalForm& w, const Flag& fl, Precision prec = {},
                               Precision* used = nullptr) {
  return with_escalation(
      prec, [&](Precision p) { return res2({form_at_flag(S, w.coefficient, fl, p)}); }, used);
}

/// tr_{k(x)/k}, landing in the base field.
inline FieldElem trace_to_base(const Surface& S, const FieldElem& a) {
  if (a.field() == S.base) return a;
  const auto emb = embedding(S.base, a.field());
  return {S.base, emb->trace(a.value())};
}

/// Sum over the given curves through x of res_{x,D}(w), in k(x).
inline FieldElem residue_sum_around_point(const Surface& S, const GlobalForm& w, const ClosedPoint& x,
                                          const std::vector<Curve>& curves, Precision prec = {}) {
  for (const auto& E : polar_support(S, w))
    if (point_on(E, x) && std::find(curves.begin(), curves.end(), E) == curves.end())
      throw error("residue_sum_around_point: polar curve " + curve_text(S, E) + " through " + point_text(S, x) +
                  " is missing from the list");
  FieldElem total{x.field, 0};
  for (const auto& D : curves) {
    if (!point_on(D, x)) throw error("residue_sum_around_point: curve " + curve_text(S, D) + " does not pass through the point");
    total = total + local_residue(S, w, flag_make(S, x, D), prec);
  }
  return total;
}

/// Points of D where res_{x,D}(w) can be nonzero.
inline std::vector<ClosedPoint> residue_candidates(const Surface& S, const GlobalForm& w, const Curve& D) {
  std::vector<ClosedPoint> out;
  for (const auto& E : polar_support(S, w)) {
    if (E == D) continue;
    for (auto& x : intersection_support(S, D, E))
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(), [&](const ClosedPoint& a, const ClosedPoint& b) { return point_less(S.model, a, b); });
  return out;
}

struct CurveResidueReport {
  FieldElem sum;
  std::vector<std::pair<ClosedPoint, FieldElem>> terms;  // traced residues at the candidates
  std::size_t probes = 0;                                 // other points checked to vanish
};

/// Sum over x in D of tr res_{x,D}(w), with the completeness probe.
inline CurveResidueReport residue_sum_along_curve_report(const Surface& S, const GlobalForm& w, const Curve& D,
                                                         Precision prec = {}, std::size_t probes = 3) {
  CurveResidueReport rep{{S.base, 0}, {}, 0};
  const auto cands = residue_candidates(S, w, D);
  for (const auto& x : cands) {
    const FieldElem r = trace_to_base(S, local_residue(S, w, flag_make(S, x, D), prec));
    rep.terms.emplace_back(x, r);
    rep.sum = rep.sum + r;
  }
  for (const auto& x : points_on_curve(S, D, 1)) {
    if (rep.probes >= probes) break;
    if (std::find(cands.begin(), cands.end(), x) != cands.end()) continue;
    Flag fl;
    try {
      fl = flag_make(S, x, D);
    } catch (const unsupported&) {
      continue;
    }
    if (!local_residue(S, w, fl, prec).is_zero())
      throw error("residue_sum_along_curve: nonzero residue at " + point_text(S, x) + " outside the candidate set");
    ++rep.probes;
  }
  return rep;
}

inline FieldElem residue_sum_along_curve(const Surface& S, const GlobalForm& w, const Curve& D, Precision prec = {}) {
  return residue_sum_along_curve_report(S, w, D, prec).sum;
}

/// Finitely supported adele: series attached to flags, zero elsewhere.
class AdeleFragment {
 public:
  void set(const Flag& fl, LaurentSeries2 s) {
    for (auto& [f, v] : entries_)
      if (same_flag(f, fl)) {
        v = std::move(s);
        return;
      }
    entries_.emplace_back(fl, std::move(s));
  }
  const LaurentSeries2* find(const Flag& fl) const {
    for (const auto& [f, v] : entries_)
      if (same_flag(f, fl)) return &v;
    return nullptr;
  }
  const std::vector<std::pair<Flag, LaurentSeries2>>& entries() const { return entries_; }

  static bool same_flag(const Flag& a, const Flag& b) {
    return a.curve == b.curve && a.point == b.point && a.chart_vars == b.chart_vars;
  }

 private:
  std::vector<std::pair<Flag, LaurentSeries2>> entries_;
};

/// sum over flags of tr res2(a b J).
inline FieldElem adelic_pairing(const Surface& S, const AdeleFragment& a, const AdeleFragment& b, Precision prec = {}) {
  FieldElem total{S.base, 0};
  for (const auto& [fl, sa] : a.entries()) {
    const LaurentSeries2* sb = b.find(fl);
    if (!sb) continue;
    const LaurentSeries2 jac = omega_at_flag(S, fl, prec);
    total = total + trace_to_base(S, res2({sa * *sb * jac}));
  }
  return total;
}

}  // namespace rrsurf

#endif  // RRSURF_RESIDUES_HPP
