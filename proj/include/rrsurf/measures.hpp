#ifndef RRSURF_MEASURES_HPP
#define RRSURF_MEASURES_HPP

// Virtual measures and characteristic elements as formal objects, the four
// Fourier rewrite rules, the derivations of the two duality identities and
// the central commutator, Riemann-Roch assembly, and finite windows of
// A_12(S)/A_12(R) with their residue pairing.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/cohomology.hpp"
#include "rrsurf/linalg.hpp"
#include "rrsurf/residues.hpp"
#include "rrsurf/symbols.hpp"

namespace rrsurf {

enum class Lattice { A0, A01, A02, A1, A2, A12, A02_mod_A0, A12_mod_A1 };

inline std::string lattice_name(Lattice l) {
  switch (l) {
    case Lattice::A0: return "A0";
    case Lattice::A01: return "A01";
    case Lattice::A02: return "A02";
    case Lattice::A1: return "A1";
    case Lattice::A2: return "A2";
    case Lattice::A12: return "A12";
    case Lattice::A02_mod_A0: return "A02/A0";
    case Lattice::A12_mod_A1: return "A12/A1";
  }
  return "?";
}

inline bool lattice_takes_divisor(Lattice l) {
  return l == Lattice::A1 || l == Lattice::A2 || l == Lattice::A12 || l == Lattice::A12_mod_A1;
}

struct LatticeSymbol {
  Lattice tag = Lattice::A0;
  Divisor divisor;  // only for the divisor-indexed lattices

  bool operator==(const LatticeSymbol& o) const {
    return tag == o.tag && (!lattice_takes_divisor(tag) || divisor == o.divisor);
  }
  std::string to_string(const Surface& S) const {
    return lattice_takes_divisor(tag) ? lattice_name(tag) + "(" + divisor.to_string(S) + ")" : lattice_name(tag);
  }
};

inline LatticeSymbol lattice(Lattice tag, Divisor d = {}) { return {tag, std::move(d)}; }

/// An element of mu(from | to), as q^value times the canonical normalization.
struct MeasureTag {
  LatticeSymbol from, to;
  QPower value;
};

inline MeasureTag measure_identity(const LatticeSymbol& l) { return {l, l, {}}; }

/// tag(i, j) (x) tag(j, k) = tag(i, k).
inline MeasureTag compose(const MeasureTag& a, const MeasureTag& b) {
  if (!(a.to == b.from)) throw error("measure tags do not compose");
  return {a.from, b.to, a.value * b.value};
}

struct CharElem {
  enum class Side { function_like, distribution_like };
  LatticeSymbol lattice;
  std::optional<MeasureTag> measure;
  Side side = Side::function_like;
};

inline CharElem delta(const LatticeSymbol& l) { return {l, std::nullopt, CharElem::Side::function_like}; }
inline CharElem delta(const LatticeSymbol& l, MeasureTag eta) {
  return {l, std::move(eta), CharElem::Side::distribution_like};
}

namespace detail {

/// Absolute dimension function d(x) for the reference family of L, so that
/// dim(L cap F(x) / L cap F(l)) = d(x) - d(l).
inline std::int64_t lattice_dimension_uncached(const Surface& S, Lattice L, const LatticeSymbol& x) {
  if (L == Lattice::A0 && x.tag == Lattice::A1) return static_cast<std::int64_t>(rr_space(S, x.divisor).size());
  const ClassVector c = divisor_class(S, x.divisor);
  if (L == Lattice::A02_mod_A0 && x.tag == Lattice::A12_mod_A1) return cech_h_vector(S.model, c).h2;
  if (L == Lattice::A02 && x.tag == Lattice::A12) {
    const CohomologyVector v = cech_h_vector(S.model, c);
    return static_cast<std::int64_t>(rr_space(S, x.divisor).size()) - v.h1 + v.h2;
  }
  throw error("unsupported lattice pair " + lattice_name(L) + " / " + lattice_name(x.tag));
}

// per-thread memo; keys carry the surface, the pair and the divisor text
inline std::int64_t lattice_dimension(const Surface& S, Lattice L, const LatticeSymbol& x) {
  thread_local std::map<std::string, std::int64_t> memo;
  std::string key = model_name(S.model) + "/" + S.base.name() + "/" + lattice_name(L) + "/" + lattice_name(x.tag);
  for (const auto& [c, m] : x.divisor.components()) key += "/" + curve_text(S, c) + ":" + std::to_string(m);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const std::int64_t d = lattice_dimension_uncached(S, L, x);
  memo.emplace(key, d);
  return d;
}

}  // namespace detail

/// The L-adapted measure in mu(F(i) | F(j)), relative to the canonical normalization.
/// `aux` is the auxiliary lattice F(l); the result does not depend on it.
inline MeasureTag measure_mu_L(const Surface& S, const LatticeSymbol& L, const LatticeSymbol& i, const LatticeSymbol& j,
                               std::optional<LatticeSymbol> aux = std::nullopt) {
  if (i.tag != j.tag) throw error("unsupported lattice pair: " + i.to_string(S) + " vs " + j.to_string(S));
  if (i == j) return measure_identity(i);
  const LatticeSymbol l = aux ? *aux : lattice(i.tag);
  auto rel = [&](const LatticeSymbol& x, const LatticeSymbol& base) {
    return detail::lattice_dimension(S, L.tag, x) - detail::lattice_dimension(S, L.tag, base);
  };
  const std::int64_t e = -(rel(j, l) - rel(i, l));
  // the same value through the other endpoint as auxiliary lattice
  if (e != -(rel(j, i) - rel(i, i))) throw error("measure_mu_L depends on the auxiliary lattice");
  return {i, j, QPower{e}};
}

/// <delta_L, delta_{A, eta}> = eta / mu_{L, F(o), W}.
inline QPower char_pairing(const Surface& S, const CharElem& dL, const CharElem& dA) {
  if (dL.side != CharElem::Side::function_like || dA.side != CharElem::Side::distribution_like || !dA.measure)
    throw error("char_pairing expects a function-like and a distribution-like element");
  const MeasureTag& eta = *dA.measure;
  if (!(eta.to == dA.lattice)) throw error("incompatible reference lattices: measure ends at " + eta.to.to_string(S));
  const MeasureTag mu = measure_mu_L(S, dL.lattice, eta.from, eta.to);
  QPower r = eta.value;
  r.exponent -= mu.value.exponent;
  return r;
}

/// The four Fourier rewrite rules and their inverses.
inline CharElem fourier_char(const CharElem& e, const Divisor& w) {
  auto dual = [&](const LatticeSymbol& l, Lattice tag) { return lattice(tag, w - l.divisor); };
  const LatticeSymbol& l = e.lattice;
  if (e.side == CharElem::Side::function_like) {
    if (l.tag == Lattice::A0) return delta(lattice(Lattice::A02_mod_A0));
    if (l.tag == Lattice::A02_mod_A0) return delta(lattice(Lattice::A0));
    if (l.tag == Lattice::A02) return delta(lattice(Lattice::A02));
    throw error("fourier_char: unsupported shape delta_" + lattice_name(l.tag));
  }
  const MeasureTag& m = *e.measure;
  Lattice to;
  switch (l.tag) {
    case Lattice::A1: to = Lattice::A12_mod_A1; break;
    case Lattice::A12_mod_A1: to = Lattice::A1; break;
    case Lattice::A12: to = Lattice::A12; break;
    default: throw error("fourier_char: unsupported shape delta_{" + lattice_name(l.tag) + ", eta}");
  }
  return delta(dual(l, to), MeasureTag{dual(m.from, to), dual(m.to, to), m.value});
}

struct IdentityCheck {
  std::int64_t lhs = 0, rhs = 0;
  bool equal = false;
};

/// h^0(C) - h^0(H) through the h^0 pairing, h^2(w-C) - h^2(w-H) after the rewrite.
inline IdentityCheck derive_eq1(const Surface& S, const Divisor& C, const Divisor& H, const Divisor& w) {
  const CharElem a = delta(lattice(Lattice::A0));
  const CharElem b = delta(lattice(Lattice::A1, C), MeasureTag{lattice(Lattice::A1, H), lattice(Lattice::A1, C), {}});
  IdentityCheck r;
  r.lhs = char_pairing(S, a, b).exponent;
  r.rhs = char_pairing(S, fourier_char(a, w), fourier_char(b, w)).exponent;
  r.equal = r.lhs == r.rhs;
  return r;
}

/// chi(S) and chi(w - S) with R = w - S in the chi pairing and its transform.
inline IdentityCheck derive_eq2(const Surface& S, const Divisor& Sd, const Divisor& w) {
  const Divisor R = w - Sd;
  const CharElem a = delta(lattice(Lattice::A02));
  const CharElem b = delta(lattice(Lattice::A12, Sd), MeasureTag{lattice(Lattice::A12, R), lattice(Lattice::A12, Sd), {}});
  const std::int64_t e1 = char_pairing(S, a, b).exponent;
  const std::int64_t e2 = char_pairing(S, fourier_char(a, w), fourier_char(b, w)).exponent;
  IdentityCheck r;
  r.lhs = h_vector(S, divisor_class(S, Sd)).chi();
  r.rhs = h_vector(S, divisor_class(S, R)).chi();
  // conjugacy forces e1 = e2 = -e1, hence both vanish
  r.equal = e1 == e2 && e1 == r.lhs - r.rhs && r.lhs == r.rhs;
  return r;
}

struct CommutatorCheck {
  QPower measure_route, symbol_route;
  bool equal = false;
};

/// (nu_{0,C}/mu_{0,C}) (mu_{w-C,w}/nu_{w-C,w}) against <j_{2,C}, j_{1,w-C}>.
inline CommutatorCheck central_commutator(const Surface& S, const Divisor& C, const Divisor& w) {
  const CharElem a = delta(lattice(Lattice::A02));
  auto chi_exponent = [&](const Divisor& R, const Divisor& Sd) {
    return char_pairing(S, a, delta(lattice(Lattice::A12, Sd), MeasureTag{lattice(Lattice::A12, R), lattice(Lattice::A12, Sd), {}}))
        .exponent;
  };
  CommutatorCheck r;
  r.measure_route.exponent = chi_exponent(Divisor(), C) - chi_exponent(w - C, w);
  const auto [Cg, Hg] = general_position_pair(S, divisor_class(S, C), divisor_class(S, w - C));
  r.symbol_route = QPower{-intersection_number(S, Cg, Hg)};
  r.equal = r.measure_route == r.symbol_route;
  return r;
}

/// A central-extension element (g, phi) with phi in mu(A12(0) | g A12(0)).
struct CentralExtElem {
  IdeleRule g;
  MeasureTag phi;
};

/// Commutator of two lifts; the measures cancel and the symbol pairing remains.
inline QPower central_ext_commutator(const Surface& S, const CentralExtElem& a, const CentralExtElem& b,
                                     const std::vector<Flag>& flags, const std::vector<Flag>& probes = {}) {
  return commutator_pairing(S, a.g, b.g, flags, probes);
}

/// n Z on P^2, a X0 + b Y0 on P^1 x P^1.
inline Divisor class_representative(const Surface& S, const ClassVector& c) {
  if (S.model == Model::P2) return Divisor::of_curve(coordinate_curve(S, 2, "Z"), c.v[0]);
  return Divisor::of_curve(coordinate_curve(S, 0, "X0"), c.v[0]) + Divisor::of_curve(coordinate_curve(S, 2, "Y0"), c.v[1]);
}

struct RRReport {
  ClassVector c;
  std::int64_t lhs2 = 0, rhs2 = 0;  // both sides doubled
  int intersection = 0;             // (C, w - C)
  IdentityCheck eq1, eq2;
  CommutatorCheck commutator;
  bool pass = false;
};

/// h^0(C) - h^1(C) + h^0(w-C) against h^0(0) - h^1(0) + h^0(w) - (C, w-C)/2.
inline RRReport rr_assemble(const Surface& S, const Divisor& C, const Divisor& w) {
  RRReport r;
  r.c = divisor_class(S, C);
  auto h0 = [&](const Divisor& D) { return static_cast<std::int64_t>(rr_space(S, D).size()); };
  auto h1 = [&](const Divisor& D) { return h_vector(S, divisor_class(S, D)).h1; };
  r.lhs2 = 2 * (h0(C) - h1(C) + h0(w - C));
  const auto [Cg, Hg] = general_position_pair(S, r.c, divisor_class(S, w - C));
  r.intersection = intersection_number(S, Cg, Hg);
  r.rhs2 = 2 * (h0(Divisor()) - h1(Divisor()) + h0(w)) - r.intersection;
  r.eq1 = derive_eq1(S, C, Divisor(), w);
  r.eq2 = derive_eq2(S, C, w);
  r.commutator = central_commutator(S, C, w);
  r.pass = r.lhs2 == r.rhs2 && r.eq1.equal && r.eq2.equal && r.commutator.equal;
  return r;
}

struct WindowOptions {
  int max_point_degree = 1;
  int u_size = 2;
  bool affine_only = true;  // flags at points of the standard affine chart only
  std::vector<ClosedPoint> points;  // if nonempty, only these points
  Precision prec{32, 16};
};

struct WindowBasisElem {
  std::size_t flag = 0;
  int a = 0, b = 0;  // u^a t^b
  int e = 0;         // times theta^e, theta generating k(x) over k
};

/// Finite shadow of A12(S)/A12(R): t^b for -s_D <= b < -r_D and a symmetric u-range per flag.
struct Window {
  Divisor R, S;
  std::vector<Flag> flags;
  std::vector<std::pair<int, int>> u_window;  // (lowest exponent, size) per flag
  std::vector<WindowBasisElem> basis;
  Matrix gram;
  bool compatible = false;  // R + S = (w) along every window curve

  std::size_t dimension() const { return basis.size(); }

  /// Image of A12(C): basis elements with b >= -ord_D(C).
  std::vector<std::vector<Elem>> a12_image(const Divisor& C) const {
    std::vector<std::vector<Elem>> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].b >= -C.multiplicity(flags[basis[i].flag].curve)) {
        std::vector<Elem> v(basis.size(), 0);
        v[i] = 1;
        out.push_back(std::move(v));
      }
    return out;
  }
};

inline Window window_build(const Surface& X, const Divisor& R, const Divisor& S, const WindowOptions& opt = {}) {
  const Divisor diff = S - R;
  if (!diff.effective()) throw error("window_build: R is not <= S");
  const Divisor w = canonical_divisor(X);
  Window win;
  win.R = R;
  win.S = S;
  win.compatible = true;
  std::vector<LaurentSeries2> jac;
  for (const auto& [D, m] : diff.components()) {
    win.compatible &= R.multiplicity(D) + S.multiplicity(D) == w.multiplicity(D);
    for (const auto& x : points_on_curve(X, D, opt.max_point_degree)) {
      if (opt.affine_only && x.stratum(X.model) != 0) continue;
      if (!opt.points.empty() && std::find(opt.points.begin(), opt.points.end(), x) == opt.points.end()) continue;
      win.flags.push_back(flag_make(X, x, D));
      jac.push_back(with_escalation(opt.prec, [&](Precision p) { return omega_at_flag(X, win.flags.back(), p); }));
      const int wu = ls2_valuation(jac.back()).second;
      int n = opt.u_size;
      if ((n + wu) % 2 != 0) ++n;  // a symmetric range needs this parity
      win.u_window.emplace_back((-n - wu) / 2, n);
    }
  }
  for (std::size_t f = 0; f < win.flags.size(); ++f) {
    const Curve& D = win.flags[f].curve;
    const auto [lo, n] = win.u_window[f];
    for (int b = -S.multiplicity(D); b < -R.multiplicity(D); ++b)
      for (int a = lo; a < lo + n; ++a)
        for (int e = 0; e < win.flags[f].point.degree; ++e) win.basis.push_back({f, a, b, e});
  }
  const FieldDesc& k = X.base;
  win.gram = Matrix(k, win.basis.size(), win.basis.size());
  for (std::size_t i = 0; i < win.basis.size(); ++i)
    for (std::size_t j = 0; j < win.basis.size(); ++j) {
      const auto& bi = win.basis[i];
      const auto& bj = win.basis[j];
      if (bi.flag != bj.flag) continue;
      const FieldDesc& K = win.flags[bi.flag].field();
      const LaurentSeries2& J = jac[bi.flag];
      const int tb = -1 - bi.b - bj.b, ua = -1 - bi.a - bj.a;
      if (tb < J.t_lo()) continue;
      const Elem c = J.row(tb).coeff(ua);
      const Elem theta = K.generator();
      const Elem scale = bi.e + bj.e == 0 ? 1 : K.pow(theta, static_cast<std::uint64_t>(bi.e + bj.e));
      win.gram(i, j) = trace_to_base(X, FieldElem(K, K.mul(c, scale))).value();
    }
  if (win.compatible && rank(win.gram) != win.dimension())
    throw error("window gram is rank deficient on an omega-compatible window");
  return win;
}

/// The annihilator of the A12(C)-image under the gram pairing equals the A12(w - C)-image.
inline bool window_annihilator_check(const Window& win, const Divisor& C, const Divisor& w) {
  const Divisor dual = w - C;
  for (const auto& fl : win.flags) {
    const int r = win.R.multiplicity(fl.curve), s = win.S.multiplicity(fl.curve);
    for (const int c : {C.multiplicity(fl.curve), dual.multiplicity(fl.curve)})
      if (c < r || c > s) throw error("window_annihilator_check: divisor outside the window bounds");
  }
  const std::size_t n = win.dimension();
  const FieldDesc& k = win.gram.field();
  const auto img = win.a12_image(C);
  Matrix M(k, img.size(), n);
  for (std::size_t r = 0; r < img.size(); ++r)
    for (std::size_t i = 0; i < n; ++i)
      if (img[r][i] != 0)
        for (std::size_t j = 0; j < n; ++j) M(r, j) = k.add(M(r, j), k.mul(img[r][i], win.gram(i, j)));
  return same_span(k, nullspace(M), win.a12_image(dual), n);
}

/// dim(L(C)/L(H)) for H <= C, by rank of the functions over a common denominator.
inline std::int64_t rr_quotient_dimension(const Surface& S, const Divisor& C, const Divisor& H) {
  if (!(C - H).effective()) throw error("rr_quotient_dimension: H is not <= C");
  const auto bc = rr_space(S, C), bh = rr_space(S, H);
  std::vector<RationalFunction> all = bh;
  all.insert(all.end(), bc.begin(), bc.end());
  if (all.empty()) return 0;
  MPoly den = MPoly::constant(S.base, S.nvars(), 1);
  for (const auto& f : all) {
    const auto [ok, q] = den.divide(f.den());
    if (!ok) den = den * f.den();
  }
  std::vector<Mono> monos;
  std::vector<MPoly> nums;
  for (const auto& f : all) {
    const auto [ok, q] = den.divide(f.den());
    if (!ok) throw error("rr_quotient_dimension: denominators do not combine");
    nums.push_back(f.num() * q);
    for (const auto& [m, c] : nums.back().terms()) monos.push_back(m);
  }
  std::sort(monos.begin(), monos.end());
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  auto vec = [&](const MPoly& p) {
    std::vector<Elem> v(monos.size(), 0);
    for (std::size_t i = 0; i < monos.size(); ++i) v[i] = p.coeff(monos[i]);
    return v;
  };
  std::vector<std::vector<Elem>> vh, vall;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    vall.push_back(vec(nums[i]));
    if (i < bh.size()) vh.push_back(vall.back());
  }
  return static_cast<std::int64_t>(span_rank(S.base, vall, monos.size())) -
         static_cast<std::int64_t>(span_rank(S.base, vh, monos.size()));
}

}  // namespace rrsurf

#endif  // RRSURF_MEASURES_HPP
