#ifndef RRSURF_SURFACE_HPP
#define RRSURF_SURFACE_HPP

// The surfaces P^2 and P^1 x P^1 over F_q: homogeneous coordinates, curves,
// closed points, rational functions and divisors.
//
// Coordinates. P^2 uses X, Y, Z and normalizes a point so its last nonzero
// coordinate is 1. P^1 x P^1 uses X0, X1, Y0, Y1; each factor is normalized
// so its first nonzero coordinate is 1. A closed point of degree e is stored
// as the lexicographically least member of its Frobenius orbit, with
// coordinates in F_{q^e}.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/fields.hpp"
#include "rrsurf/mpoly.hpp"
#include "rrsurf/upoly.hpp"

namespace rrsurf {

enum class Model { P2, P1xP1 };

inline std::string model_name(Model m) { return m == Model::P2 ? "P2" : "P1xP1"; }

inline Model model_from_name(const std::string& s) {
  if (s == "P2") return Model::P2;
  if (s == "P1xP1") return Model::P1xP1;
  throw error("unknown surface model '" + s + "' (expected P2 or P1xP1)");
}

struct Surface {
  Model model = Model::P2;
  FieldDesc base;

  int nvars() const { return model == Model::P2 ? 3 : 4; }
  std::vector<std::string> names() const {
    return model == Model::P2 ? std::vector<std::string>{"X", "Y", "Z"}
                              : std::vector<std::string>{"X0", "X1", "Y0", "Y1"};
  }
  bool operator==(const Surface& o) const { return model == o.model && base == o.base; }
};

/// q may be a prime power.
inline Surface surface_make(Model m, int q) {
  int p = 0, d = 0;
  for (int c = 2; c <= q; ++c)
    if (q % c == 0) {
      p = c;
      break;
    }
  if (p == 0) throw error("q must be a prime power, got " + std::to_string(q));
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++d;
  }
  if (r != 1) throw error("q must be a prime power, got " + std::to_string(q));
  return {m, field_make(p, d)};
}

/// Degree (P^2) or bidegree (P^1 x P^1).
struct ClassVector {
  std::vector<int> v;

  ClassVector operator+(const ClassVector& o) const {
    ClassVector r = *this;
    for (std::size_t i = 0; i < v.size(); ++i) r.v[i] += o.v[i];
    return r;
  }
  ClassVector operator-(const ClassVector& o) const {
    ClassVector r = *this;
    for (std::size_t i = 0; i < v.size(); ++i) r.v[i] -= o.v[i];
    return r;
  }
  ClassVector operator*(int k) const {
    ClassVector r = *this;
    for (auto& x : r.v) x *= k;
    return r;
  }
  ClassVector operator-() const { return *this * -1; }
  bool operator==(const ClassVector& o) const { return v == o.v; }
  bool operator<(const ClassVector& o) const { return v < o.v; }
  bool is_zero() const {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
  }
  std::string to_string() const {
    if (v.size() == 1) return std::to_string(v[0]);
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")";
  }
};

inline ClassVector class_zero(const Surface& S) {
  return {std::vector<int>(S.model == Model::P2 ? 1 : 2, 0)};
}

/// Class of the canonical divisor.
inline ClassVector canonical_class(const Surface& S) {
  return S.model == Model::P2 ? ClassVector{{-3}} : ClassVector{{-2, -2}};
}

namespace detail {

inline bool is_form(const Surface& S, const MPoly& f) {
  if (S.model == Model::P2) return f.block_homogeneous(0, 3);
  return f.block_homogeneous(0, 2) && f.block_homogeneous(2, 4);
}

inline ClassVector class_of_poly(const Surface& S, const MPoly& f) {
  if (f.is_zero()) throw error("zero polynomial has no class");
  if (S.model == Model::P2) return {{f.block_degree(0, 3)}};
  return {{f.block_degree(0, 2), f.block_degree(2, 4)}};
}

/// Monomials of a class, in increasing map order.
inline std::vector<Mono> monomials_of_class(const Surface& S, const ClassVector& c) {
  std::vector<Mono> out;
  if (S.model == Model::P2) {
    const int d = c.v[0];
    if (d < 0) return out;
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) out.push_back(Mono{a, b, d - a - b, 0});
  } else {
    const int a = c.v[0], b = c.v[1];
    if (a < 0 || b < 0) return out;
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j) out.push_back(Mono{i, a - i, j, b - j});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Monic forms of a given class, enumerated by lex-leading monomial.
/// Calls `visit` until it returns true; returns false if the budget is exhausted.
template <class Visit>
bool for_each_monic_form(const Surface& S, const ClassVector& c, std::uint64_t budget, Visit visit) {
  const auto monos = monomials_of_class(S, c);
  const FieldDesc& F = S.base;
  const std::uint64_t q = F.order();
  for (std::size_t lead = 0; lead < monos.size(); ++lead) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < lead; ++i) {
      total *= q;
      if (total > budget) return false;
    }
    if (total > budget) return false;
    budget -= total;
    for (std::uint64_t code = 0; code < total; ++code) {
      MPoly g(F, S.nvars());
      g.set(monos[lead], 1);
      std::uint64_t x = code;
      for (std::size_t i = 0; i < lead; ++i) {
        g.set(monos[i], static_cast<Elem>(x % q));
        x /= q;
      }
      if (visit(g)) return true;
    }
  }
  return true;
}

inline std::vector<ClassVector> proper_subclasses(const Surface& S, const ClassVector& c) {
  std::vector<ClassVector> out;
  if (S.model == Model::P2) {
    for (int k = 1; 2 * k <= c.v[0]; ++k) out.push_back({{k}});
  } else {
    for (int i = 0; i <= c.v[0]; ++i)
      for (int j = 0; j <= c.v[1]; ++j) {
        if ((i == 0 && j == 0) || (i == c.v[0] && j == c.v[1])) continue;
        // the cofactor has class c - (i,j); search the smaller of the two
        const int mine = (i + 1) * (j + 1), other = (c.v[0] - i + 1) * (c.v[1] - j + 1);
        if (mine < other || (mine == other && std::make_pair(i, j) <= std::make_pair(c.v[0] - i, c.v[1] - j)))
          out.push_back({{i, j}});
      }
    std::sort(out.begin(), out.end(), [](const ClassVector& a, const ClassVector& b) {
      return (a.v[0] + 1) * (a.v[1] + 1) < (b.v[0] + 1) * (b.v[1] + 1);
    });
  }
  return out;
}

inline constexpr std::uint64_t kFactorBudget = 4'000'000;

/// A proper monic factor of f, if one exists.
inline std::optional<MPoly> find_form_factor(const Surface& S, const MPoly& f) {
  const ClassVector c = class_of_poly(S, f);
  for (const auto& sub : proper_subclasses(S, c)) {
    std::optional<MPoly> found;
    const bool complete = for_each_monic_form(S, sub, kFactorBudget, [&](const MPoly& g) {
      auto [ok, q] = f.divide(g);
      if (ok) found = g;
      return ok;
    });
    if (found) return found;
    if (!complete) throw unsupported("factor search for class " + c.to_string() + " exceeds the search budget");
  }
  return std::nullopt;
}

}  // namespace detail

/// Factorization of a form into monic irreducible forms with multiplicities, and the leading unit.
struct FormFactorization {
  Elem unit = 1;
  std::vector<std::pair<MPoly, int>> factors;
};

inline FormFactorization factor_form(const Surface& S, const MPoly& f) {
  if (f.is_zero()) throw error("cannot factor the zero polynomial");
  if (!detail::is_form(S, f)) throw error("polynomial is not (bi)homogeneous");
  FormFactorization out;
  out.unit = f.leading().second;
  MPoly rest = f.monic();
  std::map<MPoly, int> acc;
  while (!detail::class_of_poly(S, rest).is_zero()) {
    auto g = detail::find_form_factor(S, rest);
    MPoly h = g ? *g : rest;
    // extract all copies of h
    while (true) {
      auto [ok, q] = rest.divide(h);
      if (!ok) break;
      ++acc[h];
      rest = q;
      if (detail::class_of_poly(S, rest).is_zero()) break;
    }
  }
  for (auto& [g, m] : acc) out.factors.emplace_back(g, m);
  return out;
}

struct Curve {
  MPoly poly;  // monic, irreducible
  std::string name;

  bool operator==(const Curve& o) const { return poly == o.poly; }
  bool operator!=(const Curve& o) const { return !(poly == o.poly); }
  bool operator<(const Curve& o) const { return poly < o.poly; }
};

inline std::string curve_text(const Surface& S, const Curve& C) { return C.poly.to_string(S.names()); }

inline ClassVector curve_class(const Surface& S, const Curve& C) { return detail::class_of_poly(S, C.poly); }

/// Verified irreducible curve in canonical (monic) form.
inline Curve curve_make(const Surface& S, const MPoly& poly, std::string name = {}) {
  if (poly.is_zero()) throw error("curve polynomial is zero");
  if (poly.field() != S.base || poly.nvars() != S.nvars()) throw error("curve polynomial is not over the surface's ring");
  if (!detail::is_form(S, poly)) throw error("curve polynomial is not (bi)homogeneous");
  if (detail::class_of_poly(S, poly).is_zero()) throw error("curve polynomial is constant");
  auto fac = factor_form(S, poly);
  if (fac.factors.size() != 1 || fac.factors[0].second != 1) {
    std::string msg = "reducible curve polynomial; factors:";
    for (auto& [g, m] : fac.factors) {
      msg += " " + g.to_string(S.names());
      if (m > 1) msg += " (x" + std::to_string(m) + ")";
      msg += ";";
    }
    throw error(msg);
  }
  return {poly.monic(), std::move(name)};
}

/// Coordinate hyperplanes, the usual reference curves.
inline Curve coordinate_curve(const Surface& S, int var, std::string name = {}) {
  return curve_make(S, MPoly::var(S.base, S.nvars(), var), std::move(name));
}

struct ClosedPoint {
  FieldDesc field;           // k(x) = F_{q^degree}
  std::vector<Elem> coords;  // homogeneous coordinates in k(x)
  int degree = 1;

  /// 0 for the standard affine chart, larger for strata at infinity.
  int stratum(Model m) const {
    if (m == Model::P2) return coords[2] != 0 ? 0 : coords[1] != 0 ? 1 : 2;
    return (coords[0] == 0 ? 2 : 0) + (coords[2] == 0 ? 1 : 0);
  }
  bool operator==(const ClosedPoint& o) const { return degree == o.degree && coords == o.coords; }
  bool operator!=(const ClosedPoint& o) const { return !(*this == o); }
};

inline std::string point_text(const Surface& S, const ClosedPoint& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (S.model == Model::P1xP1 && i == 2) s += ")x(";
    else if (i > 0) s += ":";
    s += x.field.format(x.coords[i]);
  }
  return s + ")" + (x.degree > 1 ? " [deg " + std::to_string(x.degree) + "]" : "");
}

/// Deterministic order: by degree, then stratum, then coordinates.
inline bool point_less(Model m, const ClosedPoint& a, const ClosedPoint& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  if (a.stratum(m) != b.stratum(m)) return a.stratum(m) < b.stratum(m);
  return a.coords < b.coords;
}

namespace detail {

inline void normalize_coords(Model m, const FieldDesc& K, std::vector<Elem>& c) {
  auto norm = [&](std::size_t lo, std::size_t hi, bool last) {
    Elem lead = 0;
    if (last) {
      for (std::size_t i = hi; i-- > lo;)
        if (c[i] != 0) {
          lead = c[i];
          break;
        }
    } else {
      for (std::size_t i = lo; i < hi; ++i)
        if (c[i] != 0) {
          lead = c[i];
          break;
        }
    }
    if (lead == 0) throw error("point with all coordinates zero");
    const Elem inv = K.inv(lead);
    for (std::size_t i = lo; i < hi; ++i) c[i] = K.mul(c[i], inv);
  };
  if (m == Model::P2) {
    norm(0, 3, true);
  } else {
    norm(0, 2, false);
    norm(2, 4, false);
  }
}

/// Closed point through a geometric point with coordinates in K.
inline ClosedPoint closed_point_from(const Surface& S, const FieldDesc& K, std::vector<Elem> c) {
  normalize_coords(S.model, K, c);
  const std::uint64_t q = S.base.order();
  // orbit under x -> x^q
  std::vector<std::vector<Elem>> orbit{c};
  while (true) {
    std::vector<Elem> n = orbit.back();
    for (auto& v : n) v = K.pow(v, q);
    if (n == orbit.front()) break;
    orbit.push_back(std::move(n));
  }
  const int e = static_cast<int>(orbit.size());
  const FieldDesc Ke = field_extension(S.base, e);
  auto emb = embedding(Ke, K);
  std::vector<Elem> best;
  for (auto& o : orbit) {
    std::vector<Elem> pulled(o.size());
    for (std::size_t i = 0; i < o.size(); ++i) pulled[i] = emb->pull(o[i]);
    if (best.empty() || pulled < best) best = std::move(pulled);
  }
  return {Ke, std::move(best), e};
}

inline MPoly base_change(const MPoly& f, const FieldDesc& K) {
  if (f.field() == K) return f;
  return f.base_change(*embedding(f.field(), K));
}

/// The polynomial in one variable obtained by fixing all but `var`.
inline UPoly restrict_line(const MPoly& fK, const std::vector<Elem>& pt, int var) {
  const FieldDesc& K = fK.field();
  std::vector<Elem> c;
  for (const auto& [m, a] : fK.terms()) {
    Elem t = a;
    for (int i = 0; i < fK.nvars(); ++i)
      if (i != var && m[i] != 0) t = K.mul(t, K.pow(pt[i], static_cast<std::uint64_t>(m[i])));
    if (static_cast<int>(c.size()) <= m[var]) c.resize(m[var] + 1, 0);
    c[m[var]] = K.add(c[m[var]], t);
  }
  return UPoly(K, c);
}

/// Stratum layout: free coordinates, fixed coordinates.
struct Stratum {
  std::vector<int> free_vars;  // affine coordinates (0, 1 or 2 of them)
  std::vector<std::pair<int, Elem>> fixed;
};

inline std::vector<Stratum> strata(Model m) {
  if (m == Model::P2)
    return {{{0, 1}, {{2, 1}}}, {{0}, {{1, 1}, {2, 0}}}, {{}, {{0, 1}, {1, 0}, {2, 0}}}};
  return {{{1, 3}, {{0, 1}, {2, 1}}},
          {{1}, {{0, 1}, {2, 0}, {3, 1}}},
          {{3}, {{0, 0}, {1, 1}, {2, 1}}},
          {{}, {{0, 0}, {1, 1}, {2, 0}, {3, 1}}}};
}

inline std::vector<Elem> stratum_point(const Surface& S, const Stratum& st, const std::vector<Elem>& free) {
  std::vector<Elem> c(static_cast<std::size_t>(S.nvars()), 0);
  for (auto [i, v] : st.fixed) c[i] = v;
  for (std::size_t k = 0; k < st.free_vars.size(); ++k) c[st.free_vars[k]] = free[k];
  return c;
}

/// Points of a univariate stratum where all the given polynomials vanish.
inline void univariate_points(const Surface& S, const Stratum& st, const std::vector<MPoly>& polys, int max_degree,
                              std::set<std::pair<int, std::vector<Elem>>>& seen, std::vector<ClosedPoint>& out) {
  const FieldDesc& F = S.base;
  const int var = st.free_vars[0];
  UPoly h(F);
  for (const auto& f : polys) h = upoly_gcd(h, restrict_line(f, stratum_point(S, st, {0}), var));
  auto add = [&](const FieldDesc& K, Elem a) {
    std::vector<Elem> c = stratum_point(S, st, {a});
    ClosedPoint x = closed_point_from(S, K, c);
    if (x.degree <= max_degree && seen.insert({x.degree, x.coords}).second) out.push_back(std::move(x));
  };
  if (h.is_zero()) {
    for (int e = 1; e <= max_degree; ++e) {
      const FieldDesc K = field_extension(F, e);
      for (Elem a = 0; a < K.order(); ++a) add(K, a);
    }
    return;
  }
  if (h.degree() <= 0) return;
  for (const auto& fc : poly_factor(h)) {
    const int e = fc.poly.degree();
    if (e > max_degree) continue;
    const FieldDesc K = field_extension(F, e);
    const UPoly hk(K, [&] {
      auto emb = embedding(F, K);
      std::vector<Elem> c;
      for (Elem v : fc.poly.coeffs()) c.push_back(emb->map(v));
      return c;
    }());
    auto roots = poly_roots(hk);
    if (!roots.empty()) add(K, roots.front());
  }
}

inline void isolated_point(const Surface& S, const Stratum& st, const std::vector<MPoly>& polys,
                           std::set<std::pair<int, std::vector<Elem>>>& seen, std::vector<ClosedPoint>& out) {
  const std::vector<Elem> c = stratum_point(S, st, {});
  for (const auto& f : polys)
    if (f.eval(c) != 0) return;
  ClosedPoint x = closed_point_from(S, S.base, c);
  if (seen.insert({x.degree, x.coords}).second) out.push_back(std::move(x));
}

inline UPoly embed_poly(const UPoly& f, const FieldDesc& K) {
  if (f.field() == K) return f;
  auto emb = embedding(f.field(), K);
  std::vector<Elem> c;
  for (Elem v : f.coeffs()) c.push_back(emb->map(v));
  return UPoly(K, c);
}

/// Coefficients of f(x, y) in the affine stratum as a polynomial in y over F[x].
inline std::vector<UPoly> as_poly_in_y(const MPoly& f, int xv, int yv, const std::vector<std::pair<int, Elem>>& fixed) {
  const FieldDesc& F = f.field();
  std::vector<UPoly> out;
  for (const auto& [m, a] : f.terms()) {
    bool zero = false;
    for (auto [i, v] : fixed)
      if (v == 0 && m[i] > 0) zero = true;
    if (zero) continue;
    const int dy = m[yv], dx = m[xv];
    if (static_cast<int>(out.size()) <= dy) out.resize(dy + 1, UPoly(F));
    std::vector<Elem> c(dx + 1, 0);
    c[dx] = a;
    out[dy] = out[dy] + UPoly(F, c);
  }
  return out;
}

}  // namespace detail

/// All closed points of degree <= max_degree on the curve, one per Galois orbit.
inline std::vector<ClosedPoint> points_on_curve(const Surface& S, const Curve& D, int max_degree) {
  if (max_degree < 1) throw error("max_degree must be at least 1");
  std::vector<ClosedPoint> out;
  std::set<std::pair<int, std::vector<Elem>>> seen;
  const auto strata = detail::strata(S.model);
  // affine stratum: scan x over F_{q^e}, solve for y
  {
    const auto& st = strata[0];
    for (int e = 1; e <= max_degree; ++e) {
      const FieldDesc K = field_extension(S.base, e);
      const MPoly fK = detail::base_change(D.poly, K);
      for (Elem a = 0; a < K.order(); ++a) {
        std::vector<Elem> pt = detail::stratum_point(S, st, {a, 0});
        UPoly h = detail::restrict_line(fK, pt, st.free_vars[1]);
        std::vector<Elem> ys;
        if (h.is_zero()) {
          for (Elem b = 0; b < K.order(); ++b) ys.push_back(b);
        } else {
          ys = poly_roots(h);
        }
        for (Elem b : ys) {
          ClosedPoint x = detail::closed_point_from(S, K, detail::stratum_point(S, st, {a, b}));
          if (x.degree <= max_degree && seen.insert({x.degree, x.coords}).second) out.push_back(std::move(x));
        }
      }
    }
  }
  for (std::size_t s = 1; s < strata.size(); ++s) {
    if (strata[s].free_vars.size() == 1)
      detail::univariate_points(S, strata[s], {D.poly}, max_degree, seen, out);
    else
      detail::isolated_point(S, strata[s], {D.poly}, seen, out);
  }
  std::sort(out.begin(), out.end(), [&](const ClosedPoint& a, const ClosedPoint& b) { return point_less(S.model, a, b); });
  return out;
}

/// True iff every coordinate polynomial of the curve vanishes at the point.
inline bool point_on(const Curve& D, const ClosedPoint& x) {
  return detail::base_change(D.poly, x.field).eval(x.coords) == 0;
}

/// Closed points on both curves, via resultants and factorization.
inline std::vector<ClosedPoint> intersection_support(const Surface& S, const Curve& C, const Curve& H) {
  if (C == H) throw error("intersection_support: curves share a component");
  std::vector<ClosedPoint> out;
  std::set<std::pair<int, std::vector<Elem>>> seen;
  const auto strata = detail::strata(S.model);
  const FieldDesc& F = S.base;
  {
    const auto& st = strata[0];
    const int xv = st.free_vars[0], yv = st.free_vars[1];
    auto A = detail::as_poly_in_y(C.poly, xv, yv, st.fixed);
    auto B = detail::as_poly_in_y(H.poly, xv, yv, st.fixed);
    if (A.empty() || B.empty()) throw error("intersection_support: curve vanishes on the affine chart");
    UPoly R = bivariate_resultant(A, B, F);
    if (R.is_zero()) throw error("intersection_support: curves share a component");
    if (R.degree() > 0) {
      for (const auto& fc : poly_factor(R)) {
        const FieldDesc K1 = field_extension(F, fc.poly.degree());
        const Elem alpha = poly_roots(detail::embed_poly(fc.poly, K1)).front();
        const MPoly c1 = detail::base_change(C.poly, K1), h1 = detail::base_change(H.poly, K1);
        std::vector<Elem> pt = detail::stratum_point(S, st, {alpha, 0});
        UPoly g = upoly_gcd(detail::restrict_line(c1, pt, yv), detail::restrict_line(h1, pt, yv));
        if (g.is_zero()) throw error("intersection_support: curves share a component");
        if (g.degree() <= 0) continue;
        for (const auto& gc : poly_factor(g)) {
          const FieldDesc K2 = field_extension(F, fc.poly.degree() * gc.poly.degree());
          const Elem beta = poly_roots(detail::embed_poly(gc.poly, K2)).front();
          const Elem alpha2 = embedding(K1, K2)->map(alpha);
          ClosedPoint x = detail::closed_point_from(S, K2, detail::stratum_point(S, st, {alpha2, beta}));
          if (seen.insert({x.degree, x.coords}).second) out.push_back(std::move(x));
        }
      }
    }
  }
  const int huge = 1 << 20;
  for (std::size_t s = 1; s < strata.size(); ++s) {
    if (strata[s].free_vars.size() == 1) {
      // a common vanishing of a whole line would be a shared component
      UPoly h(F);
      for (const auto* f : {&C.poly, &H.poly})
        h = upoly_gcd(h, detail::restrict_line(*f, detail::stratum_point(S, strata[s], {0}), strata[s].free_vars[0]));
      if (h.is_zero()) throw error("intersection_support: curves share a component");
      detail::univariate_points(S, strata[s], {C.poly, H.poly}, huge, seen, out);
    } else {
      detail::isolated_point(S, strata[s], {C.poly, H.poly}, seen, out);
    }
  }
  std::sort(out.begin(), out.end(), [&](const ClosedPoint& a, const ClosedPoint& b) { return point_less(S.model, a, b); });
  return out;
}

/// Quotient of two forms of equal class, kept with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(const Surface& S, MPoly num, MPoly den) : model_(S.model), num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw error("rational function with zero denominator");
    if (num_.is_zero()) throw error("rational function must be nonzero");
    if (!detail::is_form(S, num_) || !detail::is_form(S, den_)) throw error("numerator and denominator must be forms");
    if (!(detail::class_of_poly(S, num_) == detail::class_of_poly(S, den_)))
      throw error("numerator and denominator have different classes");
    reduce(S);
  }
  static RationalFunction constant(const Surface& S, Elem c) {
    return {S, MPoly::constant(S.base, S.nvars(), c), MPoly::constant(S.base, S.nvars(), 1)};
  }
  /// The product of curve equations with the given exponents, divided by a reference form.
  static RationalFunction from_curves(const Surface& S, const std::vector<std::pair<Curve, int>>& parts) {
    MPoly num = MPoly::constant(S.base, S.nvars(), 1), den = num;
    for (const auto& [c, m] : parts) {
      if (m > 0) num = num * c.poly.pow(m);
      if (m < 0) den = den * c.poly.pow(-m);
    }
    return {S, num, den};
  }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  Model model() const { return model_; }

  RationalFunction mul(const Surface& S, const RationalFunction& o) const { return {S, num_ * o.num_, den_ * o.den_}; }
  RationalFunction div(const Surface& S, const RationalFunction& o) const { return {S, num_ * o.den_, den_ * o.num_}; }
  RationalFunction inverse(const Surface& S) const { return {S, den_, num_}; }
  RationalFunction pow(const Surface& S, int e) const {
    if (e < 0) return inverse(S).pow(S, -e);
    return {S, num_.pow(e), den_.pow(e)};
  }
  /// Sum; throws if the sum is zero.
  RationalFunction add(const Surface& S, const RationalFunction& o) const {
    return {S, num_ * o.den_ + o.num_ * den_, den_ * o.den_};
  }
  RationalFunction scale(const Surface& S, Elem c) const { return {S, num_.scale(c), den_}; }

  bool operator==(const RationalFunction& o) const { return num_ * o.den_ == o.num_ * den_; }

  std::string to_string(const Surface& S) const {
    return "(" + num_.to_string(S.names()) + ")/(" + den_.to_string(S.names()) + ")";
  }

 private:
  void reduce(const Surface& S) {
    // cancel shared monomial content and exact divisibility of either side
    Mono common{};
    bool first = true;
    for (const auto* f : {&num_, &den_})
      for (const auto& [m, c] : f->terms()) {
        for (int i = 0; i < 4; ++i) common[i] = first ? m[i] : std::min(common[i], m[i]);
        first = false;
      }
    if (common != Mono{0, 0, 0, 0}) {
      const MPoly g = MPoly::monomial(S.base, S.nvars(), common);
      num_ = num_.divide(g).second;
      den_ = den_.divide(g).second;
    }
    if (auto [ok, q] = num_.divide(den_); ok) {
      num_ = q;
      den_ = MPoly::constant(S.base, S.nvars(), 1);
    } else if (auto [ok2, q2] = den_.divide(num_); ok2) {
      den_ = q2;
      num_ = MPoly::constant(S.base, S.nvars(), 1);
    }
    const Elem lc = den_.leading().second;
    if (lc != 1) {
      const Elem inv = S.base.inv(lc);
      num_ = num_.scale(inv);
      den_ = den_.scale(inv);
    }
  }

  Model model_ = Model::P2;
  MPoly num_, den_;
};

/// Multiplicity of an irreducible form in a polynomial.
inline int poly_multiplicity(const MPoly& f, const MPoly& g) {
  int m = 0;
  MPoly r = f;
  while (true) {
    auto [ok, q] = r.divide(g);
    if (!ok) return m;
    ++m;
    r = q;
  }
}

/// Order of vanishing of f along D, by counting factors.
inline int ord_on_curve(const RationalFunction& f, const Curve& D) {
  return poly_multiplicity(f.num(), D.poly) - poly_multiplicity(f.den(), D.poly);
}

/// Formal sum of curves; components sorted, multiplicities nonzero.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::vector<std::pair<Curve, int>> parts) {
    for (auto& [c, m] : parts) add(c, m);
  }
  static Divisor of_curve(const Curve& c, int m = 1) { return Divisor({{c, m}}); }

  const std::vector<std::pair<Curve, int>>& components() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  int multiplicity(const Curve& c) const {
    for (const auto& [d, m] : parts_)
      if (d == c) return m;
    return 0;
  }

  void add(const Curve& c, int m) {
    if (m == 0) return;
    auto it = std::lower_bound(parts_.begin(), parts_.end(), c,
                               [](const std::pair<Curve, int>& p, const Curve& x) { return p.first < x; });
    if (it != parts_.end() && it->first == c) {
      it->second += m;
      if (it->second == 0) parts_.erase(it);
    } else {
      parts_.insert(it, {c, m});
    }
  }

  Divisor operator+(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [c, m] : o.parts_) r.add(c, m);
    return r;
  }
  Divisor operator*(int k) const {
    Divisor r;
    for (const auto& [c, m] : parts_) r.add(c, m * k);
    return r;
  }
  Divisor operator-() const { return *this * -1; }
  Divisor operator-(const Divisor& o) const { return *this + (-o); }
  bool operator==(const Divisor& o) const { return parts_ == o.parts_; }

  Divisor positive_part() const {
    Divisor r;
    for (const auto& [c, m] : parts_)
      if (m > 0) r.add(c, m);
    return r;
  }
  Divisor negative_part() const {
    Divisor r;
    for (const auto& [c, m] : parts_)
      if (m < 0) r.add(c, -m);
    return r;
  }
  bool effective() const {
    return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p.second > 0; });
  }

  std::string to_string(const Surface& S) const {
    if (parts_.empty()) return "0";
    std::string s;
    for (const auto& [c, m] : parts_) {
      if (!s.empty()) s += m > 0 ? " + " : " - ";
      else if (m < 0) s += "-";
      const int a = m > 0 ? m : -m;
      if (a != 1) s += std::to_string(a) + "*";
      s += "[" + (c.name.empty() ? curve_text(S, c) : c.name) + "]";
    }
    return s;
  }

 private:
  std::vector<std::pair<Curve, int>> parts_;
};

inline ClassVector divisor_class(const Surface& S, const Divisor& D) {
  ClassVector c = class_zero(S);
  for (const auto& [cv, m] : D.components()) c = c + curve_class(S, cv) * m;
  return c;
}

/// The principal divisor of f, by factoring numerator and denominator.
inline Divisor divisor_of_function(const Surface& S, const RationalFunction& f) {
  Divisor d;
  for (auto& [g, m] : factor_form(S, f.num()).factors) d.add(Curve{g, {}}, m);
  for (auto& [g, m] : factor_form(S, f.den()).factors) d.add(Curve{g, {}}, -m);
  return d;
}

}  // namespace rrsurf

#endif  // RRSURF_SURFACE_HPP
