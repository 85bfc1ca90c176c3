#ifndef RRSURF_UPOLY_HPP
#define RRSURF_UPOLY_HPP

// Univariate polynomials over a FieldDesc: Euclidean arithmetic,
// square-free / distinct-degree / equal-degree factorization, roots and
// resultants of bivariate polynomials (coefficients in F[x]).

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/fields.hpp"

namespace rrsurf {

/// Seed of the equal-degree splitting RNG. Each factorization call starts a
/// fresh generator with this seed, so factor lists are reproducible.
inline constexpr std::uint64_t kFactorSeed = 0x5eed0f2a11d5ULL;

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(FieldDesc f) : field_(std::move(f)) {}
  UPoly(FieldDesc f, std::vector<Elem> c) : field_(std::move(f)), c_(std::move(c)) { trim(); }

  static UPoly constant(const FieldDesc& f, Elem a) { return UPoly(f, {a}); }
  static UPoly x(const FieldDesc& f) { return UPoly(f, {0, 1}); }
  /// Polynomial with small integer coefficients, low degree first.
  static UPoly from_ints(const FieldDesc& f, const std::vector<std::int64_t>& c) {
    std::vector<Elem> v;
    for (auto n : c) v.push_back(f.from_int(n));
    return UPoly(f, std::move(v));
  }

  const FieldDesc& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }

  Elem eval(Elem a) const {
    Elem acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, a), c_[i]);
    return acc;
  }

  UPoly monic() const {
    if (c_.empty()) return *this;
    const Elem li = field_.inv(lead());
    UPoly r = *this;
    for (auto& v : r.c_) v = field_.mul(v, li);
    return r;
  }

  UPoly operator+(const UPoly& b) const {
    std::vector<Elem> r(std::max(c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_or(b).add(coeff(int(i)), b.coeff(int(i)));
    return UPoly(field_or(b), std::move(r));
  }
  UPoly operator-(const UPoly& b) const {
    std::vector<Elem> r(std::max(c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_or(b).sub(coeff(int(i)), b.coeff(int(i)));
    return UPoly(field_or(b), std::move(r));
  }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = field_.neg(v);
    return r;
  }
  UPoly operator*(const UPoly& b) const {
    if (c_.empty() || b.c_.empty()) return UPoly(field_or(b));
    const FieldDesc& f = field_or(b);
    std::vector<Elem> r(c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(c_[i], b.c_[j]));
    }
    return UPoly(f, std::move(r));
  }
  UPoly scale(Elem a) const {
    UPoly r = *this;
    for (auto& v : r.c_) v = field_.mul(v, a);
    r.trim();
    return r;
  }
  UPoly shift(int k) const {
    if (c_.empty()) return *this;
    std::vector<Elem> r(k, 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return UPoly(field_, std::move(r));
  }

  /// Quotient and remainder; throws on division by zero.
  std::pair<UPoly, UPoly> divmod(const UPoly& b) const {
    if (b.is_zero()) throw error("polynomial division by zero");
    const FieldDesc& f = field_or(b);
    std::vector<Elem> r = c_;
    if (r.size() < b.c_.size()) return {UPoly(f), *this};
    std::vector<Elem> q(r.size() - b.c_.size() + 1, 0);
    const Elem li = f.inv(b.lead());
    for (std::size_t k = r.size(); k-- >= b.c_.size();) {
      const Elem c = f.mul(r[k], li);
      const std::size_t s = k - (b.c_.size() - 1);
      q[s] = c;
      if (c != 0)
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[s + i] = f.sub(r[s + i], f.mul(c, b.c_[i]));
      if (k == 0) break;
    }
    return {UPoly(f, std::move(q)), UPoly(f, std::move(r))};
  }
  UPoly operator/(const UPoly& b) const { return divmod(b).first; }
  UPoly operator%(const UPoly& b) const { return divmod(b).second; }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly(field_);
    std::vector<Elem> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = field_.mul(field_.from_int(std::int64_t(i)), c_[i]);
    return UPoly(field_, std::move(r));
  }

  bool operator==(const UPoly& b) const { return c_ == b.c_; }
  bool operator!=(const UPoly& b) const { return !(*this == b); }
  /// Degree first, then coefficients low to high.
  bool operator<(const UPoly& b) const {
    if (c_.size() != b.c_.size()) return c_.size() < b.c_.size();
    return c_ < b.c_;
  }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      const std::string cs = field_.format(c_[i]);
      const bool paren = cs.find('+') != std::string::npos;
      if (i == 0) {
        out += cs;
        continue;
      }
      if (c_[i] != 1) out += (paren ? "(" + cs + ")" : cs) + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  const FieldDesc& field_or(const UPoly& b) const { return field_.valid() ? field_ : b.field_; }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  FieldDesc field_;
  std::vector<Elem> c_;
};

inline UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline UPoly upoly_powmod(UPoly base, std::uint64_t e, const UPoly& m) {
  UPoly r = UPoly::constant(m.field(), 1) % m;
  base = base % m;
  while (e > 0) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

/// One irreducible factor with its multiplicity.
struct Factor {
  UPoly poly;
  int multiplicity = 1;
};

namespace detail {

// p-th root of a polynomial whose derivative vanishes.
inline UPoly upoly_pth_root(const UPoly& f) {
  const FieldDesc& F = f.field();
  const int p = F.p();
  std::uint64_t root_exp = 1;  // a^{1/p} = a^{q/p}
  for (int i = 1; i < F.degree(); ++i) root_exp *= static_cast<std::uint64_t>(p);
  std::vector<Elem> r;
  for (int i = 0; i <= f.degree(); i += p) r.push_back(F.pow(f.coeff(i), root_exp));
  return UPoly(F, std::move(r));
}

inline std::vector<Factor> squarefree(const UPoly& f) {
  std::vector<Factor> out;
  const FieldDesc& F = f.field();
  UPoly c = upoly_gcd(f, f.derivative());
  UPoly w = f.monic() / c;
  int i = 1;
  while (!w.is_one() && w.degree() > 0) {
    UPoly y = upoly_gcd(w, c);
    UPoly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    UPoly root = upoly_pth_root(c.monic());
    for (auto& fr : squarefree(root)) out.push_back({fr.poly, fr.multiplicity * F.p()});
  }
  return out;
}

inline std::vector<std::pair<UPoly, int>> distinct_degree(UPoly f) {
  std::vector<std::pair<UPoly, int>> out;
  const FieldDesc& F = f.field();
  const UPoly x = UPoly::x(F);
  UPoly h = x % f;
  int i = 1;
  while (f.degree() >= 2 * i) {
    h = upoly_powmod(h, F.order(), f);
    UPoly g = upoly_gcd(f, h - x);
    if (g.degree() > 0) {
      out.push_back({g, i});
      f = f / g;
      h = h % f;
    }
    ++i;
  }
  if (f.degree() > 0) out.push_back({f.monic(), f.degree()});
  return out;
}

inline void equal_degree(const UPoly& f, int d, std::mt19937_64& rng, std::vector<UPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const FieldDesc& F = f.field();
  const std::uint64_t q = F.order();
  while (true) {
    std::vector<Elem> c(f.degree());
    for (auto& v : c) v = static_cast<Elem>(rng() % q);
    UPoly a(F, c);
    if (a.degree() < 1) continue;
    UPoly b(F);
    if (q % 2 == 1) {
      // a^{(q^d - 1)/2} = prod_j (a^{(q-1)/2})^{q^j}
      UPoly base = upoly_powmod(a, (q - 1) / 2, f);
      UPoly acc = base;
      UPoly cur = base;
      for (int j = 1; j < d; ++j) {
        cur = upoly_powmod(cur, q, f);
        acc = (acc * cur) % f;
      }
      b = acc - UPoly::constant(F, 1);
    } else {
      // trace map a + a^2 + ... + a^{2^{m d - 1}}, q = 2^m
      int m = 0;
      for (std::uint64_t t = q; t > 1; t >>= 1) ++m;
      UPoly cur = a % f;
      UPoly acc = cur;
      for (int j = 1; j < m * d; ++j) {
        cur = (cur * cur) % f;
        acc = acc + cur;
      }
      b = acc;
    }
    UPoly g = upoly_gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Complete factorization into monic irreducibles, sorted by degree then
/// coefficients. The leading unit of f is dropped.
inline std::vector<Factor> poly_factor(const UPoly& f) {
  if (f.is_zero()) throw error("poly_factor: zero polynomial");
  std::vector<Factor> out;
  if (f.degree() == 0) return out;
  std::mt19937_64 rng(kFactorSeed);
  for (const auto& sf : detail::squarefree(f)) {
    for (const auto& [part, d] : detail::distinct_degree(sf.poly)) {
      std::vector<UPoly> pieces;
      detail::equal_degree(part, d, rng, pieces);
      for (auto& pc : pieces) out.push_back({pc, sf.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    if (a.poly.coeffs() != b.poly.coeffs()) return a.poly.coeffs() < b.poly.coeffs();
    return a.multiplicity < b.multiplicity;
  });
  // merge identical factors coming from different square-free layers
  std::vector<Factor> merged;
  for (auto& fc : out) {
    if (!merged.empty() && merged.back().poly == fc.poly)
      merged.back().multiplicity += fc.multiplicity;
    else
      merged.push_back(fc);
  }
  return merged;
}

inline bool is_irreducible(const UPoly& f) {
  if (f.degree() < 1) return false;
  auto fs = poly_factor(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

/// Distinct roots of f in its coefficient field, ascending packed order.
inline std::vector<Elem> poly_roots(const UPoly& f) {
  if (f.is_zero()) throw error("poly_roots: zero polynomial");
  std::vector<Elem> out;
  if (f.degree() < 1) return out;
  // restrict to the split part gcd(f, x^q - x) before factoring
  const FieldDesc& F = f.field();
  UPoly xq = upoly_powmod(UPoly::x(F), F.order(), f.monic());
  UPoly g = upoly_gcd(f, xq - UPoly::x(F));
  if (g.degree() < 1) return out;
  for (const auto& fc : poly_factor(g))
    if (fc.poly.degree() == 1) out.push_back(F.neg(fc.poly.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Determinant of a square matrix over F[x] by Bareiss fraction-free elimination.
inline UPoly upoly_det(std::vector<std::vector<UPoly>> m, const FieldDesc& F) {
  const std::size_t n = m.size();
  if (n == 0) return UPoly::constant(F, 1);
  bool negate = false;
  UPoly prev = UPoly::constant(F, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return UPoly(F);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        UPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto [quo, rem] = num.divmod(prev);
        if (!rem.is_zero()) throw error("internal: Bareiss division not exact");
        m[i][j] = std::move(quo);
      }
      m[i][k] = UPoly(F);
    }
    prev = m[k][k];
  }
  UPoly d = m[n - 1][n - 1];
  return negate ? -d : d;
}

/// Resultant in y of A(x, y) = sum A[i](x) y^i and B likewise, taking the
/// vector lengths minus one as the formal y-degrees.
inline UPoly bivariate_resultant(const std::vector<UPoly>& A, const std::vector<UPoly>& B, const FieldDesc& F) {
  const int m = static_cast<int>(A.size()) - 1;
  const int n = static_cast<int>(B.size()) - 1;
  if (m < 0 || n < 0) throw error("resultant of empty polynomial");
  const int N = m + n;
  if (N == 0) return UPoly::constant(F, 1);
  std::vector<std::vector<UPoly>> S(N, std::vector<UPoly>(N, UPoly(F)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) S[r][r + i] = A[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) S[n + r][r + i] = B[n - i];
  return upoly_det(std::move(S), F);
}

}  // namespace rrsurf

#endif  // RRSURF_UPOLY_HPP
