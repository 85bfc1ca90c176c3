#ifndef RRSURF_COHOMOLOGY_HPP
#define RRSURF_COHOMOLOGY_HPP

// h^i of line bundles on the two model surfaces: closed forms, a Cech
// count over monomials, and the two duality identities checked directly.

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "rrsurf/flags.hpp"
#include "rrsurf/linalg.hpp"

namespace rrsurf {

struct CohomologyVector {
  std::int64_t h0 = 0, h1 = 0, h2 = 0;
  std::int64_t chi() const { return h0 - h1 + h2; }
  bool operator==(const CohomologyVector&) const = default;
  std::string to_string() const {
    return "(" + std::to_string(h0) + "," + std::to_string(h1) + "," + std::to_string(h2) + "; chi=" + std::to_string(chi()) + ")";
  }
};

namespace detail {

inline std::int64_t binom2(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

inline std::int64_t h0_p1(std::int64_t a) { return a >= 0 ? a + 1 : 0; }
inline std::int64_t h1_p1(std::int64_t a) { return a <= -2 ? -a - 1 : 0; }

}  // namespace detail

/// Closed forms: binomials on P^2, the Kunneth split on P^1 x P^1.
inline CohomologyVector h_vector(Model m, const ClassVector& c) {
  if (m == Model::P2) {
    const std::int64_t n = c.v[0];
    return {n >= 0 ? detail::binom2(n + 2) : 0, 0, n <= -3 ? detail::binom2(-n - 1) : 0};
  }
  const std::int64_t a = c.v[0], b = c.v[1];
  using detail::h0_p1, detail::h1_p1;
  return {h0_p1(a) * h0_p1(b), h0_p1(a) * h1_p1(b) + h1_p1(a) * h0_p1(b), h1_p1(a) * h1_p1(b)};
}

inline CohomologyVector h_vector(const Surface& S, const ClassVector& c) { return h_vector(S.model, c); }

namespace detail {

/// Cech cohomology of the standard cover restricted to one Laurent monomial.
/// `chart_vars[i]` lists the variables invertible on chart i; the monomial lives on
/// U_I exactly when its negative variables are invertible there.
inline std::vector<std::int64_t> cech_monomial(const FieldDesc& F, const std::vector<std::vector<int>>& chart_vars,
                                               const std::vector<int>& exps) {
  const int n = static_cast<int>(chart_vars.size());
  std::vector<std::vector<unsigned>> cells(static_cast<std::size_t>(n));
  for (unsigned I = 1; I < (1u << n); ++I) {
    std::vector<bool> inv(exps.size(), false);
    for (int i = 0; i < n; ++i)
      if (I >> i & 1)
        for (int v : chart_vars[i]) inv[v] = true;
    bool ok = true;
    for (std::size_t v = 0; v < exps.size(); ++v) ok &= exps[v] >= 0 || inv[v];
    if (ok) cells[std::popcount(I) - 1].push_back(I);
  }
  // rank of d^p : C^p -> C^{p+1}
  std::vector<std::int64_t> rk(static_cast<std::size_t>(n), 0);
  for (int p = 0; p + 1 < n; ++p) {
    const auto& src = cells[p];
    const auto& dst = cells[p + 1];
    if (src.empty() || dst.empty()) continue;
    Matrix A(F, dst.size(), src.size());
    for (std::size_t r = 0; r < dst.size(); ++r) {
      const unsigned J = dst[r];
      int k = 0;
      for (int j = 0; j < n; ++j) {
        if (!(J >> j & 1)) continue;
        const unsigned I = J & ~(1u << j);
        for (std::size_t c = 0; c < src.size(); ++c)
          if (src[c] == I) A(r, c) = k % 2 ? F.neg(1) : 1;
        ++k;
      }
    }
    rk[p] = static_cast<std::int64_t>(rank(A));
  }
  std::vector<std::int64_t> h(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p)
    h[p] = static_cast<std::int64_t>(cells[p].size()) - rk[p] - (p > 0 ? rk[p - 1] : 0);
  return h;
}

}  // namespace detail

/// h^i by summing the Cech complex over all Laurent monomials of the class with
/// exponents in [-B, B]; monomials outside the box give acyclic complexes.
inline CohomologyVector cech_h_vector(Model m, const ClassVector& c) {
  const FieldDesc F = field_make(2);
  CohomologyVector out;
  auto add = [&](const std::vector<std::int64_t>& h) {
    out.h0 += h[0];
    out.h1 += h.size() > 1 ? h[1] : 0;
    out.h2 += h.size() > 2 ? h[2] : 0;
  };
  if (m == Model::P2) {
    const int n = c.v[0], B = std::abs(n) + 3;
    const std::vector<std::vector<int>> charts{{0}, {1}, {2}};
    for (int a = -B; a <= B; ++a)
      for (int b = -B; b <= B; ++b) {
        const int e = n - a - b;
        if (e < -B || e > B) continue;
        add(detail::cech_monomial(F, charts, {a, b, e}));
      }
    return out;
  }
  const int a = c.v[0], b = c.v[1];
  const int Ba = std::abs(a) + 3, Bb = std::abs(b) + 3;
  const std::vector<std::vector<int>> charts{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  for (int a0 = -Ba; a0 <= Ba; ++a0)
    for (int b0 = -Bb; b0 <= Bb; ++b0) add(detail::cech_monomial(F, charts, {a0, a - a0, b0, b - b0}));
  return out;
}

/// h^0(C) - h^0(H) = h^2(w - C) - h^2(w - H).
inline bool serre_residual_check(Model m, const ClassVector& C, const ClassVector& H, const ClassVector& w) {
  return h_vector(m, C).h0 - h_vector(m, H).h0 == h_vector(m, w - C).h2 - h_vector(m, w - H).h2;
}

/// chi(S) = chi(w - S).
inline bool chi_symmetry_check(Model m, const ClassVector& S, const ClassVector& w) {
  return h_vector(m, S).chi() == h_vector(m, w - S).chi();
}

/// h^0 of an explicit divisor via its Riemann-Roch space; h^1, h^2 from the class.
inline CohomologyVector h_vector_of(const Surface& S, const Divisor& D) {
  CohomologyVector v = h_vector(S, divisor_class(S, D));
  const std::int64_t h0 = static_cast<std::int64_t>(rr_space(S, D).size());
  if (h0 != v.h0) throw error("h^0 of " + D.to_string(S) + " is " + std::to_string(h0) + ", class formula gives " + std::to_string(v.h0));
  return v;
}

/// All classes in the box [-r, r] (P^2) or [-r, r]^2 (P^1 x P^1).
inline std::vector<ClassVector> class_range(Model m, int r) {
  std::vector<ClassVector> out;
  if (m == Model::P2) {
    for (int n = -r; n <= r; ++n) out.push_back({{n}});
  } else {
    for (int a = -r; a <= r; ++a)
      for (int b = -r; b <= r; ++b) out.push_back({{a, b}});
  }
  return out;
}

}  // namespace rrsurf

#endif  // RRSURF_COHOMOLOGY_HPP
