#ifndef RRSURF_MPOLY_HPP
#define RRSURF_MPOLY_HPP

// Sparse multivariate polynomials in up to four variables over a FieldDesc.
// Terms are kept in a std::map keyed by exponent arrays, so iteration is
// lexicographic with variable 0 most significant; the leading term for
// division is the last entry.

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/fields.hpp"

namespace rrsurf {

using Mono = std::array<int, 4>;

class MPoly {
 public:
  using Terms = std::map<Mono, Elem>;

  MPoly() = default;
  MPoly(FieldDesc f, int nvars) : field_(std::move(f)), nvars_(nvars) {}

  static MPoly constant(const FieldDesc& f, int nvars, Elem c) {
    MPoly r(f, nvars);
    if (c != 0) r.terms_[Mono{0, 0, 0, 0}] = c;
    return r;
  }
  static MPoly var(const FieldDesc& f, int nvars, int i) {
    MPoly r(f, nvars);
    Mono m{0, 0, 0, 0};
    m[i] = 1;
    r.terms_[m] = 1;
    return r;
  }
  static MPoly monomial(const FieldDesc& f, int nvars, const Mono& m, Elem c = 1) {
    MPoly r(f, nvars);
    if (c != 0) r.terms_[m] = c;
    return r;
  }

  const FieldDesc& field() const { return field_; }
  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Elem coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }
  void set(const Mono& m, Elem c) {
    if (c == 0)
      terms_.erase(m);
    else
      terms_[m] = c;
  }
  void add_term(const Mono& m, Elem c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second = field_.add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::pair<const Mono, Elem>& leading() const { return *terms_.rbegin(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2] + m[3]);
    return d;
  }
  /// Degree in the variable block [lo, hi).
  int block_degree(int lo, int hi) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int i = lo; i < hi; ++i) s += m[i];
      d = std::max(d, s);
    }
    return d;
  }
  bool block_homogeneous(int lo, int hi) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int i = lo; i < hi; ++i) s += m[i];
      if (d >= 0 && s != d) return false;
      d = s;
    }
    return true;
  }
  int degree_in(int v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;
  }

  MPoly operator+(const MPoly& b) const {
    MPoly r = *this;
    if (!r.field_.valid()) r = MPoly(b.field_, b.nvars_);
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c = field_.neg(c);
    return r;
  }
  MPoly operator-(const MPoly& b) const { return *this + (-b); }
  MPoly operator*(const MPoly& b) const {
    MPoly r(field_, nvars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]};
        r.add_term(m, field_.mul(ca, cb));
      }
    return r;
  }
  MPoly scale(Elem a) const {
    MPoly r(field_, nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, field_.mul(c, a));
    return r;
  }
  MPoly pow(int e) const {
    MPoly r = constant(field_, nvars_, 1), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  MPoly derivative(int v) const {
    MPoly r(field_, nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[v] == 0) continue;
      Mono n = m;
      n[v] -= 1;
      r.add_term(n, field_.mul(c, field_.from_int(m[v])));
    }
    return r;
  }

  /// Scale so the leading coefficient is 1.
  MPoly monic() const {
    if (terms_.empty()) return *this;
    return scale(field_.inv(leading().second));
  }

  /// Coefficients pushed through a field embedding.
  MPoly base_change(const Embedding& e) const {
    MPoly r(e.big(), nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, e.map(c));
    return r;
  }

  /// Value at a point with coordinates in the same field.
  Elem eval(const std::vector<Elem>& pt) const {
    Elem acc = 0;
    for (const auto& [m, c] : terms_) {
      Elem t = c;
      for (int i = 0; i < nvars_; ++i)
        if (m[i] != 0) t = field_.mul(t, field_.pow(pt[i], static_cast<std::uint64_t>(m[i])));
      acc = field_.add(acc, t);
    }
    return acc;
  }

  /// Substitute polynomials for variables (all in the same target ring).
  MPoly compose(const std::vector<MPoly>& images) const {
    const int tv = images.front().nvars();
    MPoly r(field_, tv);
    for (const auto& [m, c] : terms_) {
      MPoly t = constant(field_, tv, c);
      for (int i = 0; i < nvars_; ++i)
        if (m[i] != 0) t = t * images[i].pow(m[i]);
      r = r + t;
    }
    return r;
  }

  /// Remainder on division by a single polynomial (lex order). Linear in *this.
  MPoly remainder(const MPoly& g) const {
    if (g.is_zero()) throw error("MPoly division by zero");
    const auto& [lm, lc] = g.leading();
    const Elem lci = field_.inv(lc);
    MPoly rem(field_, nvars_), f = *this;
    while (!f.is_zero()) {
      const auto [fm, fc] = f.leading();
      bool divisible = true;
      Mono q{};
      for (int i = 0; i < 4; ++i) {
        q[i] = fm[i] - lm[i];
        if (q[i] < 0) divisible = false;
      }
      if (divisible) {
        f = f - monomial(field_, nvars_, q, field_.mul(fc, lci)) * g;
      } else {
        rem.add_term(fm, fc);
        f.terms_.erase(fm);
      }
    }
    return rem;
  }

  /// Exact quotient if g divides *this.
  std::pair<bool, MPoly> divide(const MPoly& g) const {
    const auto& [lm, lc] = g.leading();
    const Elem lci = field_.inv(lc);
    MPoly quo(field_, nvars_), f = *this;
    while (!f.is_zero()) {
      const auto [fm, fc] = f.leading();
      Mono q{};
      for (int i = 0; i < 4; ++i) {
        q[i] = fm[i] - lm[i];
        if (q[i] < 0) return {false, MPoly(field_, nvars_)};
      }
      MPoly t = monomial(field_, nvars_, q, field_.mul(fc, lci));
      quo = quo + t;
      f = f - t * g;
    }
    return {true, quo};
  }

  bool operator==(const MPoly& b) const { return terms_ == b.terms_; }
  bool operator!=(const MPoly& b) const { return !(*this == b); }
  bool operator<(const MPoly& b) const { return terms_ < b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string mono;
      for (int i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        mono += names[i];
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      std::string cs = field_.format(c);
      if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
      std::string term = mono.empty() ? cs : (c == 1 ? mono : cs + (mono.empty() ? "" : "*") + mono);
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out;
  }

 private:
  FieldDesc field_;
  int nvars_ = 0;
  Terms terms_;
};

}  // namespace rrsurf

#endif  // RRSURF_MPOLY_HPP
