#ifndef RRSURF_SERIES_HPP
#define RRSURF_SERIES_HPP

// Truncated Laurent series in one variable (k((u))) and iterated series in
// two variables (k((u))((t))), the computational model of a
// two-dimensional local field attached to a flag.
//
// Precision model. A LaurentSeries1 knows every coefficient below `prec`;
// exponents below `lo` are known to vanish and `prec == kExact` means the
// series is an exact finite sum. Each row of a LaurentSeries2 carries its
// own u-precision; rows between the stored ones and `t_prec` are exact
// zeros. Every operation derives the tightest window it can prove and
// never pads unknown terms with zeros.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/fields.hpp"

namespace rrsurf {

inline constexpr int kExact = std::numeric_limits<int>::max() / 4;

/// Truncation used when an exact input has an infinite expansion
/// (inverses of non-monomials). Both values are relative to the valuation.
struct Precision {
  int u = 16;
  int t = 16;
  Precision doubled() const { return {2 * u, 2 * t}; }
};

namespace detail {
inline int padd(int a, int b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}
}  // namespace detail

class LaurentSeries1 {
 public:
  LaurentSeries1() = default;
  explicit LaurentSeries1(FieldDesc f) : field_(std::move(f)) {}
  /// Coefficients c[i] of u^{lo+i}, known below prec.
  LaurentSeries1(FieldDesc f, int lo, std::vector<Elem> c, int prec = kExact)
      : field_(std::move(f)), lo_(lo), prec_(prec), c_(std::move(c)) {
    normalize();
  }

  static LaurentSeries1 zero(const FieldDesc& f) { return LaurentSeries1(f); }
  /// O(u^prec): nothing known except that lower exponents vanish.
  static LaurentSeries1 unknown(const FieldDesc& f, int prec) { return LaurentSeries1(f, prec, {}, prec); }
  static LaurentSeries1 monomial(const FieldDesc& f, int e, Elem c = 1) { return LaurentSeries1(f, e, {c}); }

  const FieldDesc& field() const { return field_; }
  int lo() const { return lo_; }
  int prec() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_exact_zero() const { return c_.empty() && is_exact(); }
  /// No coefficient is known to be nonzero.
  bool is_zero_in_window() const { return c_.empty(); }
  const std::vector<Elem>& stored() const { return c_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()); }  // one past last stored

  /// Lower bound for the valuation: exact when a nonzero term is known.
  int val_lower() const { return c_.empty() ? prec_ : lo_; }

  int valuation() const {
    if (c_.empty()) throw insufficient_precision("u", "series is zero to O(u^" + prec_str() + ")");
    return lo_;
  }

  Elem coeff(int e) const {
    if (e >= prec_) throw insufficient_precision("u", "coefficient of u^" + std::to_string(e) + " beyond O(u^" + prec_str() + ")");
    if (e < lo_ || e >= hi()) return 0;
    return c_[static_cast<std::size_t>(e - lo_)];
  }

  LaurentSeries1 operator+(const LaurentSeries1& b) const {
    const FieldDesc& F = pick(b);
    const int prec = std::min(prec_, b.prec_);
    if (c_.empty() && b.c_.empty()) return LaurentSeries1(F, prec >= kExact ? 0 : prec, {}, prec);
    int lo = std::min(c_.empty() ? b.lo_ : lo_, b.c_.empty() ? lo_ : b.lo_);
    int hi = std::max(c_.empty() ? lo : this->hi(), b.c_.empty() ? lo : b.hi());
    hi = std::min(hi, prec);
    if (hi <= lo) return LaurentSeries1(F, prec, {}, prec);
    std::vector<Elem> r(static_cast<std::size_t>(hi - lo), 0);
    for (int e = lo; e < hi; ++e) r[e - lo] = F.add(raw(e), b.raw(e));
    return LaurentSeries1(F, lo, std::move(r), prec);
  }
  LaurentSeries1 operator-() const {
    LaurentSeries1 r = *this;
    for (auto& v : r.c_) v = field_.neg(v);
    return r;
  }
  LaurentSeries1 operator-(const LaurentSeries1& b) const { return *this + (-b); }

  LaurentSeries1 operator*(const LaurentSeries1& b) const {
    const FieldDesc& F = pick(b);
    if (is_exact_zero() || b.is_exact_zero()) return zero(F);
    const int prec = std::min(detail::padd(prec_, b.val_lower()), detail::padd(b.prec_, val_lower()));
    if (c_.empty() || b.c_.empty()) return LaurentSeries1(F, prec, {}, prec);
    const int lo = lo_ + b.lo_;
    int hi = std::min(this->hi() + b.hi() - 1, prec);
    if (hi <= lo) return LaurentSeries1(F, prec, {}, prec);
    std::vector<Elem> r(static_cast<std::size_t>(hi - lo), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size() && int(i + j) < hi - lo; ++j)
        r[i + j] = F.add(r[i + j], F.mul(c_[i], b.c_[j]));
    }
    return LaurentSeries1(F, lo, std::move(r), prec);
  }

  LaurentSeries1 scale(Elem a) const {
    if (a == 0) return zero(field_);
    LaurentSeries1 r = *this;
    for (auto& v : r.c_) v = field_.mul(v, a);
    return r;
  }
  LaurentSeries1 shift(int k) const {
    LaurentSeries1 r = *this;
    if (!is_exact_zero()) r.lo_ += k;
    if (!r.is_exact()) r.prec_ += k;
    return r;
  }

  /// Multiplicative inverse; `cap` bounds the relative precision when the input is exact.
  LaurentSeries1 inverse(int cap = Precision{}.u) const {
    if (c_.empty()) throw insufficient_precision("u", "cannot invert a series that is zero to O(u^" + prec_str() + ")");
    const FieldDesc& F = field_;
    const int w = lo_;
    const Elem a0i = F.inv(c_[0]);
    if (is_exact() && c_.size() == 1) return monomial(F, -w, a0i);
    const int n = is_exact() ? cap : prec_ - w;
    std::vector<Elem> b(static_cast<std::size_t>(n), 0);
    if (n > 0) b[0] = a0i;
    for (int k = 1; k < n; ++k) {
      Elem s = 0;
      for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j) s = F.add(s, F.mul(c_[j], b[k - j]));
      b[k] = F.neg(F.mul(a0i, s));
    }
    return LaurentSeries1(F, -w, std::move(b), -w + n);
  }

  LaurentSeries1 derivative() const {
    const FieldDesc& F = field_;
    std::vector<Elem> r;
    int lo = lo_ - 1;
    for (std::size_t i = 0; i < c_.size(); ++i) r.push_back(F.mul(F.from_int(lo_ + int(i)), c_[i]));
    const int prec = is_exact() ? kExact : prec_ - 1;
    return LaurentSeries1(F, lo, std::move(r), prec);
  }

  /// Drop everything at or above exponent `p`.
  LaurentSeries1 truncate(int p) const {
    if (p >= prec_) return *this;
    std::vector<Elem> r;
    for (int e = lo_; e < std::min(hi(), p); ++e) r.push_back(raw(e));
    return LaurentSeries1(field_, std::min(lo_, p), std::move(r), p);
  }

  /// Equal as far as both windows reach.
  bool agrees_with(const LaurentSeries1& b) const {
    const int p = std::min(prec_, b.prec_);
    const int lo = std::min(c_.empty() ? p : lo_, b.c_.empty() ? p : b.lo_);
    const int hi = std::min(std::max(c_.empty() ? lo : this->hi(), b.c_.empty() ? lo : b.hi()), p);
    for (int e = lo; e < hi; ++e)
      if (raw(e) != b.raw(e)) return false;
    return true;
  }
  /// Exact equality: same window and same coefficients.
  bool operator==(const LaurentSeries1& b) const {
    return prec_ == b.prec_ && c_ == b.c_ && (c_.empty() || lo_ == b.lo_);
  }

  Elem raw(int e) const {
    if (e < lo_ || e >= hi()) return 0;
    return c_[static_cast<std::size_t>(e - lo_)];
  }

 private:
  std::string prec_str() const { return is_exact() ? "inf" : std::to_string(prec_); }
  const FieldDesc& pick(const LaurentSeries1& b) const {
    if (field_.valid() && b.field_.valid() && field_ != b.field_) throw error("series over different fields");
    return field_.valid() ? field_ : b.field_;
  }
  void normalize() {
    if (!is_exact() && hi() > prec_) c_.resize(static_cast<std::size_t>(std::max(0, prec_ - lo_)));
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      lo_ += static_cast<int>(lead);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (c_.empty()) lo_ = is_exact() ? 0 : prec_;
  }

  FieldDesc field_;
  int lo_ = 0;
  int prec_ = kExact;
  std::vector<Elem> c_;
};

class LaurentSeries2 {
 public:
  LaurentSeries2() = default;
  explicit LaurentSeries2(FieldDesc f) : field_(std::move(f)) {}
  /// rows[i] is the coefficient of t^{t_lo+i}; rows past the vector and below t_prec are zero.
  LaurentSeries2(FieldDesc f, int t_lo, std::vector<LaurentSeries1> rows, int t_prec = kExact)
      : field_(std::move(f)), t_lo_(t_lo), t_prec_(t_prec), rows_(std::move(rows)) {
    normalize();
  }

  static LaurentSeries2 zero(const FieldDesc& f) { return LaurentSeries2(f); }
  static LaurentSeries2 constant(const FieldDesc& f, Elem c) {
    return LaurentSeries2(f, 0, {LaurentSeries1::monomial(f, 0, c)});
  }
  /// c u^a t^b, exact.
  static LaurentSeries2 monomial(const FieldDesc& f, int a, int b, Elem c = 1) {
    return LaurentSeries2(f, b, {LaurentSeries1::monomial(f, a, c)});
  }
  static LaurentSeries2 from_row(const LaurentSeries1& row, int b = 0) {
    return LaurentSeries2(row.field(), b, {row});
  }

  const FieldDesc& field() const { return field_; }
  int t_lo() const { return t_lo_; }
  int t_prec() const { return t_prec_; }
  bool is_exact() const {
    if (t_prec_ < kExact) return false;
    for (const auto& r : rows_)
      if (!r.is_exact()) return false;
    return true;
  }
  bool is_exact_zero() const { return rows_.empty() && t_prec_ >= kExact; }
  const std::vector<LaurentSeries1>& rows() const { return rows_; }
  int t_hi() const { return t_lo_ + static_cast<int>(rows_.size()); }

  /// Least u-precision over the stored rows (kExact when all rows are exact).
  int u_prec() const {
    int p = kExact;
    for (const auto& r : rows_) p = std::min(p, r.prec());
    return p;
  }

  int vt_lower() const { return rows_.empty() ? t_prec_ : t_lo_; }

  LaurentSeries1 row(int b) const {
    if (b >= t_prec_) throw insufficient_precision("t", "coefficient of t^" + std::to_string(b) + " beyond O(t^" + std::to_string(t_prec_) + ")");
    if (b < t_lo_ || b >= t_hi()) return LaurentSeries1::zero(field_);
    return rows_[static_cast<std::size_t>(b - t_lo_)];
  }

  LaurentSeries2 operator+(const LaurentSeries2& b) const {
    const FieldDesc& F = pick(b);
    const int tp = std::min(t_prec_, b.t_prec_);
    if (rows_.empty() && b.rows_.empty()) return LaurentSeries2(F, tp >= kExact ? 0 : tp, {}, tp);
    const int lo = std::min(rows_.empty() ? b.t_lo_ : t_lo_, b.rows_.empty() ? t_lo_ : b.t_lo_);
    const int hi = std::min(std::max(rows_.empty() ? lo : t_hi(), b.rows_.empty() ? lo : b.t_hi()), tp);
    std::vector<LaurentSeries1> r;
    for (int e = lo; e < hi; ++e) r.push_back(raw_row(e) + b.raw_row(e));
    return LaurentSeries2(F, lo, std::move(r), tp);
  }
  LaurentSeries2 operator-() const {
    LaurentSeries2 r = *this;
    for (auto& row : r.rows_) row = -row;
    return r;
  }
  LaurentSeries2 operator-(const LaurentSeries2& b) const { return *this + (-b); }

  /// Product; rows at or above `t_limit` are not computed.
  LaurentSeries2 mul(const LaurentSeries2& b, int t_limit = kExact) const {
    const FieldDesc& F = pick(b);
    if (is_exact_zero() || b.is_exact_zero()) return zero(F);
    int tp = std::min(detail::padd(t_prec_, b.vt_lower()), detail::padd(b.t_prec_, vt_lower()));
    tp = std::min(tp, t_limit);
    if (rows_.empty() || b.rows_.empty()) return LaurentSeries2(F, tp, {}, tp);
    const int lo = t_lo_ + b.t_lo_;
    const int hi = std::min(t_hi() + b.t_hi() - 1, tp);
    std::vector<LaurentSeries1> r;
    for (int k = lo; k < hi; ++k) {
      LaurentSeries1 acc = LaurentSeries1::zero(F);
      for (int i = t_lo_; i < t_hi(); ++i) {
        const int j = k - i;
        if (j < b.t_lo_ || j >= b.t_hi()) continue;
        acc = acc + rows_[i - t_lo_] * b.rows_[j - b.t_lo_];
      }
      r.push_back(std::move(acc));
    }
    return LaurentSeries2(F, lo, std::move(r), tp);
  }
  LaurentSeries2 operator*(const LaurentSeries2& b) const { return mul(b); }

  LaurentSeries2 scale(Elem a) const {
    LaurentSeries2 r = *this;
    for (auto& row : r.rows_) row = row.scale(a);
    r.normalize();
    return r;
  }
  LaurentSeries2 shift(int du, int dt) const {
    LaurentSeries2 r = *this;
    for (auto& row : r.rows_) row = row.shift(du);
    if (!r.is_exact_zero()) r.t_lo_ += dt;
    if (r.t_prec_ < kExact) r.t_prec_ += dt;
    return r;
  }

  LaurentSeries2 inverse(Precision cap = {}) const {
    if (rows_.empty()) throw insufficient_precision("t", "cannot invert a series that is zero to O(t^" + std::to_string(t_prec_) + ")");
    const FieldDesc& F = field_;
    const int v = t_lo_;
    const LaurentSeries1 c = rows_[0].inverse(cap.u);
    if (t_prec_ >= kExact && rows_.size() == 1) return LaurentSeries2(F, -v, {c});
    const int n = t_prec_ >= kExact ? cap.t : t_prec_ - v;
    std::vector<LaurentSeries1> b;
    b.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int k = 0; k < n; ++k) {
      if (k == 0) {
        b.push_back(c);
        continue;
      }
      LaurentSeries1 s = LaurentSeries1::zero(F);
      for (int j = 1; j <= k && j < static_cast<int>(rows_.size()); ++j) s = s + rows_[j] * b[k - j];
      b.push_back(-(c * s));
    }
    return LaurentSeries2(F, -v, std::move(b), -v + n);
  }

  LaurentSeries2 pow(std::int64_t e, Precision cap = {}) const {
    if (e < 0) return inverse(cap).pow(-e, cap);
    LaurentSeries2 r = constant(field_, 1), base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return r;
  }

  /// Drop rows at or above `p`.
  LaurentSeries2 truncate_t(int p) const {
    if (p >= t_prec_) return *this;
    std::vector<LaurentSeries1> r;
    for (int e = t_lo_; e < std::min(t_hi(), p); ++e) r.push_back(rows_[e - t_lo_]);
    return LaurentSeries2(field_, std::min(t_lo_, p), std::move(r), p);
  }

  /// Equal wherever both windows reach.
  bool agrees_with(const LaurentSeries2& b) const {
    const int tp = std::min(t_prec_, b.t_prec_);
    const int lo = std::min(rows_.empty() ? tp : t_lo_, b.rows_.empty() ? tp : b.t_lo_);
    const int hi = std::min(std::max(rows_.empty() ? lo : t_hi(), b.rows_.empty() ? lo : b.t_hi()), tp);
    for (int e = lo; e < hi; ++e)
      if (!raw_row(e).agrees_with(b.raw_row(e))) return false;
    return true;
  }
  bool operator==(const LaurentSeries2& b) const {
    return t_prec_ == b.t_prec_ && rows_ == b.rows_ && (rows_.empty() || t_lo_ == b.t_lo_);
  }

  LaurentSeries1 raw_row(int b) const {
    if (b < t_lo_ || b >= t_hi()) return LaurentSeries1::zero(field_);
    return rows_[static_cast<std::size_t>(b - t_lo_)];
  }

 private:
  const FieldDesc& pick(const LaurentSeries2& b) const {
    if (field_.valid() && b.field_.valid() && field_ != b.field_) throw error("series over different fields");
    return field_.valid() ? field_ : b.field_;
  }
  void normalize() {
    if (t_prec_ < kExact && t_hi() > t_prec_) rows_.resize(static_cast<std::size_t>(std::max(0, t_prec_ - t_lo_)));
    std::size_t lead = 0;
    while (lead < rows_.size() && rows_[lead].is_exact_zero()) ++lead;
    if (lead > 0) {
      rows_.erase(rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(lead));
      t_lo_ += static_cast<int>(lead);
    }
    while (!rows_.empty() && rows_.back().is_exact_zero()) rows_.pop_back();
    if (rows_.empty()) t_lo_ = t_prec_ >= kExact ? 0 : t_prec_;
  }

  FieldDesc field_;
  int t_lo_ = 0;
  int t_prec_ = kExact;
  std::vector<LaurentSeries1> rows_;
};

/// The coefficient f of a local 2-form f du^dt.
struct LocalForm2 {
  LaurentSeries2 body;
};

/// Which variable an operation acts on.
enum class Var { u, t };

/// Arithmetic selector for `ls2_arith`.
enum class SeriesOp { add, sub, mul, inv_of_a };

inline LaurentSeries2 ls2_arith(const LaurentSeries2& a, const LaurentSeries2& b, SeriesOp op, Precision cap = {}) {
  switch (op) {
    case SeriesOp::add:
      return a + b;
    case SeriesOp::sub:
      return a - b;
    case SeriesOp::mul:
      return a * b;
    case SeriesOp::inv_of_a:
      return a.inverse(cap);
  }
  throw error("unknown series op");
}

/// Formal derivative. The window shrinks by one in the differentiated variable.
inline LaurentSeries2 ls2_derive(const LaurentSeries2& f, Var v) {
  const FieldDesc& F = f.field();
  if (v == Var::u) {
    std::vector<LaurentSeries1> rows;
    for (const auto& r : f.rows()) rows.push_back(r.derivative());
    return LaurentSeries2(F, f.t_lo(), std::move(rows), f.t_prec());
  }
  std::vector<LaurentSeries1> rows;
  for (int b = f.t_lo(); b < f.t_hi(); ++b) rows.push_back(f.raw_row(b).scale(F.from_int(b)));
  const int tp = f.t_prec() >= kExact ? kExact : f.t_prec() - 1;
  return LaurentSeries2(F, f.t_lo() - 1, std::move(rows), tp);
}

/// (t-valuation, u-valuation of the leading t-coefficient).
inline std::pair<int, int> ls2_valuation(const LaurentSeries2& f) {
  if (f.rows().empty())
    throw insufficient_precision("t", "series is zero in its window");
  const auto& lead = f.rows().front();
  if (lead.is_zero_in_window())
    throw insufficient_precision("u", "leading t-coefficient is zero to O(u^" + std::to_string(lead.prec()) + ")");
  return {f.t_lo(), lead.valuation()};
}

/// Coefficient of u^{-1} t^{-1}.
inline FieldElem res2(const LocalForm2& w) {
  const LaurentSeries2& f = w.body;
  const FieldDesc& F = f.field();
  if (-1 >= f.t_prec()) throw insufficient_precision("t", "residue slot t^-1 beyond O(t^" + std::to_string(f.t_prec()) + ")");
  const LaurentSeries1 row = f.raw_row(-1);
  if (-1 < f.t_lo() || -1 >= f.t_hi()) return {F, 0};
  return {F, row.coeff(-1)};
}

/// f(U, T) for parameter images U, T given as series in (u, t).
///
/// Preconditions: U and T are integral (no negative u- or t-exponents),
/// U has u-valuation exactly 1 in its t^0 row, and T has t-valuation 1 with
/// a unit t^1 row. Under these conditions k[[U,T]] sits inside k[[u,t]],
/// so an unknown tail O(U^P) is modelled as U^P times an integral unknown.
/// Evaluation is Horner in t, then in u, truncating after each step.
inline LaurentSeries2 ls2_substitute(const LaurentSeries2& f, const LaurentSeries2& u_image,
                                     const LaurentSeries2& t_image, Precision cap = {}) {
  const FieldDesc& F = f.field();
  auto integral = [](const LaurentSeries2& s) {
    if (s.t_lo() < 0 && !s.rows().empty()) return false;
    for (const auto& r : s.rows())
      if (!r.is_zero_in_window() && r.lo() < 0) return false;
    return true;
  };
  if (!integral(u_image) || !integral(t_image)) throw error("ls2_substitute: parameter images must be integral");
  if (u_image.t_prec() <= 0 || u_image.raw_row(0).is_zero_in_window() || u_image.raw_row(0).valuation() != 1)
    throw error("ls2_substitute: u image must have u-valuation 1 at t^0");
  if (t_image.rows().empty() || t_image.t_lo() != 1 || t_image.rows().front().is_zero_in_window() ||
      t_image.rows().front().valuation() != 0)
    throw error("ls2_substitute: t image must have t-valuation 1 with a unit leading coefficient");
  if (f.is_exact_zero()) return f;

  // Horner runs on rows relative to t^{t_lo}; `limit` rows are kept
  const bool t_exact = f.t_prec() >= kExact;
  // exact polynomial data composes exactly
  const bool polynomial = f.is_exact() && integral(f) && u_image.is_exact() && t_image.is_exact();
  const int limit = polynomial ? kExact : t_exact ? cap.t : f.t_prec() - f.t_lo();
  if (limit <= 0) return LaurentSeries2(F, f.t_prec(), {}, f.t_prec());

  auto unknown_integral = [&](int nrows) {
    std::vector<LaurentSeries1> rows(static_cast<std::size_t>(nrows), LaurentSeries1::unknown(F, 0));
    return LaurentSeries2(F, 0, std::move(rows), nrows);
  };
  const LaurentSeries2 U = u_image.truncate_t(limit);
  const LaurentSeries2 T = t_image.truncate_t(detail::padd(limit, 1));

  auto power = [&](const LaurentSeries2& base, int e) {
    LaurentSeries2 b = e >= 0 ? base : base.inverse(cap).truncate_t(limit);
    LaurentSeries2 r = LaurentSeries2::constant(F, 1);
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) r = r.mul(b, limit);
    return r;
  };

  // one row of f, evaluated at U
  auto eval_row = [&](const LaurentSeries1& row) {
    LaurentSeries2 acc = LaurentSeries2::zero(F);
    if (!row.is_zero_in_window()) {
      for (int e = row.hi() - 1; e >= row.lo(); --e) acc = acc.mul(U, limit) + LaurentSeries2::constant(F, row.raw(e));
      if (row.lo() != 0) acc = acc.mul(power(U, row.lo()), limit);
    }
    if (!row.is_exact()) acc = acc + power(U, row.prec()).mul(unknown_integral(limit), limit);
    return acc;
  };

  LaurentSeries2 acc = LaurentSeries2::zero(F);
  for (int b = f.t_hi() - 1; b >= f.t_lo(); --b) acc = acc.mul(T, limit) + eval_row(f.raw_row(b));
  if (!t_exact) acc = acc + power(T, limit).mul(unknown_integral(limit), limit);
  acc = acc.truncate_t(limit);
  if (f.t_lo() == 0) return acc;
  return acc.mul(power(T, f.t_lo()));
}

/// Sparse text form, one term per line: `t^b*u^a: c`. Finite windows are
/// recorded as `O(t^b*u^p)` per row and `O(t^p)` for the t-window.
inline std::string ls2_to_text(const LaurentSeries2& f) {
  std::ostringstream os;
  const FieldDesc& F = f.field();
  for (int b = f.t_lo(); b < f.t_hi(); ++b) {
    const LaurentSeries1 r = f.raw_row(b);
    for (int a = r.lo(); a < r.hi(); ++a)
      if (r.raw(a) != 0) os << "t^" << b << "*u^" << a << ": " << F.format(r.raw(a)) << "\n";
    if (!r.is_exact()) os << "O(t^" << b << "*u^" << r.prec() << ")\n";
  }
  if (f.t_prec() < kExact) os << "O(t^" << f.t_prec() << ")\n";
  return os.str();
}

/// Inverse of ls2_to_text for prime-field coefficients.
inline LaurentSeries2 ls2_from_text(const FieldDesc& F, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::map<int, std::map<int, Elem>> terms;
  std::map<int, int> row_prec;
  int t_prec = kExact;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int b = 0, a = 0;
    long long c = 0;
    if (std::sscanf(line.c_str(), "O(t^%d*u^%d)", &b, &a) == 2) {
      row_prec[b] = a;
    } else if (std::sscanf(line.c_str(), "O(t^%d)", &b) == 1) {
      t_prec = b;
    } else if (std::sscanf(line.c_str(), "t^%d*u^%d: %lld", &b, &a, &c) == 3) {
      terms[b][a] = F.from_int(c);
    } else {
      throw error("ls2_from_text: cannot parse line '" + line + "'");
    }
  }
  std::set<int> keys;
  for (auto& [b, m] : terms) keys.insert(b);
  for (auto& [b, p] : row_prec) keys.insert(b);
  if (keys.empty()) return LaurentSeries2(F, t_prec >= kExact ? 0 : t_prec, {}, t_prec);
  const int lo = *keys.begin(), hi = *keys.rbegin() + 1;
  std::vector<LaurentSeries1> rows;
  for (int b = lo; b < hi; ++b) {
    const int prec = row_prec.count(b) ? row_prec[b] : kExact;
    if (!terms.count(b)) {
      rows.push_back(prec >= kExact ? LaurentSeries1::zero(F) : LaurentSeries1::unknown(F, prec));
      continue;
    }
    const auto& m = terms[b];
    const int rlo = m.begin()->first;
    std::vector<Elem> c(static_cast<std::size_t>(m.rbegin()->first - rlo + 1), 0);
    for (auto& [a, v] : m) c[a - rlo] = v;
    rows.emplace_back(F, rlo, std::move(c), prec);
  }
  return LaurentSeries2(F, lo, std::move(rows), t_prec);
}

/// Dense truncated power series in k[[u,t]] modulo (u^nu, t^nt).
class PowerBox {
 public:
  PowerBox(FieldDesc f, int nu, int nt) : field_(std::move(f)), nu_(nu), nt_(nt), c_(static_cast<std::size_t>(nu * nt), 0) {}

  static PowerBox constant(const FieldDesc& f, int nu, int nt, Elem c) {
    PowerBox b(f, nu, nt);
    b.at(0, 0) = c;
    return b;
  }
  static PowerBox u(const FieldDesc& f, int nu, int nt) {
    PowerBox b(f, nu, nt);
    if (nu > 1) b.at(1, 0) = 1;
    return b;
  }
  static PowerBox t(const FieldDesc& f, int nu, int nt) {
    PowerBox b(f, nu, nt);
    if (nt > 1) b.at(0, 1) = 1;
    return b;
  }

  Elem& at(int a, int b) { return c_[static_cast<std::size_t>(b * nu_ + a)]; }
  Elem at(int a, int b) const { return c_[static_cast<std::size_t>(b * nu_ + a)]; }
  int nu() const { return nu_; }
  int nt() const { return nt_; }

  PowerBox operator+(const PowerBox& o) const {
    PowerBox r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.add(c_[i], o.c_[i]);
    return r;
  }
  PowerBox operator-(const PowerBox& o) const {
    PowerBox r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.sub(c_[i], o.c_[i]);
    return r;
  }
  PowerBox scale(Elem s) const {
    PowerBox r = *this;
    for (auto& v : r.c_) v = field_.mul(v, s);
    return r;
  }
  PowerBox operator*(const PowerBox& o) const {
    PowerBox r(field_, nu_, nt_);
    for (int b1 = 0; b1 < nt_; ++b1)
      for (int a1 = 0; a1 < nu_; ++a1) {
        const Elem x = at(a1, b1);
        if (x == 0) continue;
        for (int b2 = 0; b1 + b2 < nt_; ++b2)
          for (int a2 = 0; a1 + a2 < nu_; ++a2) {
            const Elem y = o.at(a2, b2);
            if (y != 0) r.at(a1 + a2, b1 + b2) = field_.add(r.at(a1 + a2, b1 + b2), field_.mul(x, y));
          }
      }
    return r;
  }
  bool operator==(const PowerBox& o) const { return c_ == o.c_; }

  /// As an iterated Laurent series with rows O(u^nu) and window O(t^nt).
  LaurentSeries2 to_laurent() const {
    std::vector<LaurentSeries1> rows;
    for (int b = 0; b < nt_; ++b) {
      std::vector<Elem> r(static_cast<std::size_t>(nu_));
      for (int a = 0; a < nu_; ++a) r[a] = at(a, b);
      rows.emplace_back(field_, 0, std::move(r), nu_);
    }
    return LaurentSeries2(field_, 0, std::move(rows), nt_);
  }

 private:
  FieldDesc field_;
  int nu_, nt_;
  std::vector<Elem> c_;
};

}  // namespace rrsurf

#endif  // RRSURF_SERIES_HPP
