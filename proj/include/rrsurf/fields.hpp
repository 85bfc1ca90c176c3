#ifndef RRSURF_FIELDS_HPP
#define RRSURF_FIELDS_HPP

// Finite fields F_p and F_{p^d}.
//
// Elements are packed into a 32-bit word: the polynomial representative
// c_0 + c_1 x + ... + c_{d-1} x^{d-1} is stored as sum c_i p^i. The
// generator x of F_{p^d} therefore has packed value p. Fields up to a few
// million elements get exp/log tables; larger ones fall back to schoolbook
// multiplication modulo the defining polynomial.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rrsurf/error.hpp"

namespace rrsurf {

using Elem = std::uint32_t;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

namespace detail {

// Dense polynomials over F_p with int64 coefficients, low degree first.
// Only used to pick moduli; everything else works on packed elements.
using IntPoly = std::vector<std::int64_t>;

inline void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline IntPoly polymod(IntPoly a, const IntPoly& m, std::int64_t p) {
  trim(a);
  const std::int64_t inv_lead = [&] {
    std::int64_t l = m.back(), r = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * l % p;
      l = l * l % p;
      e >>= 1;
    }
    return r;
  }();
  while (a.size() >= m.size()) {
    const std::int64_t c = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline IntPoly polymulmod(const IntPoly& a, const IntPoly& b, const IntPoly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return polymod(std::move(r), m, p);
}

inline IntPoly polygcd(IntPoly a, IntPoly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    IntPoly r = polymod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin-style test: f of degree d is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= d/2.
inline bool int_poly_irreducible(const IntPoly& f, std::int64_t p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d <= 1) return d == 1;
  IntPoly h = polymod({0, 1}, f, p);
  for (int i = 1; i <= d / 2; ++i) {
    IntPoly acc{1};
    IntPoly base = h;
    std::int64_t e = p;
    while (e > 0) {
      if (e & 1) acc = polymulmod(acc, base, f, p);
      base = polymulmod(base, base, f, p);
      e >>= 1;
    }
    h = acc;
    IntPoly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (polygcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

// Monic irreducible of degree d, least in the order that reads the lower
// coefficients (c_0, ..., c_{d-1}) as the base-p integer sum c_i p^i.
inline std::vector<int> least_irreducible(int p, int d) {
  if (d == 1) return {0, 1};
  std::int64_t count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (std::int64_t n = 0; n < count; ++n) {
    IntPoly f(d + 1, 0);
    std::int64_t v = n;
    for (int i = 0; i < d; ++i) {
      f[i] = v % p;
      v /= p;
    }
    f[d] = 1;
    if (f[0] == 0) continue;
    if (int_poly_irreducible(f, p)) return {f.begin(), f.end()};
  }
  throw error("internal: no irreducible polynomial found");
}

struct FieldImpl {
  int p = 2;
  int d = 1;
  Elem q = 2;
  std::vector<int> modulus;  // monic, low degree first, size d + 1
  std::vector<Elem> pow_p;   // p^i for i <= d
  std::vector<Elem> exp;     // exp[i] = g^i, size q - 1
  std::vector<Elem> log;     // log[a] for a != 0
  bool tables = false;

  Elem add(Elem a, Elem b) const {
    if (d == 1) {
      const Elem s = a + b;
      return s >= q ? s - q : s;
    }
    if (p == 2) return a ^ b;
    Elem r = 0;
    const Elem pp = static_cast<Elem>(p);
    for (int i = 0; i < d; ++i) {
      Elem s = a % pp + b % pp;
      if (s >= pp) s -= pp;
      r += s * pow_p[i];
      a /= pp;
      b /= pp;
    }
    return r;
  }

  Elem neg(Elem a) const {
    if (d == 1) return a == 0 ? 0 : q - a;
    if (p == 2) return a;
    Elem r = 0;
    const Elem pp = static_cast<Elem>(p);
    for (int i = 0; i < d; ++i) {
      const Elem c = a % pp;
      r += (c == 0 ? 0 : pp - c) * pow_p[i];
      a /= pp;
    }
    return r;
  }

  Elem mul_slow(Elem a, Elem b) const {
    if (d == 1) return static_cast<Elem>((std::uint64_t(a) * b) % q);
    std::vector<std::int64_t> x(d), y(d), r(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
      x[i] = a % p;
      a /= p;
      y[i] = b % p;
      b /= p;
    }
    for (int i = 0; i < d; ++i)
      if (x[i] != 0)
        for (int j = 0; j < d; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
    for (int k = 2 * d - 2; k >= d; --k) {
      const std::int64_t c = r[k];
      if (c == 0) continue;
      for (int i = 0; i <= d; ++i) r[k - d + i] = ((r[k - d + i] - c * modulus[i]) % p + p) % p;
    }
    Elem out = 0;
    for (int i = 0; i < d; ++i) out += static_cast<Elem>(r[i]) * pow_p[i];
    return out;
  }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (tables) {
      std::uint64_t s = std::uint64_t(log[a]) + log[b];
      if (s >= q - 1) s -= q - 1;
      return exp[s];
    }
    return mul_slow(a, b);
  }

  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (tables) {
      const std::uint64_t s = (std::uint64_t(log[a]) * (e % (q - 1))) % (q - 1);
      return exp[s];
    }
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem a) const {
    if (a == 0) throw error("division by zero in F_" + std::to_string(q));
    if (tables) return exp[(q - 1 - log[a]) % (q - 1)];
    return pow(a, q - 2);
  }

  void build_tables() {
    if (q > (1u << 22)) return;
    // factor q - 1 to test candidate generators
    std::vector<Elem> primes;
    Elem m = q - 1;
    for (Elem f = 2; f * f <= m; ++f)
      if (m % f == 0) {
        primes.push_back(f);
        while (m % f == 0) m /= f;
      }
    if (m > 1) primes.push_back(m);
    Elem gen = 0;
    for (Elem g = 1; g < q && gen == 0; ++g) {
      if (g == 0) continue;
      bool ok = true;
      for (Elem r : primes)
        if (pow(g, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) gen = g;
    }
    if (gen == 0) throw error("internal: no primitive element");
    exp.assign(q - 1, 0);
    log.assign(q, 0);
    Elem cur = 1;
    for (Elem i = 0; i < q - 1; ++i) {
      exp[i] = cur;
      log[cur] = i;
      cur = mul_slow(cur, gen);
    }
    tables = true;
  }
};

}  // namespace detail

class FieldElem;

/// Handle to an immutable finite field F_{p^d}. Cheap to copy; equal
/// handles describe the same field with the same modulus.
class FieldDesc {
 public:
  FieldDesc() = default;
  explicit FieldDesc(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}

  int p() const { return impl_->p; }
  int degree() const { return impl_->d; }
  Elem order() const { return impl_->q; }
  const std::vector<int>& modulus() const { return impl_->modulus; }
  bool valid() const { return impl_ != nullptr; }
  bool is_prime_field() const { return impl_->d == 1; }

  Elem add(Elem a, Elem b) const { return impl_->add(a, b); }
  Elem sub(Elem a, Elem b) const { return impl_->add(a, impl_->neg(b)); }
  Elem neg(Elem a) const { return impl_->neg(a); }
  Elem mul(Elem a, Elem b) const { return impl_->mul(a, b); }
  Elem inv(Elem a) const { return impl_->inv(a); }
  Elem div(Elem a, Elem b) const { return impl_->mul(a, impl_->inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const { return impl_->pow(a, e); }
  Elem pow_signed(Elem a, std::int64_t e) const {
    return e >= 0 ? pow(a, static_cast<std::uint64_t>(e)) : pow(inv(a), static_cast<std::uint64_t>(-e));
  }
  Elem frobenius(Elem a) const { return pow(a, static_cast<std::uint64_t>(impl_->p)); }

  /// Image of an integer under Z -> F_p -> this field.
  Elem from_int(std::int64_t n) const {
    const std::int64_t p = impl_->p;
    return static_cast<Elem>(((n % p) + p) % p);
  }
  /// The class of x in F_p[x]/(modulus); 0 is never returned for d > 1.
  Elem generator() const { return impl_->d == 1 ? 0 : static_cast<Elem>(impl_->p); }

  std::vector<int> digits(Elem a) const {
    std::vector<int> out(impl_->d);
    for (int i = 0; i < impl_->d; ++i) {
      out[i] = static_cast<int>(a % impl_->p);
      a /= impl_->p;
    }
    return out;
  }

  /// Absolute trace to the prime field, returned as a packed prime-field value.
  Elem abs_trace(Elem a) const {
    Elem s = 0, cur = a;
    for (int i = 0; i < impl_->d; ++i) {
      s = add(s, cur);
      cur = frobenius(cur);
    }
    return s;
  }

  /// Plain-text element: integers for prime fields, polynomials in `a` otherwise.
  std::string format(Elem a) const {
    if (impl_->d == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::vector<int> c = digits(a);
    std::string out;
    for (int i = impl_->d - 1; i >= 0; --i) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0) {
        out += std::to_string(c[i]);
        continue;
      }
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += "a";
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

  std::string name() const {
    std::ostringstream os;
    os << "F_" << impl_->q;
    return os.str();
  }

  bool operator==(const FieldDesc& o) const {
    if (impl_ == o.impl_) return true;
    if (!impl_ || !o.impl_) return false;
    return impl_->p == o.impl_->p && impl_->modulus == o.impl_->modulus;
  }
  bool operator!=(const FieldDesc& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const detail::FieldImpl> impl_;
};

/// Deterministic F_{p^d}: the modulus is the least monic irreducible of
/// degree d. Results are cached process-wide.
inline FieldDesc field_make(int p, int d = 1) {
  if (!is_prime(p)) throw error("field_make: " + std::to_string(p) + " is not prime");
  if (d < 1) throw error("field_make: extension degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < d; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > (1ull << 31)) throw unsupported("field_make: field too large for packed elements");
  }
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldDesc> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, d});
    if (it != cache.end()) return it->second;
  }
  auto impl = std::make_shared<detail::FieldImpl>();
  impl->p = p;
  impl->d = d;
  impl->q = static_cast<Elem>(q);
  impl->modulus = detail::least_irreducible(p, d);
  impl->pow_p.resize(d + 1);
  impl->pow_p[0] = 1;
  for (int i = 1; i <= d; ++i) impl->pow_p[i] = impl->pow_p[i - 1] * static_cast<Elem>(p);
  impl->build_tables();
  FieldDesc f(std::move(impl));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(p, d), f).first->second;
}

/// F_{q^e} for q = |base|, as an absolute extension of the prime field.
inline FieldDesc field_extension(const FieldDesc& base, int e) { return field_make(base.p(), base.degree() * e); }

/// Value type pairing a field with one of its elements.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(FieldDesc f, Elem v) : field_(std::move(f)), value_(v) {}

  const FieldDesc& field() const { return field_; }
  Elem value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  /// Polynomial representative, low degree first, length d.
  std::vector<int> coeffs() const { return field_.digits(value_); }

  FieldElem operator+(const FieldElem& b) const { return {check(b), field_.add(value_, b.value_)}; }
  FieldElem operator-(const FieldElem& b) const { return {check(b), field_.sub(value_, b.value_)}; }
  FieldElem operator*(const FieldElem& b) const { return {check(b), field_.mul(value_, b.value_)}; }
  FieldElem operator/(const FieldElem& b) const {
    check(b);
    if (b.value_ == 0) throw error("division by zero in " + field_.name());
    return {field_, field_.div(value_, b.value_)};
  }
  FieldElem operator-() const { return {field_, field_.neg(value_)}; }
  FieldElem pow(std::int64_t e) const { return {field_, field_.pow_signed(value_, e)}; }

  bool operator==(const FieldElem& b) const { return field_ == b.field_ && value_ == b.value_; }
  bool operator!=(const FieldElem& b) const { return !(*this == b); }

  std::string to_string() const { return field_.format(value_); }

 private:
  const FieldDesc& check(const FieldElem& b) const {
    if (field_ != b.field_) throw error("field mismatch: " + field_.name() + " vs " + b.field_.name());
    return field_;
  }

  FieldDesc field_;
  Elem value_ = 0;
};

/// Which arithmetic operation `ff_arith` applies.
enum class FieldOp { add, sub, mul, div };

inline FieldElem ff_arith(const FieldElem& a, const FieldElem& b, FieldOp op) {
  switch (op) {
    case FieldOp::add:
      return a + b;
    case FieldOp::sub:
      return a - b;
    case FieldOp::mul:
      return a * b;
    case FieldOp::div:
      return a / b;
  }
  throw error("unknown field op");
}

/// Absolute trace F_{p^d} -> F_p: sum of the Frobenius iterates.
inline FieldElem ff_trace(const FieldElem& a) {
  const FieldDesc prime = field_make(a.field().p(), 1);
  return {prime, a.field().abs_trace(a.value())};
}

/// Embedding of a subfield F_{p^a} into F_{p^b}, a | b. The image of the
/// small generator is the least root (packed order) of its modulus in the
/// big field, so the embedding is deterministic.
class Embedding {
 public:
  Embedding() = default;
  Embedding(FieldDesc small, FieldDesc big) : small_(std::move(small)), big_(std::move(big)) {
    if (small_.p() != big_.p() || big_.degree() % small_.degree() != 0)
      throw error("no embedding " + small_.name() + " -> " + big_.name());
    const Elem n = small_.order();
    image_.resize(n);
    if (small_.is_prime_field()) {
      for (Elem i = 0; i < n; ++i) image_[i] = i;
    } else {
      const auto& m = small_.modulus();
      Elem root = 0;
      bool found = false;
      for (Elem r = 0; r < big_.order() && !found; ++r) {
        Elem acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) acc = big_.add(big_.mul(acc, r), big_.from_int(m[i]));
        if (acc == 0) {
          root = r;
          found = true;
        }
      }
      if (!found) throw error("internal: modulus has no root in " + big_.name());
      for (Elem v = 0; v < n; ++v) {
        std::vector<int> c = small_.digits(v);
        Elem acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = big_.add(big_.mul(acc, root), big_.from_int(c[i]));
        image_[v] = acc;
      }
    }
    for (Elem v = 0; v < n; ++v) back_.emplace(image_[v], v);
  }

  const FieldDesc& small() const { return small_; }
  const FieldDesc& big() const { return big_; }
  Elem map(Elem a) const { return image_[a]; }
  bool contains(Elem b) const { return back_.count(b) != 0; }
  Elem pull(Elem b) const {
    auto it = back_.find(b);
    if (it == back_.end()) throw error("element not in the image of " + small_.name());
    return it->second;
  }

  /// Relative trace tr_{big/small}, pulled back into the small field.
  Elem trace(Elem b) const {
    const int e = big_.degree() / small_.degree();
    Elem s = 0, cur = b;
    for (int i = 0; i < e; ++i) {
      s = big_.add(s, cur);
      cur = big_.pow(cur, small_.order());
    }
    return pull(s);
  }

 private:
  FieldDesc small_, big_;
  std::vector<Elem> image_;
  std::unordered_map<Elem, Elem> back_;
};

/// Cached embedding lookup.
inline std::shared_ptr<const Embedding> embedding(const FieldDesc& small, const FieldDesc& big) {
  static std::mutex mu;
  static std::map<std::pair<std::vector<int>, std::vector<int>>, std::shared_ptr<const Embedding>> cache;
  std::vector<int> ks = small.modulus(), kb = big.modulus();
  ks.insert(ks.begin(), small.p());
  kb.insert(kb.begin(), big.p());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({ks, kb});
    if (it != cache.end()) return it->second;
  }
  auto e = std::make_shared<const Embedding>(small, big);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(ks, kb), e).first->second;
}

}  // namespace rrsurf

#endif  // RRSURF_FIELDS_HPP
