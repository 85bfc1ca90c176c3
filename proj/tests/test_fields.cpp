#include <gtest/gtest.h>

#include <random>

#include "rrsurf/fields.hpp"

using namespace rrsurf;

namespace {

// Brute-force irreducibility over F_p for the oracle: no monic factor of degree <= d/2.
bool brute_irreducible(const std::vector<int>& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int k = 1; 2 * k <= d; ++k) {
    int total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (int code = 0; code < total; ++code) {
      std::vector<int> g(k + 1, 0);
      int c = code;
      for (int i = 0; i < k; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[k] = 1;
      std::vector<int> r = f;
      for (int i = d; i >= k; --i) {
        const int m = r[i] % p;
        if (m == 0) continue;
        for (int j = 0; j <= k; ++j) r[i - k + j] = ((r[i - k + j] - m * g[j]) % p + p) % p;
      }
      bool zero = true;
      for (int v : r) zero &= (v % p == 0);
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

TEST(FieldMake, PrimeFields) {
  FieldDesc f2 = field_make(2, 1);
  EXPECT_EQ(f2.order(), 2u);
  EXPECT_EQ(f2.degree(), 1);
  FieldDesc f5 = field_make(5, 1);
  EXPECT_EQ(f5.order(), 5u);
}

TEST(FieldMake, F4Modulus) {
  FieldDesc f4 = field_make(2, 2);
  EXPECT_EQ(f4.modulus(), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(f4.order(), 4u);
}

TEST(FieldMake, ModulusIsLeastIrreducible) {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    FieldDesc f = field_make(p, d);
    const auto& m = f.modulus();
    ASSERT_EQ(static_cast<int>(m.size()), d + 1);
    EXPECT_TRUE(brute_irreducible(m, p));
    // every smaller monic candidate (base-p order on lower coefficients) is reducible
    long code_m = 0, w = 1;
    for (int i = 0; i < d; ++i, w *= p) code_m += m[i] * w;
    for (long code = 0; code < code_m; ++code) {
      std::vector<int> g(d + 1, 0);
      long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      EXPECT_FALSE(brute_irreducible(g, p)) << "p=" << p << " d=" << d << " code=" << code;
    }
  }
}

TEST(FieldMake, RejectsNonPrime) {
  EXPECT_THROW(field_make(4, 1), error);
  EXPECT_THROW(field_make(1, 1), error);
  EXPECT_THROW(field_make(3, 0), error);
}

TEST(FieldArith, Examples) {
  FieldDesc f5 = field_make(5);
  EXPECT_EQ(ff_arith({f5, 2}, {f5, 1}, FieldOp::div).value(), 2u);
  EXPECT_EQ(ff_arith({f5, 1}, {f5, 2}, FieldOp::div).value(), 3u);
  FieldDesc f4 = field_make(2, 2);
  FieldElem a{f4, f4.generator()};
  // alpha^2 = alpha + 1, packed as 1 + 2 = 3
  EXPECT_EQ((a * a).value(), f4.add(f4.generator(), 1));
  EXPECT_EQ((a * a).coeffs(), (std::vector<int>{1, 1}));
}

TEST(FieldArith, Errors) {
  FieldDesc f5 = field_make(5), f7 = field_make(7);
  EXPECT_THROW(ff_arith({f5, 1}, {f5, 0}, FieldOp::div), error);
  EXPECT_THROW(ff_arith({f5, 1}, {f7, 1}, FieldOp::add), error);
}

TEST(FieldArith, FrobeniusAdditive) {
  std::mt19937 rng(7);
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 2}, {3, 4}, {7, 1}}) {
    FieldDesc f = field_make(p, d);
    for (int i = 0; i < 100; ++i) {
      Elem a = rng() % f.order(), b = rng() % f.order();
      EXPECT_EQ(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
    }
  }
}

TEST(FieldArith, InverseProperty) {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {5, 2}, {11, 1}}) {
    FieldDesc f = field_make(p, d);
    for (Elem a = 1; a < f.order(); ++a) {
      FieldElem x{f, a};
      EXPECT_EQ((x * ff_arith({f, 1}, x, FieldOp::div)).value(), 1u);
    }
  }
}

TEST(FieldArith, MultiplicationMatchesSchoolbook) {
  // oracle: polynomial product reduced by the modulus using digit vectors
  FieldDesc f = field_make(3, 3);
  const auto& m = f.modulus();
  for (Elem a = 0; a < f.order(); a += 2)
    for (Elem b = 0; b < f.order(); b += 3) {
      auto da = f.digits(a), db = f.digits(b);
      std::vector<int> prod(5, 0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % 3;
      for (int i = 4; i >= 3; --i) {
        const int c = prod[i];
        for (int j = 0; j <= 3; ++j) prod[i - 3 + j] = ((prod[i - 3 + j] - c * m[j]) % 3 + 3) % 3;
      }
      Elem packed = static_cast<Elem>(prod[0] + 3 * prod[1] + 9 * prod[2]);
      EXPECT_EQ(f.mul(a, b), packed);
    }
}

TEST(FieldTrace, Examples) {
  FieldDesc f4 = field_make(2, 2);
  EXPECT_EQ(ff_trace({f4, 1}).value(), 0u);
  EXPECT_EQ(ff_trace({f4, f4.generator()}).value(), 1u);
  FieldDesc f5 = field_make(5);
  EXPECT_EQ(ff_trace({f5, 3}).value(), 3u);
  EXPECT_EQ(ff_trace({f5, 3}).field(), f5);
}

TEST(FieldTrace, LinearAndSurjective) {
  for (int p : {2, 3, 5})
    for (int d = 1; d <= 4; ++d) {
      FieldDesc f = field_make(p, d);
      if (f.order() > 700) continue;
      std::vector<bool> hit(p, false);
      for (Elem a = 0; a < f.order(); ++a) {
        const Elem ta = ff_trace({f, a}).value();
        hit[ta] = true;
        const Elem b = (a * 7 + 3) % f.order();
        EXPECT_EQ(ff_trace({f, f.add(a, b)}).value(), (ta + ff_trace({f, b}).value()) % p);
        EXPECT_EQ(ff_trace({f, f.mul(f.from_int(2), a)}).value(), (2 * ta) % p);
      }
      for (int v = 0; v < p; ++v) EXPECT_TRUE(hit[v]) << "p=" << p << " d=" << d;
    }
}

TEST(Embedding, RelativeTraceTransitive) {
  FieldDesc f3 = field_make(3), f9 = field_make(3, 2), f81 = field_make(3, 4);
  auto e = embedding(f9, f81);
  for (Elem a = 0; a < f81.order(); a += 5) {
    const Elem t = e->trace(a);
    EXPECT_EQ(f9.abs_trace(t), f81.abs_trace(a));
  }
  for (Elem a = 0; a < f9.order(); ++a) {
    EXPECT_TRUE(e->contains(e->map(a)));
    EXPECT_EQ(e->pull(e->map(a)), a);
  }
  (void)f3;
}

TEST(Embedding, IsRingHomomorphism) {
  FieldDesc f4 = field_make(2, 2), f16 = field_make(2, 4);
  auto e = embedding(f4, f16);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      EXPECT_EQ(e->map(f4.mul(a, b)), f16.mul(e->map(a), e->map(b)));
      EXPECT_EQ(e->map(f4.add(a, b)), f16.add(e->map(a), e->map(b)));
    }
}
