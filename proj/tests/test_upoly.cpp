#include <gtest/gtest.h>

#include <random>

#include "rrsurf/linalg.hpp"
#include "rrsurf/upoly.hpp"

using namespace rrsurf;

namespace {

UPoly random_poly(const FieldDesc& f, int deg, std::mt19937& rng) {
  std::vector<Elem> c(deg + 1);
  for (auto& v : c) v = rng() % f.order();
  if (c.back() == 0) c.back() = 1;
  return UPoly(f, c);
}

// Oracle: a polynomial of degree <= 3 is irreducible iff it has no root.
bool no_roots(const UPoly& f) {
  for (Elem a = 0; a < f.field().order(); ++a)
    if (f.eval(a) == 0) return false;
  return true;
}

}  // namespace

TEST(PolyFactor, Examples) {
  FieldDesc f5 = field_make(5);
  auto fs = poly_factor(UPoly::from_ints(f5, {1, 0, 1}));
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].poly, UPoly::from_ints(f5, {2, 1}));
  EXPECT_EQ(fs[1].poly, UPoly::from_ints(f5, {3, 1}));
  EXPECT_EQ(fs[0].multiplicity, 1);

  FieldDesc f2 = field_make(2);
  auto g = poly_factor(UPoly::from_ints(f2, {1, 1, 1}));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].poly.degree(), 2);

  FieldDesc f3 = field_make(3);
  auto h = poly_factor(UPoly::from_ints(f3, {0, 0, 1}));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].poly, UPoly::x(f3));
  EXPECT_EQ(h[0].multiplicity, 2);
}

TEST(PolyFactor, ZeroIsError) {
  EXPECT_THROW(poly_factor(UPoly(field_make(3))), error);
}

TEST(PolyFactor, RemultipliesToInput) {
  std::mt19937 rng(2024);
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
    FieldDesc f = field_make(p, d);
    for (int i = 0; i < 200; ++i) {
      UPoly a = random_poly(f, 1 + static_cast<int>(rng() % 8), rng);
      auto fs = poly_factor(a);
      UPoly prod = UPoly::constant(f, a.lead());
      for (const auto& fc : fs) {
        EXPECT_EQ(fc.poly.lead(), 1u);
        EXPECT_TRUE(is_irreducible(fc.poly));
        if (fc.poly.degree() <= 3) {
          EXPECT_TRUE(no_roots(fc.poly) || fc.poly.degree() == 1);
        }
        for (int k = 0; k < fc.multiplicity; ++k) prod = prod * fc.poly;
      }
      EXPECT_EQ(prod, a);
      for (std::size_t k = 1; k < fs.size(); ++k) {
        const bool ordered = fs[k - 1].poly.degree() < fs[k].poly.degree() ||
                             (fs[k - 1].poly.degree() == fs[k].poly.degree() && fs[k - 1].poly < fs[k].poly);
        EXPECT_TRUE(ordered);
      }
    }
  }
}

TEST(PolyFactor, CountsIrreduciblesOfDegreeTwo) {
  // Gauss: (q^2 - q) / 2 monic irreducible quadratics over F_q
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
    FieldDesc f = field_make(p, d);
    const Elem q = f.order();
    int n = 0;
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b)
        if (is_irreducible(UPoly(f, {b, a, 1}))) ++n;
    EXPECT_EQ(n, static_cast<int>((q * q - q) / 2));
  }
}

TEST(PolyRoots, MatchesExhaustiveSearch) {
  FieldDesc f = field_make(3, 2);
  std::mt19937 rng(5);
  for (int i = 0; i < 50; ++i) {
    UPoly a = random_poly(f, 1 + static_cast<int>(rng() % 6), rng);
    std::vector<Elem> want;
    for (Elem x = 0; x < f.order(); ++x)
      if (a.eval(x) == 0) want.push_back(x);
    auto got = poly_roots(a);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
  }
}

TEST(Resultant, VanishesAtCommonRoots) {
  // Res_y(y^2 - x, y - x) = x^2 - x
  FieldDesc f = field_make(5);
  UPoly x = UPoly::x(f);
  std::vector<UPoly> A{-x, UPoly(f), UPoly::constant(f, 1)};
  std::vector<UPoly> B{-x, UPoly::constant(f, 1)};
  UPoly r = bivariate_resultant(A, B, f);
  EXPECT_EQ(r.monic(), UPoly::from_ints(f, {0, -1, 1}));
}

TEST(Linalg, NullspaceAndRank) {
  FieldDesc f = field_make(7);
  Matrix m = Matrix::from_rows(f, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}, 3);
  EXPECT_EQ(rank(m), 2u);
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  for (std::size_t r = 0; r < 3; ++r) {
    Elem s = 0;
    for (std::size_t c = 0; c < 3; ++c) s = f.add(s, f.mul(m(r, c), ns[0][c]));
    EXPECT_EQ(s, 0u);
  }
  EXPECT_TRUE(same_span(f, {{1, 0, 0}, {0, 1, 0}}, {{1, 1, 0}, {1, 6, 0}}, 3));
  EXPECT_FALSE(same_span(f, {{1, 0, 0}}, {{0, 1, 0}}, 3));
}
