#include <gtest/gtest.h>

#include <random>

#include "rrsurf/parse.hpp"
#include "rrsurf/residues.hpp"

using namespace rrsurf;

namespace {

MPoly random_form(const Surface& S, const ClassVector& c, std::mt19937& rng) {
  MPoly f(S.base, S.nvars());
  const auto monos = detail::monomials_of_class(S, c);
  while (f.is_zero())
    for (const auto& m : monos) f.set(m, rng() % S.base.order());
  return f;
}

std::optional<Curve> random_curve(const Surface& S, const ClassVector& c, std::mt19937& rng) {
  for (int i = 0; i < 20; ++i) {
    try {
      return curve_make(S, random_form(S, c, rng));
    } catch (const error&) {
    }
  }
  return std::nullopt;
}

// A random form whose denominator is a product of random irreducible curves.
std::optional<GlobalForm> random_global_form(const Surface& S, std::mt19937& rng) {
  std::vector<ClassVector> pieces;
  if (S.model == Model::P2) {
    const int n = 1 + rng() % 2;
    for (int i = 0; i < n; ++i) pieces.push_back({{1 + static_cast<int>(rng() % 2)}});
  } else {
    const std::vector<ClassVector> opts{{{1, 0}}, {{0, 1}}, {{1, 1}}};
    const int n = 1 + rng() % 2;
    for (int i = 0; i < n; ++i) pieces.push_back(opts[rng() % opts.size()]);
  }
  MPoly den = MPoly::constant(S.base, S.nvars(), 1);
  ClassVector total = class_zero(S);
  for (const auto& c : pieces) {
    auto C = random_curve(S, c, rng);
    if (!C) return std::nullopt;
    den = den * C->poly;
    total = total + c;
  }
  if (total.v[0] > 3 || (total.v.size() > 1 && total.v[1] > 3)) return std::nullopt;
  try {
    return form_make(S, RationalFunction(S, random_form(S, total, rng), den));
  } catch (const error&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(LocalResidue, Examples) {
  Surface S = surface_make(Model::P2, 5);
  ClosedPoint o{S.base, {0, 0, 1}, 1};
  Flag fl = flag_make(S, o, parse_curve(S, "Y"));
  EXPECT_EQ(local_residue(S, form_make(S, parse_function(S, "Z^2/(X*Y)")), fl).value(), 1u);
  EXPECT_EQ(local_residue(S, form_make(S, RationalFunction::constant(S, 1)), fl).value(), 0u);
  EXPECT_EQ(local_residue(S, form_make(S, parse_function(S, "Z/X")), fl).value(), 0u);
}

TEST(LocalResidue, PointAtInfinity) {
  // at (1:0:0) on Y = 0, Z^2/(XY) omega = -u^-1 t^-1 du dt
  Surface S = surface_make(Model::P2, 5);
  ClosedPoint x{S.base, {1, 0, 0}, 1};
  Flag fl = flag_make(S, x, parse_curve(S, "Y"));
  EXPECT_EQ(local_residue(S, form_make(S, parse_function(S, "Z^2/(X*Y)")), fl).value(), 4u);
}

TEST(ReciprocityAroundPoint, Examples) {
  Surface S = surface_make(Model::P2, 3);
  ClosedPoint o{S.base, {0, 0, 1}, 1};
  std::vector<Curve> xy{parse_curve(S, "X"), parse_curve(S, "Y")};
  EXPECT_TRUE(residue_sum_around_point(S, form_make(S, parse_function(S, "Z^2/(X*Y)")), o, xy).is_zero());
  EXPECT_TRUE(residue_sum_around_point(S, form_make(S, parse_function(S, "(X+Z)/(Y+Z)")), o, {}).is_zero());
  EXPECT_TRUE(residue_sum_around_point(S, form_make(S, parse_function(S, "Z^3/(X^2*Y)")), o, xy).is_zero());
  EXPECT_THROW(residue_sum_around_point(S, form_make(S, parse_function(S, "Z^2/(X*Y)")), o, {xy[0]}), error);
}

TEST(ReciprocityAlongCurve, Examples) {
  Surface S = surface_make(Model::P2, 3);
  Curve Y = parse_curve(S, "Y");
  GlobalForm w = form_make(S, parse_function(S, "Z^2/(X*Y)"));
  auto rep = residue_sum_along_curve_report(S, w, Y);
  EXPECT_TRUE(rep.sum.is_zero());
  ASSERT_EQ(rep.terms.size(), 2u);
  EXPECT_EQ(rep.terms[0].second.value(), 1u);
  EXPECT_EQ(rep.terms[1].second.value(), 2u);
  EXPECT_TRUE(residue_sum_along_curve(S, form_make(S, parse_function(S, "(X+Z)/(X+2*Z)")), Y).is_zero());
}

TEST(ReciprocityAlongCurve, DegreeTwoPointNeedsTrace) {
  // X^2 + Z^2 is irreducible over F_3 and meets Y = 0 in one point of degree 2
  Surface S = surface_make(Model::P2, 3);
  Curve Y = parse_curve(S, "Y");
  GlobalForm w = form_make(S, parse_function(S, "X*Z^2/(Y*(X^2 + Z^2))"));
  auto rep = residue_sum_along_curve_report(S, w, Y);
  EXPECT_TRUE(rep.sum.is_zero());
  bool saw_quadratic = false;
  for (const auto& [x, r] : rep.terms) {
    if (x.degree != 2) continue;
    saw_quadratic = true;
    Flag fl = flag_make(S, x, Y);
    const FieldElem raw = local_residue(S, w, fl);
    EXPECT_EQ(raw.field().order(), 9u);
    EXPECT_EQ(trace_to_base(S, raw), r);
    // the untraced residue is not in F_3 on its own
  }
  EXPECT_TRUE(saw_quadratic);
}

TEST(Reciprocity, RandomCorpus) {
  std::mt19937 rng(77);
  for (auto m : {Model::P2, Model::P1xP1})
    for (int q : {2, 3, 5}) {
      Surface S = surface_make(m, q);
      int along = 0, around = 0, attempts = 0, nonzero_terms = 0;
      while ((along < 25 || around < 25) && attempts < 400) {
        ++attempts;
        auto w = random_global_form(S, rng);
        if (!w) continue;
        auto curves = polar_support(S, *w);
        bool ok = true;
        for (const auto& D : curves) {
          try {
            auto rep = residue_sum_along_curve_report(S, *w, D);
            for (const auto& t : rep.terms) nonzero_terms += !t.second.is_zero();
            FieldElem s = rep.sum;
            EXPECT_TRUE(s.is_zero()) << w->coefficient.to_string(S) << " along " << curve_text(S, D);
          } catch (const unsupported&) {
            ok = false;
          }
        }
        if (ok) ++along;
        // around each intersection point of two polar curves
        for (std::size_t i = 0; i + 1 < curves.size() && ok; ++i)
          for (const auto& x : intersection_support(S, curves[i], curves[i + 1])) {
            std::vector<Curve> through;
            for (const auto& c : curves)
              if (point_on(c, x)) through.push_back(c);
            try {
              FieldElem s = residue_sum_around_point(S, *w, x, through);
              EXPECT_TRUE(s.is_zero()) << w->coefficient.to_string(S) << " at " << point_text(S, x);
              ++around;
            } catch (const unsupported&) {
            }
          }
      }
      EXPECT_GE(along, 25) << model_name(m) << " q=" << q;
      EXPECT_GE(around, 25) << model_name(m) << " q=" << q;
      EXPECT_GE(nonzero_terms, 10) << model_name(m) << " q=" << q;
    }
}

TEST(AdelicPairing, Examples) {
  Surface S = surface_make(Model::P2, 2);
  ClosedPoint o{S.base, {0, 0, 1}, 1};
  Flag fl = flag_make(S, o, parse_curve(S, "Y"));
  AdeleFragment a, b, c;
  a.set(fl, LaurentSeries2::monomial(S.base, 0, -1));
  b.set(fl, LaurentSeries2::monomial(S.base, -1, 0));
  EXPECT_EQ(adelic_pairing(S, a, b).value(), 1u);
  EXPECT_EQ(adelic_pairing(S, b, a).value(), 1u);
  Flag other = flag_make(S, o, parse_curve(S, "X"));
  c.set(other, LaurentSeries2::monomial(S.base, -1, -1));
  EXPECT_EQ(adelic_pairing(S, a, c).value(), 0u);
}

TEST(AdelicPairing, BilinearSymmetric) {
  std::mt19937 rng(8);
  Surface S = surface_make(Model::P2, 5);
  Curve D = parse_curve(S, "Y*Z - X^2");
  auto pts = points_on_curve(S, D, 2);
  std::vector<Flag> flags;
  for (std::size_t i = 0; i < pts.size(); i += 2) flags.push_back(flag_make(S, pts[i], D));
  auto random_fragment = [&] {
    AdeleFragment f;
    for (const auto& fl : flags) {
      LaurentSeries2 s = LaurentSeries2::zero(fl.field());
      for (int k = 0; k < 4; ++k)
        s = s + LaurentSeries2::monomial(fl.field(), static_cast<int>(rng() % 5) - 2, static_cast<int>(rng() % 4) - 2,
                                         rng() % fl.field().order());
      f.set(fl, s);
    }
    return f;
  };
  for (int i = 0; i < 10; ++i) {
    AdeleFragment a = random_fragment(), b = random_fragment(), c = random_fragment();
    EXPECT_EQ(adelic_pairing(S, a, b), adelic_pairing(S, b, a));
    AdeleFragment bc;
    for (const auto& fl : flags) bc.set(fl, *b.find(fl) + *c.find(fl));
    EXPECT_EQ(adelic_pairing(S, a, bc), adelic_pairing(S, a, b) + adelic_pairing(S, a, c));
    AdeleFragment b3;
    for (const auto& fl : flags) b3.set(fl, b.find(fl)->scale(3));
    EXPECT_EQ(adelic_pairing(S, a, b3), adelic_pairing(S, a, b) * FieldElem(S.base, 3));
  }
}
