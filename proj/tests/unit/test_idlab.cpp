#include <gtest/gtest.h>

#include <cmath>

#include "spectral/error.hpp"
#include "spectral/idlab.hpp"

using namespace spectral;

namespace {

MaxAffineFn l1(std::size_t n) { return MaxAffineFn::make(n, {{QVec(n, 1), 0}}, {}, SymmetryMode::signed_perm, "l1"); }

std::shared_ptr<PolyhedralSet> x_axis() {
  HPolyhedron h;
  h.n = 2;
  h.a = {{0, 1}, {0, -1}};
  h.b = {0, 0};
  return std::make_shared<PolyhedralSet>(h, "line", SymmetryMode::plain);
}

}  // namespace

TEST(Moreau, ConvexSetsPass) {
  for (auto q : {unit_box(3), nonpositive_orthant(3), sum_halfspace(3)}) {
    auto r = moreau_gradient_probe(*q, 100, 1);
    EXPECT_TRUE(r.pass) << q->name() << " " << r.measured;
    EXPECT_EQ(r.trials, 100);
  }
}

TEST(Moreau, AmbiguousPointThrows) {
  FiniteSet two({{-1}, {1}}, "two");
  EXPECT_THROW(moreau_gradient_check(two, Vec{0}), AmbiguityError);
}

TEST(ProjectionDerivative, OrthantAndLine) {
  std::vector<DirectionDefects> out;
  auto r = projection_derivative_check(*nonpositive_orthant(2), QVec{0, -1}, 10, 2,
                                       {{1, 0}, {0, 1}}, {1e-2, 1e-3, 1e-4}, 1e-4, &out);
  EXPECT_TRUE(r.pass) << r.detail;
  ASSERT_GE(out.size(), 2u);
  EXPECT_TRUE(out[0].normal);
  EXPECT_FALSE(out[1].normal);
  auto line = projection_derivative_check(*x_axis(), QVec{0, 0}, 10, 3, {{0, 1}, {1, 0}});
  EXPECT_TRUE(line.pass) << line.detail;
}

TEST(ProxRegularity, ConvexPasses) {
  auto r = prox_regularity_probe(*unit_box(2), Vec{1, 0.5}, 1.0, 50, 4);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.measured, kMinimizerDiameter);
}

TEST(ProxRegularity, TwoPointRadius) {
  FiniteSet two({{-1}, {1}}, "two");
  EXPECT_TRUE(prox_regularity_probe(two, Vec{1}, 0.5, 50, 5).pass);
  auto wide = prox_regularity_probe(two, Vec{1}, 1.5, 50, 5);
  EXPECT_FALSE(wide.pass);
  EXPECT_NEAR(wide.measured, 2.0, 1e-9);
  EXPECT_NEAR(wide.worst_input[0], 0.0, 1e-9);
}

TEST(ProxRegularity, SphereCentreFails) {
  Sphere s(2, 1.0);
  auto r = prox_regularity_probe(s, Vec{0, 0}, 0.5, 20, 6);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(prox_regularity_probe(s, Vec{1, 0}, 0.5, 20, 6).pass);
}

TEST(ProxRegularity, LiftedAgreesWithVector) {
  FiniteSet two({{-1}, {1}}, "two");
  auto q = unit_box(2);
  EXPECT_EQ(prox_regularity_probe(*q, Vec{1, 0.5}, 1.0, 30, 7).pass,
            lifted_prox_regularity_probe(*q, Vec{1, 0.5}, 1.0, 30, 7).pass);
  EXPECT_EQ(prox_regularity_probe(two, Vec{1}, 0.5, 30, 7).pass,
            lifted_prox_regularity_probe(two, Vec{1}, 0.5, 30, 7).pass);
  EXPECT_EQ(prox_regularity_probe(two, Vec{1}, 1.5, 30, 7).pass,
            lifted_prox_regularity_probe(two, Vec{1}, 1.5, 30, 7).pass);
}

TEST(Identifiability, GeneratorNames) {
  for (auto g : {SequenceGenerator::prox_path, SequenceGenerator::random_neighbor, SequenceGenerator::adversarial})
    EXPECT_EQ(parse_generator(to_string(g)), g);
  EXPECT_THROW(parse_generator("nope"), InputError);
}

TEST(Identifiability, L1AxisRelativeInterior) {
  auto f = l1(2);
  auto s = stratify(f);
  QVec xbar{1, 0};
  auto m = s.locate(f, xbar);
  ASSERT_TRUE(m.has_value());
  for (auto g : {SequenceGenerator::prox_path, SequenceGenerator::random_neighbor, SequenceGenerator::adversarial}) {
    auto r = identifiability_test(f, s, *m, xbar, QVec{1, Rational(3, 10)}, g, 10, 8);
    EXPECT_TRUE(r.pass) << to_string(g) << " " << r.detail;
  }
}

TEST(Identifiability, L1AxisBoundarySubgradientFails) {
  auto f = l1(2);
  auto s = stratify(f);
  QVec xbar{1, 0};
  auto m = *s.locate(f, xbar);
  auto r = identifiability_test(f, s, m, xbar, QVec{1, 1}, SequenceGenerator::adversarial, 10, 9);
  EXPECT_FALSE(r.pass);
  EXPECT_THROW(identifiability_test(f, s, m, xbar, QVec{1, 2}, SequenceGenerator::prox_path, 1, 9),
               InputError);
}

TEST(Identifiability, Lifted) {
  SpectralFn f(l1(2), SpectralKind::eigenvalue);
  const auto& s = f.strata();
  auto m = *s.locate(f.base(), QVec{1, 0});
  auto ok = lifted_identifiability_test(f, m, QVec{1, 0}, QVec{1, Rational(3, 10)},
                                        SequenceGenerator::prox_path, 5, 10);
  EXPECT_TRUE(ok.pass) << ok.detail;
  auto bad = lifted_identifiability_test(f, m, QVec{1, 0}, QVec{1, 1}, SequenceGenerator::adversarial, 5, 10);
  EXPECT_FALSE(bad.pass);
}

TEST(PartialSmoothness, EveryL1Stratum) {
  auto f = l1(2);
  auto s = stratify(f);
  for (std::size_t i = 0; i < s.strata.size(); ++i) {
    PartialSmoothness ps;
    auto r = partial_smoothness_check(f, s, i, s.strata[i].representative, &ps);
    EXPECT_TRUE(ps.pass()) << i << " " << r.detail;
  }
}

TEST(PartialSmoothness, AxisThroughOriginFails) {
  // the x-axis is not a manifold along which |x|_1 is smooth at 0
  auto f = l1(2);
  auto axis = AffineSpace::from_generators(QVec{0, 0}, {{1, 0}});
  PartialSmoothness ps;
  partial_smoothness_check(f, axis, QVec{0, 0}, &ps);
  EXPECT_FALSE(ps.pass());
  auto at_one = partial_smoothness_check(f, axis, QVec{1, 0}, &ps);
  EXPECT_TRUE(ps.pass()) << at_one.detail;
}

TEST(LocalUniqueness, AxisRepresentations) {
  auto f = l1(2);
  auto m1 = AffineSpace::from_generators(QVec{1, 0}, {{1, 0}});
  auto m2 = AffineSpace::from_generators(QVec{-3, 0}, {{1, 0}});
  auto v = local_uniqueness_check(f, m1, m2, QVec{1, 0}, 0.5, 200, 11);
  EXPECT_TRUE(v.applicable);
  EXPECT_TRUE(v.agree);
  // l1 is not smooth along the diagonal direction through (1,0)
  auto diag = AffineSpace::from_generators(QVec{1, 0}, {{1, 1}});
  auto w = local_uniqueness_check(f, m1, diag, QVec{1, 0}, 0.5, 50, 11);
  EXPECT_FALSE(w.applicable);
}

TEST(ProximalIdentification, SumAbs) {
  SpectralFn f(l1(3), SpectralKind::eigenvalue);
  Matrix x0 = Matrix::diagonal(Vec{1.2, 0.3, -0.2});
  auto tr = proximal_identification_run(f, x0, 0.5, 50);
  ASSERT_TRUE(tr.identified_at.has_value());
  EXPECT_EQ(tr.iterates.back().pattern, "000");
  EXPECT_EQ(*tr.identified_at, 3u);
  EXPECT_TRUE(tr.fixed_point);
}

TEST(ProximalIdentification, FixedPointStart) {
  SpectralFn f(l1(2), SpectralKind::eigenvalue);
  auto tr = proximal_identification_run(f, Matrix(2, 2), 0.5, 50);
  ASSERT_TRUE(tr.identified_at.has_value());
  EXPECT_EQ(*tr.identified_at, 0u);
  EXPECT_TRUE(tr.fixed_point);
}

TEST(ProximalIdentification, ShortRunNotIdentified) {
  SpectralFn f(l1(2), SpectralKind::eigenvalue);
  auto tr = proximal_identification_run(f, Matrix::diagonal(Vec{5, 3}), 0.1, 1);
  EXPECT_EQ(tr.iterates.size(), 2u);
  EXPECT_FALSE(tr.identified_at.has_value());
}

TEST(EigenPattern, Format) {
  EXPECT_EQ(eigen_pattern(Vec{1, 0, 0}, 1e-9), "+|00");
  EXPECT_EQ(eigen_pattern(Vec{2, 2, -1}, 1e-9), "++|-");
}

TEST(NumericConjugate, Quartic) {
  auto quartic = [](const Vec& x) {
    double s = 0;
    for (double v : x) s += v * v * v * v / 4;
    return s;
  };
  // (|x|^4/4)* (y) = 3/4 |y|^{4/3} coordinatewise
  for (Vec y : {Vec{1, 1}, Vec{0, 0}, Vec{-1, 0.5}}) {
    double want = 0;
    for (double v : y) want += 0.75 * std::pow(std::abs(v), 4.0 / 3.0);
    EXPECT_NEAR(numeric_conjugate(quartic, y), want, 1e-6);
  }
}

TEST(NumericConjugate, UnboundedIsInconclusive) {
  auto lin = [](const Vec& x) { return x[0]; };
  EXPECT_THROW(numeric_conjugate(lin, Vec{2}), InconclusiveError);
}
