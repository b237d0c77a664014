#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "spectral/error.hpp"
#include "spectral/lift.hpp"
#include "spectral/vector_sets.hpp"

using namespace spectral;

namespace {

MaxAffineFn l1(std::size_t n) { return MaxAffineFn::make(n, {{QVec(n, 1), 0}}, {}, SymmetryMode::signed_perm, "l1"); }
MaxAffineFn fmax(std::size_t n) {
  QVec e(n, 0);
  e[0] = 1;
  return MaxAffineFn::make(n, {{e, 0}}, {}, SymmetryMode::permutation, "max");
}
MaxAffineFn neg_orthant(std::size_t n) {
  QVec e(n, 0);
  e[0] = 1;
  return MaxAffineFn::make(n, {{QVec(n, 0), 0}}, {{e, 0}}, SymmetryMode::permutation, "orthant");
}

Matrix swap2() {
  Matrix x(2, 2);
  x(0, 1) = x(1, 0) = 1;
  return x;
}

}  // namespace

TEST(SpectralFn, SymmetryEnforced) {
  auto plain = MaxAffineFn::make(2, {{QVec{1, 0}, 0}}, {}, SymmetryMode::plain);
  EXPECT_THROW(SpectralFn(plain, SpectralKind::eigenvalue), InputError);
  EXPECT_THROW(SpectralFn(fmax(2), SpectralKind::singular), InputError);
  EXPECT_NO_THROW(SpectralFn(l1(2), SpectralKind::singular));
}

TEST(SpectralValue, Examples) {
  EXPECT_NEAR(spectral_value(SpectralFn(l1(2), SpectralKind::eigenvalue), swap2()), 2.0, 1e-12);
  EXPECT_NEAR(spectral_value(SpectralFn(fmax(3), SpectralKind::eigenvalue), Matrix::identity(3)), 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(spectral_value(SpectralFn(neg_orthant(2), SpectralKind::eigenvalue),
                                        Matrix::diagonal(Vec{1, -1}))));
}

TEST(SpectralValue, OrthogonalInvariance) {
  SpectralFn f(l1(4), SpectralKind::eigenvalue);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    Matrix x = random_symmetric(4, rng);
    Matrix u = random_orthogonal(4, rng);
    EXPECT_NEAR(spectral_value(f, conjugate_by(u, x)), spectral_value(f, x), 1e-9);
  }
}

TEST(SpectralSubdiff, LambdaMaxAtIdentity) {
  SpectralFn f(fmax(2), SpectralKind::eigenvalue);
  auto c = spectral_subdiff(f, Matrix::identity(2));
  EXPECT_EQ(c.vec_subdiff.dim(), 1u);
  EXPECT_TRUE(spectral_subdiff_membership(c, Matrix::diagonal(Vec{0.5, 0.5}), 1e-9));
  EXPECT_FALSE(spectral_subdiff_membership(c, Matrix::diagonal(Vec{2, -1}), 1e-9));
  // trace-1 PSD matrices that are not diagonal are members too
  Matrix v(2, 2);
  v(0, 0) = 0.5;
  v(1, 1) = 0.5;
  v(0, 1) = v(1, 0) = 0.3;
  EXPECT_TRUE(spectral_subdiff_membership(c, v, 1e-9));
  v(0, 1) = v(1, 0) = 0.6;
  EXPECT_FALSE(spectral_subdiff_membership(c, v, 1e-9));
}

TEST(SpectralSubdiff, SingletonGradient) {
  SpectralFn f(l1(2), SpectralKind::eigenvalue);
  auto c = spectral_subdiff(f, Matrix::diagonal(Vec{2, -3}));
  EXPECT_EQ(c.vec_subdiff.dim(), 0u);
  EXPECT_TRUE(spectral_subdiff_membership(c, Matrix::diagonal(Vec{1, -1}), 1e-9));
  EXPECT_TRUE(spectral_ri_aff_rb(c, SubdiffTest::ri, Matrix::diagonal(Vec{1, -1}), 1e-9));
  EXPECT_FALSE(spectral_subdiff_membership(c, Matrix::diagonal(Vec{1, 1}), 1e-9));
}

TEST(SpectralSubdiff, NormalConeAtZero) {
  SpectralFn f(neg_orthant(2), SpectralKind::eigenvalue);
  auto c = spectral_subdiff(f, Matrix(2, 2));
  std::mt19937_64 rng(2);
  Matrix a = random_symmetric(2, rng);
  EXPECT_TRUE(spectral_subdiff_membership(c, a * a.transpose(), 1e-9));
  EXPECT_FALSE(spectral_subdiff_membership(c, Matrix::diagonal(Vec{1, -0.1}), 1e-9));
  EXPECT_THROW(spectral_subdiff(f, Matrix::identity(2)), InputError);
}

TEST(SpectralSubdiff, NonCommutingRejected) {
  SpectralFn f(fmax(2), SpectralKind::eigenvalue);
  auto c = spectral_subdiff(f, Matrix::diagonal(Vec{2, 1}));
  Matrix v = Matrix::diagonal(Vec{1, 0});
  EXPECT_TRUE(spectral_subdiff_membership(c, v, 1e-9));
  v(0, 1) = v(1, 0) = 0.2;
  EXPECT_FALSE(spectral_subdiff_membership(c, v, 1e-9));
}

TEST(SpectralSubdiff, Equivariance) {
  SpectralFn f(l1(3), SpectralKind::eigenvalue);
  std::mt19937_64 rng(3);
  Matrix x = Matrix::diagonal(Vec{1, 0, -2});
  auto c = spectral_subdiff(f, x);
  Matrix v = Matrix::diagonal(Vec{1, 0.4, -1});
  Matrix bad = Matrix::diagonal(Vec{1, 1.4, -1});
  for (int t = 0; t < 5; ++t) {
    Matrix u = random_orthogonal(3, rng);
    auto cu = spectral_subdiff(f, conjugate_by(u, x));
    EXPECT_TRUE(spectral_subdiff_membership(cu, conjugate_by(u, v), 1e-9));
    EXPECT_FALSE(spectral_subdiff_membership(cu, conjugate_by(u, bad), 1e-9));
  }
  EXPECT_TRUE(spectral_subdiff_membership(c, v, 1e-9));
}

TEST(SpectralRiAffRb, LambdaMaxAtIdentity) {
  SpectralFn f(fmax(2), SpectralKind::eigenvalue);
  auto c = spectral_subdiff(f, Matrix::identity(2));
  EXPECT_TRUE(spectral_ri_aff_rb(c, SubdiffTest::ri, Matrix::diagonal(Vec{0.5, 0.5}), 1e-9));
  EXPECT_TRUE(spectral_ri_aff_rb(c, SubdiffTest::rb, Matrix::diagonal(Vec{1, 0}), 1e-9));
  EXPECT_FALSE(spectral_ri_aff_rb(c, SubdiffTest::ri, Matrix::diagonal(Vec{1, 0}), 1e-9));
  EXPECT_TRUE(spectral_ri_aff_rb(c, SubdiffTest::aff, Matrix::diagonal(Vec{2, -1}), 1e-9));
  EXPECT_FALSE(spectral_ri_aff_rb(c, SubdiffTest::aff, Matrix::diagonal(Vec{1, 1}), 1e-9));
}

TEST(SpectralDistance, Examples) {
  auto q = nonpositive_orthant(2);
  EXPECT_NEAR(spectral_distance(*q, Matrix::diagonal(Vec{1, -2})), 1.0, 1e-12);
  EXPECT_NEAR(spectral_distance(*q, Matrix::diagonal(Vec{-1, -2})), 0.0, 1e-12);
  Matrix p = spectral_project(*q, Matrix::diagonal(Vec{1, -2}));
  EXPECT_LE((p - Matrix::diagonal(Vec{0, -2})).frobenius_norm(), 1e-12);
}

TEST(SpectralProject, NegativePartOracle) {
  auto q = nonpositive_orthant(3);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    Matrix x = random_symmetric(3, rng);
    auto e = eig_sym(x);
    // X minus its PSD part
    Matrix want = x;
    for (std::size_t i = 0; i < 3; ++i) {
      if (e.lambda[i] <= 0) continue;
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) want(a, b) -= e.lambda[i] * e.U(i, a) * e.U(i, b);
    }
    Matrix got = spectral_project(*q, x);
    EXPECT_LE((got - want).frobenius_norm(), 1e-8);
    EXPECT_NEAR((x - got).frobenius_norm(), spectral_distance(*q, x), 1e-8);
  }
}

TEST(SpectralProject, BoxAgainstOrbitSamples) {
  auto q = unit_box(3);
  std::mt19937_64 rng(5);
  Matrix x = random_symmetric(3, rng) * 2.0;
  double d = spectral_distance(*q, x);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 200; ++s) {
    Matrix u = random_orthogonal(3, rng);
    // candidate: U^T Diag(P_Q(diag(U X U^T))) U lies in lambda^{-1}(Q)
    Matrix y = u * x * u.transpose();
    Vec dg = q->project(y.diag());
    best = std::min(best, (x - conjugate_by(u, Matrix::diagonal(dg))).frobenius_norm());
  }
  EXPECT_LE(d, best + 1e-9);
}

TEST(SpectralProx, SoftThreshold) {
  SpectralFn f(l1(2), SpectralKind::eigenvalue);
  Matrix p = spectral_prox(f, 1.0, Matrix::diagonal(Vec{2, -0.5}), true);
  EXPECT_LE((p - Matrix::diagonal(Vec{1, 0})).frobenius_norm(), 1e-12);
  std::mt19937_64 rng(6);
  Matrix x = random_symmetric(3, rng);
  SpectralFn g(l1(3), SpectralKind::eigenvalue);
  EXPECT_LE((spectral_prox(g, 1e-6, x) - x).frobenius_norm(), 1e-5);
}

TEST(SpectralProx, OptimalityResidual) {
  std::mt19937_64 rng(7);
  for (const auto& base : {l1(3), fmax(3), neg_orthant(3)}) {
    SpectralFn f(base, SpectralKind::eigenvalue);
    for (int t = 0; t < 5; ++t) {
      Matrix x = random_symmetric(3, rng);
      EXPECT_NO_THROW(spectral_prox(f, 0.7, x, true)) << base.name();
    }
  }
}

TEST(VectorProx, ExactSoftThreshold) {
  auto f = l1(3);
  auto s = stratify(f);
  QVec y = vector_prox(f, s, Rational(1, 2), QVec{2, Rational(1, 4), -1});
  EXPECT_EQ(y, (QVec{Rational(3, 2), 0, Rational(-1, 2)}));
}

TEST(LiftDim, Examples) {
  // {(a,a,b) : a > b}: hull with basis (1,1,0), (0,0,1)
  auto m = AffineSpace::from_generators(QVec{1, 1, 0}, {{1, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(lift_dim(m, QVec{1, 1, 0}).dim_lifted, 4);
  auto pt = AffineSpace::from_generators(QVec{3, 2, 1}, {});
  EXPECT_EQ(lift_dim(pt, QVec{3, 2, 1}).dim_lifted, 3);
  // rank-k face of R^3_+: k free positive coordinates, the rest zero
  for (int k = 0; k <= 3; ++k) {
    QVec rep(3, 0);
    std::vector<QVec> dirs;
    for (int i = 0; i < k; ++i) {
      rep[i] = i + 1;
      QVec e(3, 0);
      e[i] = 1;
      dirs.push_back(e);
    }
    auto h = AffineSpace::from_generators(rep, dirs);
    EXPECT_EQ(lift_dim(h, rep).dim_lifted, k * (k + 1) / 2 + k * (3 - k)) << k;
  }
}

TEST(LiftStratification, OrthantPairing) {
  SpectralFn f(neg_orthant(3), SpectralKind::eigenvalue);
  auto ls = lift_stratification(f);
  ASSERT_EQ(ls.pairs.size(), 4u);
  // rank-k NSD manifolds pair with rank-(n-k) PSD manifolds
  for (const auto& p : ls.pairs) {
    long k = p.primal.base_dim;
    EXPECT_EQ(p.primal.dim_lifted, k * (k + 1) / 2 + k * (3 - k));
    long r = 3 - k;
    EXPECT_EQ(p.dual.dim_lifted, r * (r + 1) / 2 + r * (3 - r));
  }
}

TEST(LiftStratification, L1AllPositiveOrbitPairsWithIdentity) {
  SpectralFn f(l1(2), SpectralKind::eigenvalue);
  auto o = lifted_primal_orbit(f, Matrix::diagonal(Vec{2, 1}));
  ASSERT_TRUE(o.has_value());
  auto d = lifted_dual_orbit(f, Matrix::identity(2));
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*o, *d);
  auto ls = lift_stratification(f);
  EXPECT_EQ(ls.pairs[*o].dual.dim_lifted, 0);
}

TEST(Singular, NuclearNorm) {
  SpectralFn f(l1(2), SpectralKind::singular);
  EXPECT_NEAR(sing_value(f, Matrix::diagonal(Vec{2, -3})), 5.0, 1e-12);
  auto c = sing_subdiff(f, Matrix::diagonal(Vec{2, -3}));
  // U^T Diag(1,1) V for X = Diag(2,-3) is Diag(1,-1)
  EXPECT_TRUE(sing_subdiff_membership(c, Matrix::diagonal(Vec{1, -1}), 1e-9));
  EXPECT_FALSE(sing_subdiff_membership(c, Matrix::diagonal(Vec{1, 1}), 1e-9));
}

TEST(Singular, RankDeficientSubdiff) {
  SpectralFn f(l1(2), SpectralKind::singular);
  Matrix x(3, 2);
  x(0, 0) = 2;
  auto c = sing_subdiff(f, x);
  // d|X|_* = {e1 e1^T + W : W acting on the complement, |W|_2 <= 1}
  Matrix g(3, 2);
  g(0, 0) = 1;
  g(1, 1) = 0.3;
  g(2, 1) = -0.5;
  EXPECT_TRUE(sing_subdiff_membership(c, g, 1e-9));
  g(2, 1) = -1.0;
  EXPECT_FALSE(sing_subdiff_membership(c, g, 1e-9));
  g(2, 1) = 0;
  g(0, 1) = 0.2;
  EXPECT_FALSE(sing_subdiff_membership(c, g, 1e-9));
}

TEST(Singular, RankOneProjection) {
  SparsitySet q(2, 1);
  Matrix p = sing_project(q, Matrix::diagonal(Vec{3, 1}));
  EXPECT_LE((p - Matrix::diagonal(Vec{3, 0})).frobenius_norm(), 1e-12);
  EXPECT_LE(sing_project(*unit_box(2), Matrix(2, 2)).frobenius_norm(), 0.0);
}

TEST(SpectralSubdiff, RoundoffTiesBecomeExact) {
  // max |x_i|: eigenvalues 2+e and -(2+e) with generic e are tied in absolute value
  auto linf = MaxAffineFn::make(3, {{QVec{1, 0, 0}, 0}}, {}, SymmetryMode::signed_perm, "linf");
  SpectralFn f(linf, SpectralKind::eigenvalue);
  std::mt19937_64 rng(9);
  Matrix u = random_orthogonal(3, rng);
  double a = 2.0000009227965165;
  Matrix x = conjugate_by(u, Matrix::diagonal(Vec{a, 1.3e-4, -a}));
  auto c = spectral_subdiff(f, x);
  EXPECT_EQ(c.vec_subdiff.points().size(), 2u);
  EXPECT_TRUE(spectral_subdiff_membership(c, conjugate_by(u, Matrix::diagonal(Vec{0.5, 0, -0.5})), 1e-9));
  // sum-halfspace indicator: a spectrum summing to 1 up to roundoff is on the boundary
  auto half = MaxAffineFn::make(3, {{QVec(3, 0), 0}}, {{QVec(3, 1), 1}}, SymmetryMode::permutation);
  SpectralFn g(half, SpectralKind::eigenvalue);
  Matrix y = conjugate_by(u, Matrix::diagonal(Vec{0.99909662070961924, 0.019247521518384669, -0.018344142228004488}));
  auto d = spectral_subdiff(g, y);
  EXPECT_EQ(d.vec_subdiff.rays().size(), 1u);
  EXPECT_TRUE(spectral_subdiff_membership(d, Matrix::identity(3) * 0.7, 1e-9));
}
