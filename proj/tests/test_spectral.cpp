#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lmifeas/spectral.hpp"
#include "test_helpers.hpp"

using namespace lmifeas;
using lmifeas::testing::random_sym;

namespace {

double orthogonality_error(const EigDecomposition& e) {
  const std::size_t n = e.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dot(e.vector(i), e.vector(j)) - (i == j ? 1.0 : 0.0);
      s += d * d;
    }
  return std::sqrt(s);
}

double reconstruction_error(const SymMatrix& s, const EigDecomposition& e) {
  SymMatrix r(s.dim());
  for (std::size_t k = 0; k < e.dim(); ++k) r.add_scaled(SymMatrix::outer(e.vector(k)), e.eigenvalues[k]);
  return frobenius_norm(s - r);
}

}  // namespace

TEST(EigSym, DiagonalCase) {
  const auto e = eig_sym(SymMatrix::diagonal({3.0, -1.0}));
  EXPECT_DOUBLE_EQ(e.eigenvalues[0], 3.0);
  EXPECT_DOUBLE_EQ(e.eigenvalues[1], -1.0);
  EXPECT_DOUBLE_EQ(e.v(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(e.v(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(e.v(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(e.v(1, 1), 1.0);
}

TEST(EigSym, SwapMatrix) {
  // characteristic polynomial λ² − 1
  const auto e = eig_sym(SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues[1], -1.0, 1e-15);
  EXPECT_NEAR(e.v(0, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(e.v(1, 0), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(EigSym, OneByOne) {
  const auto e = eig_sym(SymMatrix::diagonal({5.0}));
  EXPECT_EQ(e.eigenvalues, Vector{5.0});
  EXPECT_EQ(e.v(0, 0), 1.0);
}

TEST(EigSym, RejectsNonFinite) {
  SymMatrix s(2);
  s.set(0, 1, std::numeric_limits<double>::quiet_NaN());
  EXPECT_THROW(eig_sym(s), NonFiniteInput);
  s.set(0, 1, std::numeric_limits<double>::infinity());
  EXPECT_THROW(lambda_max(s), NonFiniteInput);
  EXPECT_THROW(project_neg_semidef(s), NonFiniteInput);
  EXPECT_THROW(norms(s), NonFiniteInput);
}

TEST(EigSym, RandomReconstructionAndOrthogonality) {
  Lcg64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 30);
    const double scale = trial % 3 == 0 ? 100.0 : 1.0;
    const SymMatrix s = random_sym(rng, n, scale);
    const auto e = eig_sym(s);
    for (std::size_t k = 1; k < n; ++k) EXPECT_GE(e.eigenvalues[k - 1], e.eigenvalues[k]);
    EXPECT_LE(orthogonality_error(e), 1e-10 * static_cast<double>(n)) << "n=" << n;
    EXPECT_LE(reconstruction_error(s, e), 1e-10 * std::max(1.0, frobenius_norm(s))) << "n=" << n;
  }
}

TEST(EigSym, DeterministicAndSignNormalized) {
  Lcg64 rng(7);
  const SymMatrix s = random_sym(rng, 12);
  const auto a = eig_sym(s);
  const auto b = eig_sym(s);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.vectors, b.vectors);
  for (std::size_t k = 0; k < a.dim(); ++k) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (std::abs(a.v(i, k)) > 1e-12) {
        EXPECT_GT(a.v(i, k), 0.0);
        break;
      }
    }
  }
}

TEST(EigSym, RepeatedEigenvalues) {
  // Q diag(2,2,−1) Qᵀ with a Householder Q
  const Vector u{1.0, 2.0, 2.0};
  SymMatrix h = SymMatrix::identity(3);
  h.add_scaled(SymMatrix::outer(u), -2.0 / 9.0);
  const SymMatrix d = SymMatrix::diagonal({2.0, 2.0, -1.0});
  SymMatrix s(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < 3; ++k) v += h(i, k) * d(k, k) * h(j, k);
      s.set(i, j, v);
    }
  const auto e = eig_sym(s);
  EXPECT_NEAR(e.eigenvalues[0], 2.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues[1], 2.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues[2], -1.0, 1e-12);
  EXPECT_LE(reconstruction_error(s, e), 1e-12);
}

TEST(LambdaMax, Examples) {
  auto a = lambda_max(SymMatrix::diagonal({2.0, -7.0}));
  EXPECT_EQ(a.value, 2.0);
  EXPECT_EQ(a.vector, (Vector{1.0, 0.0}));

  auto b = lambda_max(SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_NEAR(b.value, 1.0, 1e-15);
  EXPECT_NEAR(std::abs(b.vector[0]), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.vector[0], b.vector[1], 1e-15);

  auto c = lambda_max(SymMatrix(3));
  EXPECT_EQ(c.value, 0.0);
  EXPECT_EQ(c.vector, (Vector{1.0, 0.0, 0.0}));
}

TEST(LambdaMax, EigenEquationOnRandomMatrices) {
  Lcg64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix s = random_sym(rng, 2 + static_cast<std::size_t>(trial % 20));
    const auto top = lambda_max(s);
    EXPECT_NEAR(norm2(top.vector), 1.0, 1e-12);
    Vector r = s.apply(top.vector);
    axpy(-top.value, top.vector, r);
    EXPECT_LE(norm2(r), 1e-9 * frobenius_norm(s));
    // no Rayleigh quotient exceeds the top eigenvalue
    const Vector probe = lmifeas::testing::random_vec(rng, s.dim());
    EXPECT_LE(dot(probe, s.apply(probe)) / dot(probe, probe), top.value + 1e-12);
  }
}

TEST(ProjectNegSemidef, Examples) {
  auto a = project_neg_semidef(SymMatrix::diagonal({2.0, -1.0}));
  EXPECT_EQ(a.proj, SymMatrix::diagonal({0.0, -1.0}));
  EXPECT_EQ(a.residual, SymMatrix::diagonal({2.0, 0.0}));

  const SymMatrix nsd = SymMatrix::diagonal({-1.0, -2.0});
  auto b = project_neg_semidef(nsd);
  EXPECT_EQ(b.proj, nsd);
  EXPECT_EQ(b.residual, SymMatrix(2));

  auto c = project_neg_semidef(SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  const SymMatrix want_proj = SymMatrix::from_rows({{-0.5, 0.5}, {0.5, -0.5}});
  const SymMatrix want_res = SymMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  EXPECT_LE(lmifeas::testing::max_abs_diff(c.proj, want_proj), 1e-15);
  EXPECT_LE(lmifeas::testing::max_abs_diff(c.residual, want_res), 1e-15);
}

TEST(ProjectNegSemidef, ConeProperties) {
  Lcg64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 30);
    const SymMatrix s = random_sym(rng, n);
    const auto split = project_neg_semidef(s);
    // idempotence
    const auto again = project_neg_semidef(split.proj);
    EXPECT_LE(lmifeas::testing::max_abs_diff(again.proj, split.proj), 1e-9);
    // signs
    EXPECT_LE(lambda_max(split.proj).value, 1e-9);
    EXPECT_GE(-lambda_max(-1.0 * split.residual).value, -1e-9);
    // complementarity and Pythagoras
    EXPECT_LE(std::abs(frobenius_inner(split.proj, split.residual)), 1e-9);
    const double lhs = frobenius_inner(s, s);
    const double rhs = frobenius_inner(split.proj, split.proj) + frobenius_inner(split.residual, split.residual);
    EXPECT_LE(std::abs(lhs - rhs), 1e-8 * std::max(1.0, lhs));
    // nonexpansive
    const SymMatrix t = random_sym(rng, n);
    const double moved = frobenius_norm(split.proj - project_neg_semidef(t).proj);
    EXPECT_LE(moved, frobenius_norm(s - t) + 1e-9);
  }
}

TEST(Norms, Examples) {
  auto a = norms(SymMatrix::identity(2));
  EXPECT_DOUBLE_EQ(a.fro, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(a.spectral, 1.0);
  auto b = norms(SymMatrix::diagonal({3.0, -4.0}));
  EXPECT_DOUBLE_EQ(b.fro, 5.0);
  EXPECT_DOUBLE_EQ(b.spectral, 4.0);
  auto c = norms(SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_DOUBLE_EQ(c.fro, std::sqrt(2.0));
  EXPECT_NEAR(c.spectral, 1.0, 1e-15);
}

TEST(SymMatrix, SymmetryByConstruction) {
  SymMatrix s(3);
  s.set(2, 0, 4.5);
  EXPECT_EQ(s(0, 2), 4.5);
  EXPECT_THROW(SymMatrix::from_rows({{0.0, 1.0}, {1.1, 0.0}}), InvalidParameter);
  EXPECT_NO_THROW(SymMatrix::from_rows({{0.0, 1.0}, {1.0 + 1e-14, 0.0}}));
}
