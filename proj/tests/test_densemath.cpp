#include "test_util.hpp"

#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"

using namespace qubitizer;
using qt::eye;

TEST(Kron, IdentityTimesIdentity) { EXPECT_EQ(kron(eye(2), eye(2)), eye(4)); }

TEST(Kron, XLeftIsMostSignificant) {
  const ComplexMatrix k = kron(qt::pauli_x(), eye(2));
  ComplexMatrix want(4, 4);
  want(0, 2) = want(1, 3) = want(2, 0) = want(3, 1) = 1.0;
  EXPECT_EQ(k, want);
}

TEST(Kron, MTimesN) {
  const ComplexMatrix m = ComplexMatrix::from_rows({{1, 0}, {0, 0}});
  const ComplexMatrix n = ComplexMatrix::from_rows({{0, 0}, {0, 1}});
  ComplexMatrix want(4, 4);
  want(1, 1) = 1.0;
  EXPECT_EQ(kron(m, n), want);
}

TEST(Kron, AssociativeAndMixedProduct) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng);
    const auto c = random_matrix(2, 2, rng), d = random_matrix(2, 2, rng);
    EXPECT_MATRIX_NEAR(kron(kron(a, b), c), kron(a, kron(b, c)), 1e-12);
    EXPECT_MATRIX_NEAR(kron(a, b) * kron(c, d), kron(a * c, b * d), 1e-12);
  }
}

TEST(HermitianEig, PauliZ) {
  const auto e = hermitian_eig(qt::pauli_z());
  ASSERT_EQ(e.eigenvalues.size(), 2u);
  EXPECT_NEAR(e.eigenvalues[0], -1.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-12);
}

TEST(HermitianEig, Hadamard) {
  const auto e = hermitian_eig(qt::hadamard());
  EXPECT_NEAR(e.eigenvalues[0], -1.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-12);
  // The +1 eigenvector is cos(pi/8)|0> + sin(pi/8)|1>, not |+>.
  const cplx a = e.eigenvectors(0, 1), b = e.eigenvectors(1, 1);
  EXPECT_NEAR(std::abs(a), std::cos(std::numbers::pi / 8), 1e-10);
  EXPECT_NEAR(std::abs(b), std::sin(std::numbers::pi / 8), 1e-10);
}

TEST(HermitianEig, ProjectorN) {
  const auto e = hermitian_eig(ComplexMatrix::from_rows({{0, 0}, {0, 1}}));
  EXPECT_NEAR(e.eigenvalues[0], 0.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-12);
}

TEST(HermitianEig, RandomReconstruction) {
  std::mt19937_64 rng(2);
  for (std::size_t dim : {1u, 2u, 3u, 8u, 16u, 32u}) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const auto e = hermitian_eig(h);
    for (std::size_t i = 1; i < dim; ++i) EXPECT_LE(e.eigenvalues[i - 1], e.eigenvalues[i]);
    EXPECT_LE(unitarity_defect(e.eigenvectors), 1e-10);
    ComplexMatrix lam(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) lam(i, i) = e.eigenvalues[i];
    EXPECT_MATRIX_NEAR(e.eigenvectors * lam * e.eigenvectors.adjoint(), h, 1e-9);
  }
}

TEST(HermitianEig, RejectsNonHermitian) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{0, 1}, {0, 0}});
  try {
    hermitian_eig(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
  }
}

TEST(Expm, DiagonalZ) {
  const double t = 0.37;
  const ComplexMatrix u = expm_hermitian(qt::pauli_z(), t);
  const ComplexMatrix want =
      ComplexMatrix::from_rows({{std::polar(1.0, t), 0}, {0, std::polar(1.0, -t)}});
  EXPECT_MATRIX_NEAR(u, want, 1e-12);
}

TEST(Expm, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(3);
  EXPECT_MATRIX_NEAR(expm_hermitian(random_hermitian(8, rng), 0.0), eye(8), 1e-12);
}

TEST(Expm, RankOneProjector) {
  std::mt19937_64 rng(4);
  const StateVector psi = random_state(8, rng);
  const ComplexMatrix p = outer(psi, psi);
  const double t = 1.3;
  const ComplexMatrix want = p * std::polar(1.0, t) + (eye(8) - p);
  EXPECT_MATRIX_NEAR(expm_hermitian(p, t), want, 1e-10);
}

TEST(Expm, GroupProperty) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t dim : {2u, 4u, 16u}) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const double s = u(rng), t = u(rng);
    const ComplexMatrix es = expm_hermitian(h, s), et = expm_hermitian(h, t);
    EXPECT_MATRIX_NEAR(expm_hermitian(h, s + t), es * et, 1e-9);
    EXPECT_LE(unitarity_defect(es), 1e-9);
  }
}

TEST(SpectralNorm, Examples) {
  EXPECT_NEAR(spectral_norm(eye(4)), 1.0, 1e-12);
  EXPECT_NEAR(spectral_norm(materialize(qt::str("s.sd + h.c."))), 1.0, 1e-12);
  const ComplexMatrix half_comm = commutator(qt::pauli_x(), qt::pauli_z()) * cplx(0.5);
  EXPECT_NEAR(spectral_norm(half_comm), 1.0, 1e-12);
}

TEST(SpectralNorm, SubMultiplicative) {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 30; ++rep) {
    const auto a = random_matrix(4, 4, rng), b = random_matrix(4, 4, rng);
    EXPECT_LE(spectral_norm(a * b), spectral_norm(a) * spectral_norm(b) + 1e-9);
  }
}

TEST(MaxAbsDiff, Examples) {
  EXPECT_EQ(max_abs_diff(eye(2), eye(2)), 0.0);
  EXPECT_NEAR(max_abs_diff(qt::pauli_x(), qt::pauli_z()), 1.0, 1e-15);
  std::mt19937_64 rng(7);
  const ComplexMatrix a = random_matrix(3, 3, rng);
  ComplexMatrix b = a;
  b(0, 0) += 1e-11;
  EXPECT_NEAR(max_abs_diff(a, b), 1e-11, 1e-15);
}

TEST(MaxAbsDiff, DimMismatch) {
  try {
    max_abs_diff(eye(2), eye(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
}

TEST(StateVector, Normalization) {
  EXPECT_THROW(StateVector({1.0, 1.0}), Error);
  EXPECT_FALSE(StateVector::raw({1.0, 1.0}).normalized());
  EXPECT_TRUE(StateVector::basis(4, 2).normalized());
  std::mt19937_64 rng(8);
  EXPECT_NEAR(random_state(16, rng).norm(), 1.0, tol::kNorm);
}

TEST(Determinant, Simple) {
  EXPECT_NEAR(std::abs(determinant(qt::pauli_z()) - cplx(-1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(determinant(eye(8)) - cplx(1.0)), 0.0, 1e-12);
}
