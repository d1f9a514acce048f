#pragma once

// Dense complex linear algebra used as the verification oracle. Nothing on
// the synthesis path calls into this header except lowering, which is the
// bridge between circuits and matrices.

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace qubitizer {

using cplx = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  /// Row-major entries; throws kDimMismatch when the size does not match.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }
  /// Square matrix from nested initializer rows, convenient in tests.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

/// Sub-block [r0, r0+rows) x [c0, c0+cols).
ComplexMatrix block(const ComplexMatrix& a, std::size_t r0, std::size_t c0,
                    std::size_t rows, std::size_t cols);

/// Kronecker product; the left factor owns the most significant index bits.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Commutator ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise max |a_ij - b_ij|; kDimMismatch if shapes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |h - h^dagger| entrywise.
double hermiticity_defect(const ComplexMatrix& h);
/// max |u^dagger u - I| entrywise.
double unitarity_defect(const ComplexMatrix& u);

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, orthonormal
};

/// Cyclic complex Jacobi. Throws kNotHermitian, kNoConvergence.
EigenSystem hermitian_eig(const ComplexMatrix& h);

/// exp(i t h) through the eigendecomposition of h.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

/// Largest singular value, sqrt(max eig(a^dagger a)).
double spectral_norm(const ComplexMatrix& a);

/// LU with partial pivoting.
cplx determinant(const ComplexMatrix& a);

class StateVector {
 public:
  StateVector() = default;
  /// Normalized state; throws kNotNormalized when |psi| differs from 1.
  explicit StateVector(std::vector<cplx> amplitudes);

  /// Raw coefficient list with no normalization requirement.
  static StateVector raw(std::vector<cplx> amplitudes);
  /// Computational basis state |index> of the given dimension.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  bool normalized() const noexcept { return normalized_; }
  double norm() const;

  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }
  cplx& operator[](std::size_t i) { return amplitudes_[i]; }
  std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }

  StateVector conj() const;

 private:
  std::vector<cplx> amplitudes_;
  bool normalized_ = false;
};

cplx inner(const StateVector& a, const StateVector& b);  // <a|b>
StateVector apply(const ComplexMatrix& m, const StateVector& v);
/// <psi| m |psi>
cplx expectation(const ComplexMatrix& m, const StateVector& psi);
ComplexMatrix outer(const StateVector& a, const StateVector& b);  // |a><b|

/// Complex normal amplitudes, normalized.
StateVector random_state(std::size_t dim, std::mt19937_64& rng);
/// (G + G^dagger)/2 with complex normal G.
ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng);
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

}  // namespace qubitizer
