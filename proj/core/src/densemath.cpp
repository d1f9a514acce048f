#include "qubitizer/densemath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"

namespace qubitizer {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                    "x" + std::to_string(b.cols()));
  }
}

double off_diagonal_mass(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) sum += std::norm(a(r, c));
    }
  }
  return std::sqrt(sum);
}

double frobenius(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& x : a.entries()) sum += std::norm(x);
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimMismatch, "entry count does not match rows*cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<cplx> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::kDimMismatch, "ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& x : out.entries_) x = std::conj(x);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (auto& x : entries_) x *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimMismatch, "matrix product inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx x = a(r, k);
      if (x == cplx{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += x * b(k, c);
    }
  }
  return out;
}

ComplexMatrix block(const ComplexMatrix& a, std::size_t r0, std::size_t c0,
                    std::size_t rows, std::size_t cols) {
  if (r0 + rows > a.rows() || c0 + cols > a.cols()) {
    throw Error(ErrorCode::kDimMismatch, "block exceeds matrix bounds");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = a(r0 + r, c0 + c);
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx x = a(ar, ac);
      if (x == cplx{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
    }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (!h.square()) throw Error(ErrorCode::kDimMismatch, "hermiticity of non-square");
  return max_abs_diff(h, h.adjoint());
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.square()) throw Error(ErrorCode::kDimMismatch, "unitarity of non-square");
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  if (!h.square()) throw Error(ErrorCode::kDimMismatch, "eigensolver needs a square matrix");
  if (hermiticity_defect(h) > tol::kHermitian) {
    throw Error(ErrorCode::kNotHermitian,
                "defect " + std::to_string(hermiticity_defect(h)));
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  // Symmetrize so the rotations act on an exactly Hermitian matrix.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, frobenius(a));
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  while (off_diagonal_mass(a) > tol::kJacobi * scale) {
    if (++sweep > kMaxSweeps) {
      throw Error(ErrorCode::kNoConvergence, "Jacobi sweep budget exhausted");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = std::conj(apq) / r;  // e^{-i arg a_pq}
        const double zeta = (aqq - app) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, phase) * [[c, s], [-s, c]]
        const cplx g_pp = c;
        const cplx g_pq = s;
        const cplx g_qp = -s * phase;
        const cplx g_qq = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  const EigenSystem es = hermitian_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix scaled = es.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx phase = std::polar(1.0, t * es.eigenvalues[k]);
    for (std::size_t r = 0; r < n; ++r) scaled(r, k) *= phase;
  }
  return scaled * es.eigenvectors.adjoint();
}

double spectral_norm(const ComplexMatrix& a) {
  const EigenSystem es = hermitian_eig(a.adjoint() * a);
  if (es.eigenvalues.empty()) return 0.0;
  return std::sqrt(std::max(0.0, es.eigenvalues.back()));
}

cplx determinant(const ComplexMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::kDimMismatch, "determinant of non-square");
  ComplexMatrix lu = a;
  const std::size_t n = a.rows();
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    }
    if (std::abs(lu(pivot, col)) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(pivot, c), lu(col, c));
      det = -det;
    }
    det *= lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = lu(r, col) / lu(col, col);
      for (std::size_t c = col; c < n; ++c) lu(r, c) -= f * lu(col, c);
    }
  }
  return det;
}

StateVector::StateVector(std::vector<cplx> amplitudes)
    : amplitudes_(std::move(amplitudes)), normalized_(true) {
  if (std::abs(norm() - 1.0) > tol::kNorm) {
    throw Error(ErrorCode::kNotNormalized, "state norm " + std::to_string(norm()));
  }
}

StateVector StateVector::raw(std::vector<cplx> amplitudes) {
  StateVector v;
  v.amplitudes_ = std::move(amplitudes);
  v.normalized_ = false;
  return v;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorCode::kOutOfRange, "basis index beyond dimension");
  std::vector<cplx> amps(dim);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector StateVector::conj() const {
  StateVector out = *this;
  for (auto& a : out.amplitudes_) a = std::conj(a);
  return out;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimMismatch, "inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

StateVector apply(const ComplexMatrix& m, const StateVector& v) {
  if (m.cols() != v.dim()) throw Error(ErrorCode::kDimMismatch, "matrix-vector");
  std::vector<cplx> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return StateVector::raw(std::move(out));
}

cplx expectation(const ComplexMatrix& m, const StateVector& psi) {
  return inner(psi, apply(m, psi));
}

ComplexMatrix outer(const StateVector& a, const StateVector& b) {
  ComplexMatrix out(a.dim(), b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < b.dim(); ++c) out(r, c) = a[r] * std::conj(b[c]);
  return out;
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix out(rows, cols);
  for (auto& x : out.entries()) {
    const double re = normal(rng);
    x = cplx(re, normal(rng));
  }
  return out;
}

StateVector random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> amps(dim);
  double norm2 = 0.0;
  for (auto& a : amps) {
    const double re = normal(rng);
    a = cplx(re, normal(rng));
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return StateVector(std::move(amps));
}

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace qubitizer
