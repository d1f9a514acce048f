#pragma once

// Tensor strings over the eight single-qubit factors and their spectral
// classification. Factor index 0 is the most significant qubit.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qubitizer/densemath.hpp"

namespace qubitizer {

enum class Factor { I, X, Y, Z, N, M, Sigma, SigmaDag };

/// n = |1><1|, m = |0><0|, sigma = |1><0|, sigma_dagger = |0><1|.
ComplexMatrix factor_matrix(Factor f);
Factor factor_dagger(Factor f);
std::string_view factor_token(Factor f);
bool is_pauli(Factor f);       // X, Y, Z
bool is_transition(Factor f);  // sigma, sigma_dagger
bool is_flag(Factor f);        // n, m

struct OperatorString {
  std::vector<Factor> factors;
  cplx coefficient{1.0, 0.0};
  bool plus_hc = false;

  std::size_t num_qubits() const noexcept { return factors.size(); }
  bool has_transition() const;

  friend bool operator==(const OperatorString&, const OperatorString&) = default;
};

/// coefficient * (tensor of factors), plus its adjoint when plus_hc is set.
ComplexMatrix materialize(const OperatorString& s);

/// Signed real weight of a Hermitian string: |c| for transition strings
/// with +h.c., 2 Re c for other +h.c. strings, Re c otherwise.
double term_weight(const OperatorString& s);
/// materialize(s) / term_weight(s); kNotQubitized when the weight is zero.
ComplexMatrix unit_term(const OperatorString& s);

/// Factorwise dagger with conjugated coefficient.
OperatorString string_dagger(const OperatorString& s);

/// `0.5 * s.sd + h.c.`; complex coefficients print as `(re,im)`.
std::string to_text(const OperatorString& s);
/// Inverse of to_text. Throws kParseError.
OperatorString parse_operator_string(std::string_view text);

enum class SpectralKind { Qubitized, Projector, Unitary, Other };
std::string_view to_string(SpectralKind k);

struct SpectralClass {
  SpectralKind kind = SpectralKind::Other;
  std::vector<double> eigenvalues;  // empty when the matrix is not Hermitian
  /// Largest distance of an eigenvalue to the nearest allowed value of the
  /// reported kind; zero for Unitary and Other.
  double snap_defect = 0.0;
};

/// Eigenvalue snapping uses tol::kSpectral.
SpectralClass classify(const ComplexMatrix& h);

/// Classification of unit_term(s) read off the factors, without any matrix
/// work. Agrees with classify(unit_term(s)).
SpectralKind classify_string(const OperatorString& s);

struct TaggedString {
  OperatorString string;
  SpectralKind tag = SpectralKind::Other;
};

/// Weighted sum of strings; the weights live in the string coefficients.
class LinearCombination {
 public:
  LinearCombination() = default;
  explicit LinearCombination(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  /// Tags the string with classify_string as it is appended. kDimMismatch on width mismatch.
  void add(OperatorString s);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<TaggedString>& terms() const noexcept { return terms_; }

 private:
  std::size_t num_qubits_ = 0;
  std::vector<TaggedString> terms_;
};

ComplexMatrix materialize(const LinearCombination& lc);

}  // namespace qubitizer
