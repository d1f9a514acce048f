#pragma once

// Structured matrices (banded, circulant, anti-diagonal, permutation and
// rank-one families) lowered to combinations of qubitized Hamiltonians or of
// unitaries, with direct dense constructors used as the reference.
//
// Index conventions, for an m x m matrix:
//   ToeplitzDiag(n):   w on (i + m - n, i) for i < n, conj(w) on the mirror.
//                      n = m - 1 is the nearest-neighbour band.
//   Circulant(n):      conj(w) ADD_n + w ADD_n^dagger.
//   HankelAntiDiag(n): w where row + col = n - 1, 1 <= n <= 2m - 1.
//   AntiCirculant(n):  ones where row + col = -1 - n (mod m), 0 <= n < m.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qubitizer/circuit.hpp"
#include "qubitizer/densemath.hpp"
#include "qubitizer/opalg.hpp"
#include "qubitizer/synth.hpp"

namespace qubitizer {

enum class StructuredKind {
  ToeplitzDiag,
  Circulant,
  CirculantAdder,
  HankelAntiDiag,
  AntiCirculant,
  CornerEmbed,
  CircularPermutation,
  PermutationTable,
  DensityMatrix,
  OuterProduct,
  LineColumn,
  Grid,
};

std::string_view to_string(StructuredKind k);
/// Accepts the snake_case names ("toeplitz_diag", "circulant", ...).
StructuredKind parse_structured_kind(std::string_view name);

struct StructuredSpec {
  StructuredKind kind = StructuredKind::ToeplitzDiag;
  std::size_t m = 2;
  std::size_t n = 1;
  cplx weight{1.0, 0.0};
  /// Builder variant; empty selects the default of the kind.
  std::string variant;

  // CornerEmbed: total size s and the kind of the embedded block.
  std::size_t s = 0;
  StructuredKind inner = StructuredKind::Circulant;

  // CircularPermutation: successor table; PermutationTable: the map itself.
  std::vector<std::size_t> table;

  // DensityMatrix / OuterProduct / LineColumn.
  std::vector<cplx> psi;
  std::vector<cplx> phi;
  std::size_t index = 0;  // LineColumn
  bool line = false;      // LineColumn: row instead of column

  // Grid: per-axis sizes (axis 0 most significant), boundaries and weights.
  std::vector<std::size_t> dims;
  std::vector<bool> cyclic;
  std::vector<double> axis_weights;
};

/// Decomposition produced by a builder. Hermitian families fill lch; the
/// unitary and rank-one families fill lcu; permutations also fill unitary.
struct Decomposition {
  std::optional<Lch> lch;
  std::optional<Lcu> lcu;
  std::optional<Circuit> unitary;
  /// The matrix the decomposition targets, on the system register.
  std::size_t num_qubits = 0;
  /// Notes such as a variant falling back to another construction.
  std::vector<std::string> notes;
};

/// Throws kInvalidSpec.
void validate(const StructuredSpec& spec);
/// Direct index-arithmetic construction, independent of every builder.
ComplexMatrix dense_oracle(const StructuredSpec& spec);
/// Runs the builder of the spec's kind.
Decomposition build(const StructuredSpec& spec);

// Stern's diatomic sequence.
std::size_t fusc(std::size_t n);

// ---- banded families ----

/// One step of the shift recursion: prefix (x) M(child), or its factorwise
/// dagger when dagger is set.
struct ShiftBranch {
  std::vector<Factor> prefix;
  std::size_t child = 0;
  bool dagger = false;

  friend bool operator==(const ShiftBranch&, const ShiftBranch&) = default;
};

/// Qubit count of M(n): floor(log2 n) + 1, or N for n = 2^N (N >= 1).
std::size_t shift_qubits(std::size_t n);
/// The two branches of M(n); empty for the base cases n = 1 and n = 2^N.
std::vector<ShiftBranch> shift_expansion(std::size_t n);
/// Fully expanded factor strings of M(n), each on shift_qubits(n) qubits.
std::vector<std::vector<Factor>> shift_strings(std::size_t n);
/// Anti-diagonal analogue N(n); the dagger of a branch is X-conjugation.
std::vector<ShiftBranch> antishift_expansion(std::size_t n);
std::vector<std::vector<Factor>> antishift_strings(std::size_t n);

/// Lower band of n entries with weight w, plus h.c. Throws kInvalidSpec
/// unless 1 <= n < m.
Lch toeplitz_diag(std::size_t n, std::size_t m, cplx w = 1.0);

/// conj(w) ADD_n + w ADD_n^dagger as a sum of two Toeplitz bands.
Lch circulant_recursive(std::size_t n, std::size_t m, cplx w = 1.0);
/// Same matrix through adder-conjugated terms; uses the orientation whose
/// wrap distance is at most m / 2.
Lch circulant_adder(std::size_t n, std::size_t m, cplx w = 1.0);
/// The adder form indexed by the band recursion: the circulant at distance
/// m - (2^(w_n + 1) - n), decomposed with fusc(n) + fusc(2^(w_n + 1) - n)
/// terms (two when n is a power of two). Requires m >= 2^(w_n + 1).
Lch circulant_adder_indexed(std::size_t n, std::size_t m, cplx w = 1.0);
/// {conj(w): ADD_n, w: ADD_n^dagger}.
Lcu circulant_lcu(std::size_t n, std::size_t m, cplx w = 1.0);

/// Anti-diagonal row + col = n - 1 with real weight w, 1 <= n <= 2m - 1.
Lch hankel_antidiag(std::size_t n, std::size_t m, double w = 1.0);
/// Sum of two Hankel anti-diagonals.
Lch anticirculant_sum(std::size_t n, std::size_t m);
/// Adder-shifted base anti-diagonals.
Lch anticirculant_adder(std::size_t n, std::size_t m);
/// X^(x)M . ADD_n as one unitary circuit.
Circuit anti_adder(std::size_t n, std::size_t m);

/// Every term gains m^(x)(S - M) on new leading qubits. Throws kInvalidSpec
/// when S < M.
Lch corner_embed(const Lch& inner, std::size_t total_qubits);

// ---- permutations ----

struct PermutationSpec {
  std::vector<std::size_t> table;                // i -> table[i]
  std::vector<std::vector<std::size_t>> orbits;  // cycles, each starting at its minimum

  /// Throws kNotBijective.
  static PermutationSpec from_table(std::vector<std::size_t> table);
  std::size_t transposition_count() const;
};

/// Swaps basis states a and b and fixes every other basis state.
Circuit two_state_swap(std::size_t a, std::size_t b, std::size_t num_qubits);
/// Product of two-state swaps realizing the table, one swap per orbit step.
Circuit permutation_by_swaps(const PermutationSpec& p);

struct CircularPermutation {
  Circuit relabel_dagger;  // U_pi^dagger: |i> -> U_r^(i+1) |0>
  Circuit relabel;         // U_pi
  Circuit unitary;         // U_pi^dagger ADD_n U_pi = U_r^n
  Lch hermitian;           // U_pi^dagger circ_n U_pi
};
/// successor[i] is the node after i. Throws kNotSingleCycle.
CircularPermutation circular_permutation(const std::vector<std::size_t>& successor,
                                         std::size_t n = 1);

/// Register A = qubits [0, M), ancilla B = [M, 2M); maps |x>|0> to |pi(x)>|0>.
Circuit permutation_from_table(const PermutationSpec& p);
ComplexMatrix permutation_matrix(const std::vector<std::size_t>& table);

// ---- rank-one families ----

/// Circuit taking |0> to psi.
Circuit prepare_state(const StateVector& psi);
/// X^(x)M, C^(M-1) Z, X^(x)M on M qubits: I - 2|0><0|.
Circuit zero_reflection(std::size_t num_qubits);

Lcu density_matrix_lcu(const StateVector& psi);
Lcu outer_product_lcu(const StateVector& phi, const StateVector& psi);
/// |psi*><psi|; psi* is prepared by the conjugated circuit.
Lcu pseudo_covariance_lcu(const StateVector& psi);
/// Column |psi><j| or line |j><psi|.
Lcu line_column_lcu(const StateVector& psi, std::size_t j, bool line);

BlockEncoding density_matrix(const StateVector& psi);
BlockEncoding outer_product(const StateVector& phi, const StateVector& psi);
BlockEncoding line_column(const StateVector& psi, std::size_t j, bool line);

/// exp(i t |psi><psi|) as U_psi . C_{|0..0>} GlobalPhase(t) . U_psi^dagger.
Circuit exp_projector(const StateVector& psi, double t);

// ---- composition ----

/// Sum over axes of I (x) band (x) I; open axes use the nearest-neighbour
/// Toeplitz band, cyclic axes the circulant.
Lch grid(const std::vector<std::size_t>& dims, const std::vector<bool>& cyclic,
         const std::vector<double>& axis_weights = {});

enum class Representation { LCH, LCU };
/// Counts produced by running the builder. LCU counts are twice the LCH count
/// for Hermitian families and the direct term count for LCU-only families.
std::size_t summand_count(const StructuredSpec& spec, Representation rep);

}  // namespace qubitizer
