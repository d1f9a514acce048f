#pragma once

// Query synthesis: reducers, exact and Trotterized evolution, LCH to LCU
// splits, block-encodings with their walk operators, measurement programs and
// the modular adders.

#include <cstddef>
#include <optional>
#include <vector>

#include "qubitizer/circuit.hpp"
#include "qubitizer/densemath.hpp"
#include "qubitizer/opalg.hpp"

namespace qubitizer {

/// Basis change V taking a qubitized Hamiltonian H to Z on the reduct qubit,
/// restricted to the subspace where every flag holds:
///   H = V^dagger (Pi_flags (x) Z_reduct) V.
/// For projectors Z is replaced by n on the reduct qubit.
struct Reducer {
  std::size_t num_qubits = 0;
  Circuit local_change;  // frames, per-qubit changes, transition ladder
  Circuit merge;         // parity merge onto the reduct qubit
  std::size_t reduct_qubit = 0;
  std::vector<Control> perp_flags;  // positive polarity requires |1>
  std::vector<std::size_t> parity_qubits;
  std::vector<std::size_t> spectator_qubits;
  bool projector = false;

  /// local_change followed by merge; lowers to V.
  Circuit basis_change() const;
};

/// Term of a linear combination of Hamiltonians: frame^dagger * S * frame.
/// An empty frame means no conjugation.
struct LchTerm {
  OperatorString string;
  Circuit frame;
};

class Lch {
 public:
  Lch() = default;
  explicit Lch(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  /// kDimMismatch on width mismatch.
  void add(OperatorString s);
  void add(OperatorString s, Circuit frame);
  void append(const Lch& other);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<LchTerm>& terms() const noexcept { return terms_; }

 private:
  std::size_t num_qubits_ = 0;
  std::vector<LchTerm> terms_;
};

ComplexMatrix materialize(const LchTerm& t);
ComplexMatrix materialize(const Lch& lch);
/// Unit-normalized term matrix paired with its signed weight.
struct WeightedTerm {
  double alpha = 0.0;
  ComplexMatrix h;
};
std::vector<WeightedTerm> weighted_terms(const Lch& lch);

struct LcuTerm {
  cplx coefficient;
  Circuit unitary;
};

struct Lcu {
  std::size_t num_qubits = 0;
  std::vector<LcuTerm> terms;
};

ComplexMatrix materialize(const Lcu& lcu);

/// Throws kNotQubitized when the string is neither qubitized nor a projector,
/// kUnsupportedString for the identity string.
Reducer reducer_from_string(const OperatorString& s);
/// Reducer of a framed term; the frame runs first.
Reducer reducer_from_term(const LchTerm& t);
/// V^dagger (Pi_flags (x) Z_reduct) V, or n_reduct for projectors.
ComplexMatrix reducer_hamiltonian(const Reducer& r);
/// Same reducer inside a wider register, shifted by offset.
Reducer embed(const Reducer& r, std::size_t offset, std::size_t width);
/// Reducer of H1 (x) H2 for reducers on disjoint supports of one register.
/// Throws kOverlappingSupports.
Reducer combine_reducers(const Reducer& r1, const Reducer& r2);

/// V^dagger C_flags U_reduct V; u must be a single-qubit gate (its target is
/// ignored and replaced by the reduct qubit).
Circuit controlled_in_subspace(const Reducer& r, const Gate& u);

struct XyForms {
  ComplexMatrix x_form;
  ComplexMatrix y_form;
};
/// X and Y on the reduct qubit carried back through the reducer. Throws
/// kNotQubitized unless h classifies as qubitized.
XyForms xy_variants(const ComplexMatrix& h, const Reducer& r);

/// exp(i t H) for the unit Hamiltonian of the reducer.
Circuit hs_exact(const Reducer& r, double t);

struct TrotterPlan {
  double t = 0.0;
  std::size_t steps = 1;
  int order = 1;                       // 1 or 2
  std::vector<std::size_t> term_order;  // empty: natural order
};

/// Product formula approximating exp(i t sum_j alpha_j H_j).
Circuit trotter(const Lch& lch, const TrotterPlan& plan);

/// Two-reflection split of a unit term: {+1/2 C_flags Z, -1/2 C_flags XZX}
/// for qubitized reducers, {1/2 I, -1/2 C_flags Z} for projectors.
Lcu lch_to_lcu(const Reducer& r);
/// Whole combination, each split scaled by its term weight.
Lcu lch_to_lcu(const Lch& lch);

enum class Transition { Raise, Lower };  // |lambda><lambda_perp| and its adjoint
/// Two-term form when no flags exist, residue-free four-term form otherwise.
Lcu nonhermitian_split(const Reducer& r, Transition which);
/// (C X +- i C Y)/2 regardless of flags.
Lcu nonhermitian_split_literal(const Reducer& r, Transition which);
/// The target |lambda><lambda_perp| (or its adjoint) as a matrix.
ComplexMatrix transition_target(const Reducer& r, Transition which);

/// Circuit with prep|0> = sum_i sqrt(w_i / W) |i>; the weight list is padded
/// to a power of two. Throws kAllZeroWeights.
Circuit prep(const std::vector<double>& weights);

/// sum_i |i><i| (x) U_i on [index register][system]; the index register has
/// max(1, ceil(log2 count)) qubits. Throws kRegisterMismatch.
Circuit select(const std::vector<Circuit>& unitaries);

/// Layout [index][b2][system]; the block is <0|<+| S |+>|0>.
struct BlockEncoding {
  Circuit circuit;
  std::size_t index_qubits = 0;
  std::size_t system_qubits = 0;
  double subnormalization = 1.0;

  std::size_t b2_qubit() const noexcept { return index_qubits; }
  std::size_t system_offset() const noexcept { return index_qubits + 1; }
};

/// Throws kNonUnitaryTerm.
BlockEncoding block_encode(const Lcu& lcu);
/// The encoded block, i.e. target / subnormalization, extracted by simulation.
ComplexMatrix encoded_block(const BlockEncoding& be);
/// max |S^2 - I|; lowered directly up to kMaxLowerQubits, else on basis states.
double reflection_defect(const Circuit& c);

/// Walk operator (2 Pi - I) S with Pi = |0><0| (x) |+><+| (x) I. Throws
/// kNotReflection when S is not a reflection.
Circuit qubitize(const BlockEncoding& be);

struct WalkCheck {
  double eigenvalue = 0.0;  // of the encoded block
  double cosine = 0.0;      // cosine of the walk eigenphase pair
  double deviation = 0.0;   // |cosine - eigenvalue|
};
/// For each eigenvector of the (Hermitian) encoded block, restricts the walk
/// to its invariant plane and reports the eigenphase cosine.
std::vector<WalkCheck> walk_eigenphase_check(const BlockEncoding& be, const Circuit& walk);

enum class MeasureMode { SingleQubit, Parity };

struct MeasurementProgram {
  MeasureMode mode = MeasureMode::SingleQubit;
  Circuit circuit;
  std::size_t reduct_qubit = 0;
  std::vector<Control> perp_flags;
  std::vector<std::size_t> parity_qubits;
  std::optional<Gate> pre_measure;
  // projector reducers read the reduct qubit as n: 1 or 0
  bool projector = false;

  /// +1, -1 or 0 for a computational-basis outcome of the circuit.
  int contribution(std::size_t outcome) const;
};

MeasurementProgram measurement_program(const Reducer& r, MeasureMode mode,
                                       std::optional<Gate> pre_measure = std::nullopt);
std::vector<double> outcome_probabilities(const MeasurementProgram& prog,
                                          const StateVector& psi);
struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};
/// Mean and per-shot variance of the contribution under exact probabilities.
Moments program_moments(const MeasurementProgram& prog, const StateVector& psi);

/// |(i + n) mod m><i| on log2(m) qubits.
ComplexMatrix adder_permutation(std::size_t n, std::size_t m);
/// Throws kOutOfRange unless m is a power of two >= 2 and n < m.
Circuit adder_qft(std::size_t n, std::size_t m);
Circuit adder_ladder(std::size_t n, std::size_t m);
/// Adder with the wrap-around entries negated.
Circuit zadd(std::size_t n, std::size_t m);

/// log2 of a power of two; kOutOfRange otherwise.
std::size_t log2_exact(std::size_t m);

}  // namespace qubitizer
