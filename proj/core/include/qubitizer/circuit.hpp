#pragma once

// Gate-level circuit IR. The first op in the list acts first, so it is the
// rightmost factor of the lowered operator product.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qubitizer/densemath.hpp"

namespace qubitizer {

enum class GateKind { X, Y, Z, H, S, P, RY, RZ, SWAP, GlobalPhase };

std::string_view gate_name(GateKind k);
bool has_angle(GateKind k);

struct Control {
  std::size_t qubit = 0;
  bool positive = true;  // negative polarity conditions on |0>

  friend bool operator==(const Control&, const Control&) = default;
};

/// P(t) = diag(1, e^{it}); RY(t) = exp(-i t Y / 2); RZ(t) = diag(e^{it/2}, e^{-it/2});
/// GlobalPhase(t) multiplies by e^{it} wherever the controls hold and has no
/// targets.
struct Gate {
  GateKind kind = GateKind::X;
  double theta = 0.0;
  std::vector<std::size_t> targets;
  std::vector<Control> controls;

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class MacroKind { QFT, InverseQFT, AdderQFT, AdderLadder, StatePrep };

std::string_view macro_name(MacroKind k);

/// Macro over a register slice; qubits[0] is the most significant bit of the
/// slice. Adders add `shift` modulo 2^qubits.size().
struct MacroGate {
  MacroKind kind = MacroKind::QFT;
  std::vector<std::size_t> qubits;
  std::size_t shift = 0;
  std::vector<cplx> amplitudes;  // StatePrep only

  friend bool operator==(const MacroGate&, const MacroGate&) = default;
};

using Op = std::variant<Gate, MacroGate>;

struct Register {
  std::size_t start = 0;
  std::size_t size = 0;

  friend bool operator==(const Register&, const Register&) = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Op>& ops() const noexcept { return ops_; }
  bool empty() const noexcept { return ops_.empty(); }
  const std::map<std::string, Register>& registers() const noexcept { return registers_; }

  /// Validates indices, target/control disjointness and target counts.
  Circuit& add(Gate g);
  Circuit& add(MacroGate m);
  Circuit& add(const Op& op);
  /// Appends every op of `other`, whose width must not exceed this one.
  Circuit& append(const Circuit& other);
  Circuit& label(std::string name, std::size_t start, std::size_t size);

  // Shorthands for the common gates.
  Circuit& x(std::size_t q, std::vector<Control> c = {});
  Circuit& y(std::size_t q, std::vector<Control> c = {});
  Circuit& z(std::size_t q, std::vector<Control> c = {});
  Circuit& h(std::size_t q, std::vector<Control> c = {});
  Circuit& s(std::size_t q, std::vector<Control> c = {});
  Circuit& p(std::size_t q, double theta, std::vector<Control> c = {});
  Circuit& ry(std::size_t q, double theta, std::vector<Control> c = {});
  Circuit& rz(std::size_t q, double theta, std::vector<Control> c = {});
  Circuit& swap(std::size_t a, std::size_t b, std::vector<Control> c = {});
  Circuit& cx(std::size_t control, std::size_t target);
  Circuit& phase(double theta, std::vector<Control> c = {});

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Op> ops_;
  std::map<std::string, Register> registers_;
};

/// Lowering is capped at this many qubits.
inline constexpr std::size_t kMaxLowerQubits = 10;

/// Dense unitary of the circuit. Throws kTooManyQubits.
ComplexMatrix lower(const Circuit& c);
/// Applies the circuit to a state of dimension 2^num_qubits.
StateVector simulate(const Circuit& c, const StateVector& psi);
/// Applies one gate to every column of a 2^n-row matrix, in place.
void apply_gate(ComplexMatrix& state, std::size_t num_qubits, const Gate& g);

/// One level of macro expansion; nested macros (an adder's QFT) stay macros.
Circuit expand_macros_once(const Circuit& c);
/// Fully macro-free circuit with the same lowering.
Circuit expand_macros(const Circuit& c);

/// Adjoint circuit: reversed order, each gate inverted. Adders flip their
/// shift, QFT and InverseQFT swap, StatePrep is expanded first.
Circuit inverse(const Circuit& c);
/// Entrywise complex conjugate of the lowered matrix.
Circuit conjugate(const Circuit& c);
/// Every gate gains the extra controls; macros are expanded first.
Circuit controlled(const Circuit& c, const std::vector<Control>& controls);
/// Re-indexes every qubit q to map[q] on a circuit of the given width.
Circuit remap(const Circuit& c, const std::vector<std::size_t>& map, std::size_t width);
/// Shifts all qubits by `offset` inside a circuit of the given width.
Circuit shifted(const Circuit& c, std::size_t offset, std::size_t width);

// Macro-expansion primitives.
Circuit qft_circuit(const std::vector<std::size_t>& qubits, std::size_t width);
/// QFT macro, M phase gates, InverseQFT macro.
Circuit adder_qft_circuit(const std::vector<std::size_t>& qubits, std::size_t shift,
                          std::size_t width);
/// Multi-controlled X ladders over the binary expansion of the shift.
Circuit adder_ladder_circuit(const std::vector<std::size_t>& qubits, std::size_t shift,
                             std::size_t width);
/// Binary tree of controlled RY for the magnitudes, then fully controlled
/// phases for complex amplitudes.
Circuit ry_tree_circuit(const std::vector<std::size_t>& qubits,
                        const std::vector<cplx>& amplitudes, std::size_t width);
/// ry_tree_circuit, except that a uniform real positive state is prepared with
/// Hadamards.
Circuit state_prep_circuit(const std::vector<std::size_t>& qubits,
                           const std::vector<cplx>& amplitudes, std::size_t width);

struct ResourceReport {
  std::map<std::string, std::size_t> gate_histogram;      // by gate name
  std::map<std::size_t, std::size_t> control_histogram;   // width -> gates
  std::map<std::string, std::size_t> macro_calls;         // every expansion level
  /// Gates emitted at each level: "" for the top level, else the macro name,
  /// excluding gates of nested macros.
  std::map<std::string, std::map<std::string, std::size_t>> level_histogram;
  std::size_t arbitrary_rotations = 0;
  std::size_t total_gates = 0;

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

/// Counts on the fully expanded circuit; P/RY/RZ with an angle that is not a
/// multiple of pi/2 count as arbitrary rotations.
ResourceReport count_resources(const Circuit& c);

/// `.qbc` text. With keep_macros, macros are bracketed by `# begin`/`# end`
/// comments around their expansion.
std::string export_text(const Circuit& c, bool keep_macros = false);
/// Throws kParseError.
Circuit parse_text(std::string_view text);

}  // namespace qubitizer
