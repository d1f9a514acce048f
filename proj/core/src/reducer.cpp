#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"
#include "qubitizer/synth.hpp"

namespace qubitizer {

namespace {

std::size_t bit_of(std::size_t q, std::size_t n) { return std::size_t{1} << (n - 1 - q); }

bool flags_hold(const std::vector<Control>& flags, std::size_t index, std::size_t n) {
  return std::all_of(flags.begin(), flags.end(), [&](const Control& f) {
    return ((index & bit_of(f.qubit, n)) != 0) == f.positive;
  });
}

// Pi_flags (x) u on the reduct qubit, identity-free: zero outside the flags.
ComplexMatrix reduct_frame_operator(const Reducer& r, const std::array<cplx, 4>& u) {
  const std::size_t n = r.num_qubits;
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t rb = bit_of(r.reduct_qubit, n);
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!flags_hold(r.perp_flags, i, n)) continue;
    const std::size_t base = i & ~rb;
    const std::size_t row_bit = (i & rb) ? 1 : 0;
    for (std::size_t col_bit = 0; col_bit < 2; ++col_bit) {
      out(i, base | (col_bit ? rb : 0)) = u[row_bit * 2 + col_bit];
    }
  }
  return out;
}

ComplexMatrix carry_back(const Reducer& r, const ComplexMatrix& op) {
  const ComplexMatrix v = lower(r.basis_change());
  return v.adjoint() * op * v;
}

std::vector<std::size_t> support_of(const Reducer& r) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < r.num_qubits; ++q) {
    if (std::find(r.spectator_qubits.begin(), r.spectator_qubits.end(), q) ==
        r.spectator_qubits.end()) {
      out.push_back(q);
    }
  }
  return out;
}

Gate on_reduct(const Reducer& r, GateKind kind, double theta = 0.0) {
  return Gate{kind, theta, {r.reduct_qubit}, r.perp_flags};
}

}  // namespace

Circuit Reducer::basis_change() const {
  Circuit c(num_qubits);
  c.append(local_change);
  c.append(merge);
  return c;
}

void Lch::add(OperatorString s) {
  Circuit frame(s.num_qubits());
  add(std::move(s), std::move(frame));
}

void Lch::add(OperatorString s, Circuit frame) {
  if (terms_.empty() && num_qubits_ == 0) num_qubits_ = s.num_qubits();
  if (s.num_qubits() != num_qubits_ || frame.num_qubits() != num_qubits_) {
    throw Error(ErrorCode::kDimMismatch, "term width does not match the combination");
  }
  terms_.push_back(LchTerm{std::move(s), std::move(frame)});
}

void Lch::append(const Lch& other) {
  for (const auto& t : other.terms()) add(t.string, t.frame);
}

ComplexMatrix materialize(const LchTerm& t) {
  const ComplexMatrix s = materialize(t.string);
  if (t.frame.empty()) return s;
  const ComplexMatrix f = lower(t.frame);
  return f.adjoint() * s * f;
}

ComplexMatrix materialize(const Lch& lch) {
  const std::size_t dim = std::size_t{1} << lch.num_qubits();
  ComplexMatrix out(dim, dim);
  for (const auto& t : lch.terms()) out += materialize(t);
  return out;
}

std::vector<WeightedTerm> weighted_terms(const Lch& lch) {
  std::vector<WeightedTerm> out;
  for (const auto& t : lch.terms()) {
    const double alpha = term_weight(t.string);
    if (std::abs(alpha) < tol::kAlgebraic) {
      throw Error(ErrorCode::kNotQubitized, "zero-weight term " + to_text(t.string));
    }
    out.push_back({alpha, materialize(t) * cplx(1.0 / alpha)});
  }
  return out;
}

ComplexMatrix materialize(const Lcu& lcu) {
  const std::size_t dim = std::size_t{1} << lcu.num_qubits;
  ComplexMatrix out(dim, dim);
  for (const auto& t : lcu.terms) out += t.coefficient * lower(t.unitary);
  return out;
}

Reducer reducer_from_string(const OperatorString& s) {
  const SpectralKind kind = classify_string(s);
  if (kind != SpectralKind::Qubitized && kind != SpectralKind::Projector) {
    throw Error(ErrorCode::kNotQubitized, to_text(s));
  }
  const std::size_t n = s.num_qubits();
  Reducer r;
  r.num_qubits = n;
  r.local_change = Circuit(n);
  r.merge = Circuit(n);

  std::vector<std::size_t> paulis, transitions;
  for (std::size_t q = 0; q < n; ++q) {
    const Factor f = s.factors[q];
    if (f == Factor::I) r.spectator_qubits.push_back(q);
    if (is_pauli(f)) paulis.push_back(q);
    if (is_transition(f)) transitions.push_back(q);
    if (is_flag(f)) r.perp_flags.push_back(Control{q, f == Factor::N});
  }

  if (kind == SpectralKind::Projector) {
    if (r.perp_flags.empty()) {
      throw Error(ErrorCode::kUnsupportedString, "identity string " + to_text(s));
    }
    const Control first = r.perp_flags.front();
    r.perp_flags.erase(r.perp_flags.begin());
    r.reduct_qubit = first.qubit;
    if (!first.positive) r.local_change.x(first.qubit);
    r.parity_qubits = {first.qubit};
    r.projector = true;
    return r;
  }

  for (std::size_t q : paulis) {
    if (s.factors[q] == Factor::X) {
      r.local_change.h(q);
    } else if (s.factors[q] == Factor::Y) {
      r.local_change.p(q, -std::numbers::pi / 2);
      r.local_change.h(q);
    }
  }

  if (!transitions.empty()) {
    const std::size_t root = transitions.front();
    const bool root_raises = s.factors[root] == Factor::Sigma;
    for (std::size_t k = 1; k < transitions.size(); ++k) {
      const std::size_t t = transitions[k];
      r.local_change.cx(root, t);
      const bool raises = s.factors[t] == Factor::Sigma;
      r.perp_flags.push_back(Control{t, raises != root_raises});
    }
    const double phi = std::arg(s.coefficient);
    r.local_change.p(root, root_raises ? -phi : phi);
    r.local_change.h(root);
    r.reduct_qubit = root;
  } else {
    r.reduct_qubit = paulis.front();
  }

  r.parity_qubits = paulis;
  if (!transitions.empty()) r.parity_qubits.push_back(r.reduct_qubit);
  std::sort(r.parity_qubits.begin(), r.parity_qubits.end());
  for (std::size_t q : paulis) {
    if (q != r.reduct_qubit) r.merge.cx(q, r.reduct_qubit);
  }
  std::sort(r.perp_flags.begin(), r.perp_flags.end(),
            [](const Control& a, const Control& b) { return a.qubit < b.qubit; });
  return r;
}

Reducer reducer_from_term(const LchTerm& t) {
  Reducer r = reducer_from_string(t.string);
  if (t.frame.empty()) return r;
  Circuit local(r.num_qubits);
  local.append(t.frame);
  local.append(r.local_change);
  r.local_change = std::move(local);
  r.spectator_qubits.clear();
  return r;
}

ComplexMatrix reducer_hamiltonian(const Reducer& r) {
  const std::array<cplx, 4> z{1, 0, 0, -1};
  const std::array<cplx, 4> n{0, 0, 0, 1};
  return carry_back(r, reduct_frame_operator(r, r.projector ? n : z));
}

Reducer embed(const Reducer& r, std::size_t offset, std::size_t width) {
  if (offset + r.num_qubits > width) throw Error(ErrorCode::kOutOfRange, "embedding");
  Reducer out;
  out.num_qubits = width;
  out.local_change = shifted(r.local_change, offset, width);
  out.merge = shifted(r.merge, offset, width);
  out.reduct_qubit = r.reduct_qubit + offset;
  for (auto f : r.perp_flags) out.perp_flags.push_back(Control{f.qubit + offset, f.positive});
  for (auto q : r.parity_qubits) out.parity_qubits.push_back(q + offset);
  for (std::size_t q = 0; q < width; ++q) {
    const bool inside = q >= offset && q < offset + r.num_qubits;
    if (!inside || std::find(r.spectator_qubits.begin(), r.spectator_qubits.end(),
                             q - offset) != r.spectator_qubits.end()) {
      out.spectator_qubits.push_back(q);
    }
  }
  out.projector = r.projector;
  return out;
}

Reducer combine_reducers(const Reducer& r1, const Reducer& r2) {
  if (r1.num_qubits != r2.num_qubits) {
    throw Error(ErrorCode::kRegisterMismatch, "reducers over different registers");
  }
  const auto s1 = support_of(r1);
  const auto s2 = support_of(r2);
  std::vector<std::size_t> common;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(common));
  if (!common.empty()) {
    throw Error(ErrorCode::kOverlappingSupports, "qubit " + std::to_string(common.front()));
  }
  // The qubitized side keeps its reduct; a projector side becomes a flag.
  const bool swap_roles = r1.projector && !r2.projector;
  const Reducer& a = swap_roles ? r2 : r1;
  const Reducer& b = swap_roles ? r1 : r2;

  Reducer out;
  out.num_qubits = r1.num_qubits;
  out.local_change = Circuit(out.num_qubits);
  out.local_change.append(r1.local_change);
  out.local_change.append(r2.local_change);
  out.merge = Circuit(out.num_qubits);
  out.merge.append(r1.merge);
  out.merge.append(r2.merge);
  out.reduct_qubit = a.reduct_qubit;
  out.perp_flags = a.perp_flags;
  out.perp_flags.insert(out.perp_flags.end(), b.perp_flags.begin(), b.perp_flags.end());
  out.parity_qubits = a.parity_qubits;
  if (b.projector) {
    out.perp_flags.push_back(Control{b.reduct_qubit, true});
  } else {
    out.merge.cx(b.reduct_qubit, a.reduct_qubit);
    out.parity_qubits.insert(out.parity_qubits.end(), b.parity_qubits.begin(),
                             b.parity_qubits.end());
  }
  std::sort(out.perp_flags.begin(), out.perp_flags.end(),
            [](const Control& x, const Control& y) { return x.qubit < y.qubit; });
  std::sort(out.parity_qubits.begin(), out.parity_qubits.end());
  std::set_intersection(r1.spectator_qubits.begin(), r1.spectator_qubits.end(),
                        r2.spectator_qubits.begin(), r2.spectator_qubits.end(),
                        std::back_inserter(out.spectator_qubits));
  out.projector = a.projector && b.projector;
  return out;
}

Circuit controlled_in_subspace(const Reducer& r, const Gate& u) {
  if (u.kind == GateKind::SWAP || u.kind == GateKind::GlobalPhase) {
    throw Error(ErrorCode::kUnsupportedString, "controlled_in_subspace needs a one-qubit gate");
  }
  const Circuit v = r.basis_change();
  Circuit c(r.num_qubits);
  c.append(v);
  Gate g = on_reduct(r, u.kind, u.theta);
  g.controls.insert(g.controls.end(), u.controls.begin(), u.controls.end());
  c.add(std::move(g));
  c.append(inverse(v));
  return c;
}

XyForms xy_variants(const ComplexMatrix& h, const Reducer& r) {
  if (classify(h).kind != SpectralKind::Qubitized) {
    throw Error(ErrorCode::kNotQubitized, "xy_variants needs a qubitized Hamiltonian");
  }
  const cplx i{0.0, 1.0};
  return XyForms{carry_back(r, reduct_frame_operator(r, {0, 1, 1, 0})),
                 carry_back(r, reduct_frame_operator(r, {0, -i, i, 0}))};
}

Circuit hs_exact(const Reducer& r, double t) {
  const Circuit v = r.basis_change();
  Circuit c(r.num_qubits);
  c.append(v);
  if (r.projector) {
    c.add(on_reduct(r, GateKind::P, t));
  } else {
    c.add(on_reduct(r, GateKind::RZ, 2.0 * t));
  }
  c.append(inverse(v));
  return c;
}

ComplexMatrix transition_target(const Reducer& r, Transition which) {
  if (r.projector) throw Error(ErrorCode::kNotQubitized, "projector reducer");
  const std::array<cplx, 4> raise{0, 1, 0, 0};
  const std::array<cplx, 4> lower_op{0, 0, 1, 0};
  return carry_back(r, reduct_frame_operator(r, which == Transition::Raise ? raise : lower_op));
}

MeasurementProgram measurement_program(const Reducer& r, MeasureMode mode,
                                       std::optional<Gate> pre_measure) {
  if (r.projector && mode == MeasureMode::Parity)
    throw Error(ErrorCode::kNotQubitized, "parity measurement of a projector reducer");
  MeasurementProgram prog;
  prog.mode = mode;
  prog.projector = r.projector;
  prog.circuit = mode == MeasureMode::SingleQubit ? r.basis_change() : r.local_change;
  if (prog.circuit.num_qubits() == 0) prog.circuit = Circuit(r.num_qubits);
  prog.reduct_qubit = r.reduct_qubit;
  prog.perp_flags = r.perp_flags;
  prog.parity_qubits = r.parity_qubits;
  if (pre_measure) {
    Gate g = *pre_measure;
    g.targets = {r.reduct_qubit};
    g.controls.clear();
    prog.circuit.add(g);
    prog.pre_measure = std::move(g);
  }
  return prog;
}

int MeasurementProgram::contribution(std::size_t outcome) const {
  const std::size_t n = circuit.num_qubits();
  if (!flags_hold(perp_flags, outcome, n)) return 0;
  if (mode == MeasureMode::SingleQubit) {
    const bool set = (outcome & bit_of(reduct_qubit, n)) != 0;
    if (projector) return set ? 1 : 0;
    return set ? -1 : 1;
  }
  std::size_t ones = 0;
  for (std::size_t q : parity_qubits) ones += (outcome & bit_of(q, n)) ? 1 : 0;
  return (ones % 2) ? -1 : 1;
}

std::vector<double> outcome_probabilities(const MeasurementProgram& prog,
                                          const StateVector& psi) {
  const StateVector out = simulate(prog.circuit, psi);
  std::vector<double> p(out.dim());
  for (std::size_t i = 0; i < out.dim(); ++i) p[i] = std::norm(out[i]);
  return p;
}

Moments program_moments(const MeasurementProgram& prog, const StateVector& psi) {
  const auto p = outcome_probabilities(prog, psi);
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int c = prog.contribution(i);
    m1 += p[i] * c;
    m2 += p[i] * c * c;
  }
  return {m1, m2 - m1 * m1};
}

}  // namespace qubitizer
