#include "qubitizer/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"

namespace qubitizer {

namespace {

using Mat2 = std::array<cplx, 4>;  // row-major 2x2

Mat2 gate_matrix(const Gate& g) {
  const cplx i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -i, i, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return {r, r, r, -r};
    }
    case GateKind::S: return {1, 0, 0, i};
    case GateKind::P: return {1, 0, 0, std::polar(1.0, g.theta)};
    case GateKind::RY: {
      const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      return {c, -s, s, c};
    }
    case GateKind::RZ:
      return {std::polar(1.0, g.theta / 2), 0, 0, std::polar(1.0, -g.theta / 2)};
    case GateKind::SWAP:
    case GateKind::GlobalPhase: break;
  }
  throw Error(ErrorCode::kOutOfRange, "gate has no 2x2 matrix");
}

std::size_t expected_targets(GateKind k) {
  if (k == GateKind::SWAP) return 2;
  if (k == GateKind::GlobalPhase) return 0;
  return 1;
}

void check_qubits(const std::vector<std::size_t>& qubits, std::size_t width,
                  const char* what) {
  std::set<std::size_t> seen;
  for (std::size_t q : qubits) {
    if (q >= width) {
      throw Error(ErrorCode::kOutOfRange, std::string(what) + " qubit " + std::to_string(q) +
                                              " >= width " + std::to_string(width));
    }
    if (!seen.insert(q).second) {
      throw Error(ErrorCode::kOutOfRange, std::string(what) + " repeats qubit " +
                                              std::to_string(q));
    }
  }
}

void validate(const Gate& g, std::size_t width) {
  if (g.targets.size() != expected_targets(g.kind)) {
    throw Error(ErrorCode::kOutOfRange, std::string(gate_name(g.kind)) + " takes " +
                                            std::to_string(expected_targets(g.kind)) +
                                            " targets");
  }
  std::vector<std::size_t> all = g.targets;
  for (const auto& c : g.controls) all.push_back(c.qubit);
  check_qubits(all, width, "gate");
}

void validate(const MacroGate& m, std::size_t width) {
  if (m.qubits.empty()) throw Error(ErrorCode::kOutOfRange, "macro over an empty register");
  check_qubits(m.qubits, width, "macro");
  const std::size_t dim = std::size_t{1} << m.qubits.size();
  if ((m.kind == MacroKind::AdderQFT || m.kind == MacroKind::AdderLadder) && m.shift >= dim) {
    throw Error(ErrorCode::kOutOfRange, "adder shift " + std::to_string(m.shift) +
                                            " outside [0, " + std::to_string(dim) + ")");
  }
  if (m.kind == MacroKind::StatePrep) {
    if (m.amplitudes.size() != dim) {
      throw Error(ErrorCode::kDimMismatch, "state preparation amplitude count");
    }
    double n2 = 0.0;
    for (const auto& a : m.amplitudes) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > tol::kUnitary) {
      throw Error(ErrorCode::kNotNormalized, "state preparation amplitudes");
    }
  }
}

struct ControlMask {
  std::size_t mask = 0;
  std::size_t value = 0;
};

std::size_t bit_of(std::size_t q, std::size_t n) { return std::size_t{1} << (n - 1 - q); }

ControlMask control_mask(const std::vector<Control>& controls, std::size_t n) {
  ControlMask cm;
  for (const auto& c : controls) {
    cm.mask |= bit_of(c.qubit, n);
    if (c.positive) cm.value |= bit_of(c.qubit, n);
  }
  return cm;
}

Gate inverse_gate(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::S:
      out.kind = GateKind::P;
      out.theta = -std::numbers::pi / 2;
      break;
    case GateKind::P:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::GlobalPhase: out.theta = -g.theta; break;
    default: break;
  }
  return out;
}

std::size_t map_qubit(std::size_t q, const std::vector<std::size_t>& map) {
  if (q >= map.size()) throw Error(ErrorCode::kOutOfRange, "remap table too short");
  return map[q];
}

void count_into(const Circuit& c, ResourceReport& r, const std::string& level);

}  // namespace

std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::P: return "p";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::SWAP: return "swap";
    case GateKind::GlobalPhase: return "gphase";
  }
  return "?";
}

bool has_angle(GateKind k) {
  return k == GateKind::P || k == GateKind::RY || k == GateKind::RZ ||
         k == GateKind::GlobalPhase;
}

std::string_view macro_name(MacroKind k) {
  switch (k) {
    case MacroKind::QFT: return "qft";
    case MacroKind::InverseQFT: return "iqft";
    case MacroKind::AdderQFT: return "adder_qft";
    case MacroKind::AdderLadder: return "adder_ladder";
    case MacroKind::StatePrep: return "state_prep";
  }
  return "?";
}

Circuit& Circuit::add(Gate g) {
  validate(g, num_qubits_);
  ops_.emplace_back(std::move(g));
  return *this;
}

Circuit& Circuit::add(MacroGate m) {
  validate(m, num_qubits_);
  ops_.emplace_back(std::move(m));
  return *this;
}

Circuit& Circuit::add(const Op& op) {
  std::visit([this](const auto& o) { add(o); }, op);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits() > num_qubits_) {
    throw Error(ErrorCode::kRegisterMismatch, "appending a " +
                                                  std::to_string(other.num_qubits()) +
                                                  "-qubit circuit to a " +
                                                  std::to_string(num_qubits_) + "-qubit one");
  }
  for (const auto& op : other.ops()) add(op);
  return *this;
}

Circuit& Circuit::label(std::string name, std::size_t start, std::size_t size) {
  if (start + size > num_qubits_) throw Error(ErrorCode::kOutOfRange, "register " + name);
  registers_[std::move(name)] = Register{start, size};
  return *this;
}

Circuit& Circuit::x(std::size_t q, std::vector<Control> c) {
  return add(Gate{GateKind::X, 0.0, {q}, std::move(c)});
}
Circuit& Circuit::y(std::size_t q, std::vector<Control> c) {
  return add(Gate{GateKind::Y, 0.0, {q}, std::move(c)});
}
Circuit& Circuit::z(std::size_t q, std::vector<Control> c) {
  return add(Gate{GateKind::Z, 0.0, {q}, std::move(c)});
}
Circuit& Circuit::h(std::size_t q, std::vector<Control> c) {
  return add(Gate{GateKind::H, 0.0, {q}, std::move(c)});
}
Circuit& Circuit::s(std::size_t q, std::vector<Control> c) {
  return add(Gate{GateKind::S, 0.0, {q}, std::move(c)});
}
Circuit& Circuit::p(std::size_t q, double theta, std::vector<Control> c) {
  return add(Gate{GateKind::P, theta, {q}, std::move(c)});
}
Circuit& Circuit::ry(std::size_t q, double theta, std::vector<Control> c) {
  return add(Gate{GateKind::RY, theta, {q}, std::move(c)});
}
Circuit& Circuit::rz(std::size_t q, double theta, std::vector<Control> c) {
  return add(Gate{GateKind::RZ, theta, {q}, std::move(c)});
}
Circuit& Circuit::swap(std::size_t a, std::size_t b, std::vector<Control> c) {
  return add(Gate{GateKind::SWAP, 0.0, {a, b}, std::move(c)});
}
Circuit& Circuit::cx(std::size_t control, std::size_t target) {
  return add(Gate{GateKind::X, 0.0, {target}, {Control{control, true}}});
}
Circuit& Circuit::phase(double theta, std::vector<Control> c) {
  return add(Gate{GateKind::GlobalPhase, theta, {}, std::move(c)});
}

void apply_gate(ComplexMatrix& state, std::size_t n, const Gate& g) {
  const std::size_t dim = std::size_t{1} << n;
  if (state.rows() != dim) throw Error(ErrorCode::kDimMismatch, "state rows vs qubit count");
  const std::size_t cols = state.cols();
  const ControlMask cm = control_mask(g.controls, n);
  auto row = [&](std::size_t r) { return state.entries().data() + r * cols; };

  if (g.kind == GateKind::GlobalPhase) {
    const cplx ph = std::polar(1.0, g.theta);
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & cm.mask) != cm.value) continue;
      cplx* ri = row(i);
      for (std::size_t c = 0; c < cols; ++c) ri[c] *= ph;
    }
    return;
  }
  if (g.kind == GateKind::SWAP) {
    const std::size_t ba = bit_of(g.targets[0], n), bb = bit_of(g.targets[1], n);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!(i & ba) || (i & bb) || (i & cm.mask) != cm.value) continue;
      std::swap_ranges(row(i), row(i) + cols, row(i ^ ba ^ bb));
    }
    return;
  }
  const Mat2 u = gate_matrix(g);
  const std::size_t bit = bit_of(g.targets[0], n);
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & bit) || (i & cm.mask) != cm.value) continue;
    cplx* r0 = row(i);
    cplx* r1 = row(i | bit);
    for (std::size_t c = 0; c < cols; ++c) {
      const cplx a = r0[c], b = r1[c];
      r0[c] = u[0] * a + u[1] * b;
      r1[c] = u[2] * a + u[3] * b;
    }
  }
}

ComplexMatrix lower(const Circuit& c) {
  if (c.num_qubits() > kMaxLowerQubits) {
    throw Error(ErrorCode::kTooManyQubits, std::to_string(c.num_qubits()) + " qubits");
  }
  const Circuit flat = expand_macros(c);
  ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << c.num_qubits());
  for (const auto& op : flat.ops()) apply_gate(u, c.num_qubits(), std::get<Gate>(op));
  return u;
}

StateVector simulate(const Circuit& c, const StateVector& psi) {
  if (psi.dim() != (std::size_t{1} << c.num_qubits())) {
    throw Error(ErrorCode::kDimMismatch, "state dimension vs circuit width");
  }
  const Circuit flat = expand_macros(c);
  ComplexMatrix v(psi.dim(), 1, std::vector<cplx>(psi.amplitudes().begin(),
                                                   psi.amplitudes().end()));
  for (const auto& op : flat.ops()) apply_gate(v, c.num_qubits(), std::get<Gate>(op));
  std::vector<cplx> amps(v.entries().begin(), v.entries().end());
  return StateVector::raw(std::move(amps));
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (auto it = c.ops().rbegin(); it != c.ops().rend(); ++it) {
    if (const auto* g = std::get_if<Gate>(&*it)) {
      out.add(inverse_gate(*g));
      continue;
    }
    MacroGate m = std::get<MacroGate>(*it);
    const std::size_t dim = std::size_t{1} << m.qubits.size();
    switch (m.kind) {
      case MacroKind::QFT: m.kind = MacroKind::InverseQFT; break;
      case MacroKind::InverseQFT: m.kind = MacroKind::QFT; break;
      case MacroKind::AdderQFT:
      case MacroKind::AdderLadder: m.shift = (dim - m.shift) % dim; break;
      case MacroKind::StatePrep: {
        Circuit single(c.num_qubits());
        single.add(m);
        out.append(inverse(expand_macros(single)));
        continue;
      }
    }
    out.add(std::move(m));
  }
  for (const auto& [name, reg] : c.registers()) out.label(name, reg.start, reg.size);
  return out;
}

Circuit conjugate(const Circuit& c) {
  const Circuit flat = expand_macros(c);
  Circuit out(c.num_qubits());
  for (const auto& op : flat.ops()) {
    Gate g = std::get<Gate>(op);
    switch (g.kind) {
      case GateKind::Y:
        out.add(g);
        out.phase(std::numbers::pi, g.controls);
        continue;
      case GateKind::S:
        g.kind = GateKind::P;
        g.theta = -std::numbers::pi / 2;
        break;
      case GateKind::P:
      case GateKind::RZ:
      case GateKind::GlobalPhase: g.theta = -g.theta; break;
      default: break;
    }
    out.add(std::move(g));
  }
  for (const auto& [name, reg] : c.registers()) out.label(name, reg.start, reg.size);
  return out;
}

Circuit controlled(const Circuit& c, const std::vector<Control>& controls) {
  const Circuit flat = expand_macros(c);
  Circuit out(c.num_qubits());
  for (const auto& op : flat.ops()) {
    Gate g = std::get<Gate>(op);
    g.controls.insert(g.controls.end(), controls.begin(), controls.end());
    out.add(std::move(g));
  }
  return out;
}

Circuit remap(const Circuit& c, const std::vector<std::size_t>& map, std::size_t width) {
  Circuit out(width);
  for (const auto& op : c.ops()) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      Gate m = *g;
      for (auto& t : m.targets) t = map_qubit(t, map);
      for (auto& ctl : m.controls) ctl.qubit = map_qubit(ctl.qubit, map);
      out.add(std::move(m));
    } else {
      MacroGate m = std::get<MacroGate>(op);
      for (auto& q : m.qubits) q = map_qubit(q, map);
      out.add(std::move(m));
    }
  }
  return out;
}

Circuit shifted(const Circuit& c, std::size_t offset, std::size_t width) {
  std::vector<std::size_t> map(c.num_qubits());
  for (std::size_t q = 0; q < map.size(); ++q) map[q] = q + offset;
  Circuit out = remap(c, map, width);
  for (const auto& [name, reg] : c.registers()) out.label(name, reg.start + offset, reg.size);
  return out;
}

namespace {

bool is_arbitrary_angle(double theta) {
  const double quarter = std::numbers::pi / 2;
  return std::abs(theta - std::round(theta / quarter) * quarter) > tol::kAngle;
}

void count_into(const Circuit& c, ResourceReport& r, const std::string& level) {
  for (const auto& op : c.ops()) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      ++r.total_gates;
      ++r.level_histogram[level][std::string(gate_name(g->kind))];
      ++r.gate_histogram[std::string(gate_name(g->kind))];
      ++r.control_histogram[g->controls.size()];
      const bool rotation =
          g->kind == GateKind::P || g->kind == GateKind::RY || g->kind == GateKind::RZ;
      if (rotation && is_arbitrary_angle(g->theta)) ++r.arbitrary_rotations;
      continue;
    }
    const auto& m = std::get<MacroGate>(op);
    const std::string name(macro_name(m.kind));
    ++r.macro_calls[name];
    Circuit single(c.num_qubits());
    single.add(m);
    count_into(expand_macros_once(single), r, name);
  }
}

}  // namespace

ResourceReport count_resources(const Circuit& c) {
  ResourceReport r;
  count_into(c, r, "");
  return r;
}

}  // namespace qubitizer
