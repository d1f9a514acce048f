#include <algorithm>
#include <cmath>
#include <numbers>

#include "qubitizer/circuit.hpp"
#include "qubitizer/errors.hpp"

namespace qubitizer {

namespace {

std::vector<Control> prefix_controls(const std::vector<std::size_t>& qubits, std::size_t len,
                                     std::size_t value) {
  std::vector<Control> out;
  for (std::size_t b = 0; b < len; ++b) {
    out.push_back(Control{qubits[b], ((value >> (len - 1 - b)) & 1U) != 0});
  }
  return out;
}

bool is_uniform_positive(const std::vector<cplx>& amps) {
  const double target = 1.0 / std::sqrt(static_cast<double>(amps.size()));
  return std::all_of(amps.begin(), amps.end(), [&](const cplx& a) {
    return std::abs(a - cplx(target)) < 1e-14;
  });
}

}  // namespace

Circuit qft_circuit(const std::vector<std::size_t>& q, std::size_t width) {
  Circuit c(width);
  const std::size_t m = q.size();
  for (std::size_t j = 0; j < m; ++j) {
    c.h(q[j]);
    for (std::size_t k = j + 1; k < m; ++k) {
      const double angle = 2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - j + 1));
      c.p(q[j], angle, {Control{q[k], true}});
    }
  }
  for (std::size_t j = 0; j < m / 2; ++j) c.swap(q[j], q[m - 1 - j]);
  return c;
}

Circuit adder_qft_circuit(const std::vector<std::size_t>& q, std::size_t shift,
                          std::size_t width) {
  Circuit c(width);
  const std::size_t m = q.size();
  c.add(MacroGate{MacroKind::QFT, q, 0, {}});
  for (std::size_t b = 0; b < m; ++b) {
    // Qubit b carries weight 2^(m-1-b), so the phase is 2 pi shift / 2^(b+1).
    const std::size_t period = std::size_t{1} << (b + 1);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(shift % period) /
                         static_cast<double>(period);
    c.p(q[b], angle);
  }
  c.add(MacroGate{MacroKind::InverseQFT, q, 0, {}});
  return c;
}

Circuit adder_ladder_circuit(const std::vector<std::size_t>& q, std::size_t shift,
                             std::size_t width) {
  Circuit c(width);
  const std::size_t m = q.size();
  for (std::size_t power = 0; power < m; ++power) {
    if (!((shift >> power) & 1U)) continue;
    // Adding 2^power increments the top (m - power) qubits.
    const std::size_t k = m - power;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Control> ctl;
      for (std::size_t l = j + 1; l < k; ++l) ctl.push_back(Control{q[l], true});
      c.x(q[j], std::move(ctl));
    }
  }
  return c;
}

Circuit state_prep_circuit(const std::vector<std::size_t>& q,
                           const std::vector<cplx>& amps, std::size_t width) {
  if (amps.size() != (std::size_t{1} << q.size()) || !is_uniform_positive(amps)) {
    return ry_tree_circuit(q, amps, width);
  }
  Circuit c(width);
  for (std::size_t b = 0; b < q.size(); ++b) c.h(q[b]);
  return c;
}

Circuit ry_tree_circuit(const std::vector<std::size_t>& q, const std::vector<cplx>& amps,
                        std::size_t width) {
  const std::size_t k = q.size();
  if (amps.size() != (std::size_t{1} << k)) {
    throw Error(ErrorCode::kDimMismatch, "state preparation amplitude count");
  }
  Circuit c(width);
  std::vector<double> w(amps.size());
  std::transform(amps.begin(), amps.end(), w.begin(), [](const cplx& a) { return std::norm(a); });

  for (std::size_t level = 0; level < k; ++level) {
    const std::size_t block = std::size_t{1} << (k - level);
    const std::size_t prefixes = std::size_t{1} << level;
    std::vector<std::pair<std::size_t, double>> angles;
    for (std::size_t p = 0; p < prefixes; ++p) {
      double w0 = 0.0, total = 0.0;
      for (std::size_t i = 0; i < block; ++i) {
        total += w[p * block + i];
        if (i < block / 2) w0 += w[p * block + i];
      }
      if (total <= 1e-300) continue;
      const double ratio = std::clamp(w0 / total, 0.0, 1.0);
      angles.emplace_back(p, 2.0 * std::acos(std::sqrt(ratio)));
    }
    if (angles.empty()) continue;
    const bool shared = std::all_of(angles.begin(), angles.end(), [&](const auto& a) {
      return std::abs(a.second - angles.front().second) < 1e-13;
    });
    if (shared) {
      if (std::abs(angles.front().second) > 1e-15) c.ry(q[level], angles.front().second);
      continue;
    }
    for (const auto& [p, theta] : angles) {
      if (std::abs(theta) <= 1e-15) continue;
      c.ry(q[level], theta, prefix_controls(q, level, p));
    }
  }
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::abs(amps[i]) <= 1e-300) continue;
    const double phi = std::arg(amps[i]);
    if (std::abs(phi) <= 1e-15) continue;
    c.phase(phi, prefix_controls(q, k, i));
  }
  return c;
}

Circuit expand_macros_once(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (const auto& op : c.ops()) {
    const auto* m = std::get_if<MacroGate>(&op);
    if (!m) {
      out.add(op);
      continue;
    }
    const std::size_t w = c.num_qubits();
    switch (m->kind) {
      case MacroKind::QFT: out.append(qft_circuit(m->qubits, w)); break;
      case MacroKind::InverseQFT: out.append(inverse(qft_circuit(m->qubits, w))); break;
      case MacroKind::AdderQFT: out.append(adder_qft_circuit(m->qubits, m->shift, w)); break;
      case MacroKind::AdderLadder:
        out.append(adder_ladder_circuit(m->qubits, m->shift, w));
        break;
      case MacroKind::StatePrep:
        out.append(state_prep_circuit(m->qubits, m->amplitudes, w));
        break;
      default:
        throw Error(ErrorCode::kUnknownMacro, std::to_string(static_cast<int>(m->kind)));
    }
  }
  for (const auto& [name, reg] : c.registers()) out.label(name, reg.start, reg.size);
  return out;
}

Circuit expand_macros(const Circuit& c) {
  Circuit out = c;
  auto has_macro = [](const Circuit& x) {
    return std::any_of(x.ops().begin(), x.ops().end(),
                       [](const Op& op) { return std::holds_alternative<MacroGate>(op); });
  };
  while (has_macro(out)) out = expand_macros_once(out);
  return out;
}

}  // namespace qubitizer
