#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"
#include "qubitizer/synth.hpp"

namespace qubitizer {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::size_t> range(std::size_t start, std::size_t count) {
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), start);
  return out;
}

std::size_t ceil_log2(std::size_t count) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < count) ++k;
  return k;
}

// V; C_flags gates on the reduct qubit; V^dagger.
Circuit sandwich(const Reducer& r, const std::vector<Gate>& middle) {
  const Circuit v = r.basis_change();
  Circuit c(r.num_qubits);
  c.append(v);
  for (Gate g : middle) {
    if (g.kind != GateKind::GlobalPhase) g.targets = {r.reduct_qubit};
    g.controls.insert(g.controls.end(), r.perp_flags.begin(), r.perp_flags.end());
    c.add(std::move(g));
  }
  c.append(inverse(v));
  return c;
}

Gate bare(GateKind k, double theta = 0.0) { return Gate{k, theta, {}, {}}; }

void append_segment(Circuit& c, const std::vector<Reducer>& reducers,
                    const std::vector<double>& alphas, std::size_t j, double dt) {
  c.append(hs_exact(reducers[j], alphas[j] * dt));
}

}  // namespace

Circuit trotter(const Lch& lch, const TrotterPlan& plan) {
  if (plan.steps == 0) throw Error(ErrorCode::kOutOfRange, "Trotter steps must be >= 1");
  if (plan.order != 1 && plan.order != 2) {
    throw Error(ErrorCode::kOutOfRange, "Trotter order must be 1 or 2");
  }
  std::vector<std::size_t> order = plan.term_order;
  if (order.empty()) order = range(0, lch.size());
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != range(0, lch.size())) {
      throw Error(ErrorCode::kOutOfRange, "term order is not a permutation");
    }
  }
  std::vector<Reducer> reducers;
  std::vector<double> alphas;
  for (const auto& t : lch.terms()) {
    reducers.push_back(reducer_from_term(t));
    alphas.push_back(term_weight(t.string));
  }
  Circuit c(lch.num_qubits());
  const double n = static_cast<double>(plan.steps);
  for (std::size_t step = 0; step < plan.steps; ++step) {
    if (plan.order == 1) {
      for (std::size_t j : order) append_segment(c, reducers, alphas, j, plan.t / n);
    } else {
      for (std::size_t j : order) append_segment(c, reducers, alphas, j, plan.t / (2 * n));
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        append_segment(c, reducers, alphas, *it, plan.t / (2 * n));
      }
    }
  }
  return c;
}

Lcu lch_to_lcu(const Reducer& r) {
  Lcu out{r.num_qubits, {}};
  if (r.projector) {
    out.terms.push_back({cplx(0.5), Circuit(r.num_qubits)});
    out.terms.push_back({cplx(-0.5), sandwich(r, {bare(GateKind::Z)})});
  } else {
    out.terms.push_back({cplx(0.5), sandwich(r, {bare(GateKind::Z)})});
    out.terms.push_back(
        {cplx(-0.5), sandwich(r, {bare(GateKind::X), bare(GateKind::Z), bare(GateKind::X)})});
  }
  return out;
}

Lcu lch_to_lcu(const Lch& lch) {
  Lcu out{lch.num_qubits(), {}};
  for (const auto& t : lch.terms()) {
    const double alpha = term_weight(t.string);
    for (auto& term : lch_to_lcu(reducer_from_term(t)).terms) {
      out.terms.push_back({term.coefficient * alpha, std::move(term.unitary)});
    }
  }
  return out;
}

Lcu nonhermitian_split_literal(const Reducer& r, Transition which) {
  if (r.projector) throw Error(ErrorCode::kNotQubitized, "projector reducer");
  const cplx sign = which == Transition::Raise ? cplx(0, 0.5) : cplx(0, -0.5);
  return Lcu{r.num_qubits,
             {{cplx(0.5), sandwich(r, {bare(GateKind::X)})},
              {sign, sandwich(r, {bare(GateKind::Y)})}}};
}

Lcu nonhermitian_split(const Reducer& r, Transition which) {
  if (r.perp_flags.empty()) return nonhermitian_split_literal(r, which);
  if (r.projector) throw Error(ErrorCode::kNotQubitized, "projector reducer");
  // C(-U) differs from C U by a phase of pi on the flagged subspace only, so
  // the differences cancel everywhere a flag fails.
  const cplx sign = which == Transition::Raise ? cplx(0, 0.25) : cplx(0, -0.25);
  const Gate flip = bare(GateKind::GlobalPhase, kPi);
  return Lcu{r.num_qubits,
             {{cplx(0.25), sandwich(r, {bare(GateKind::X)})},
              {cplx(-0.25), sandwich(r, {bare(GateKind::X), flip})},
              {sign, sandwich(r, {bare(GateKind::Y)})},
              {-sign, sandwich(r, {bare(GateKind::Y), flip})}}};
}

Circuit prep(const std::vector<double>& weights) {
  if (weights.empty()) throw Error(ErrorCode::kAllZeroWeights, "no weights");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw Error(ErrorCode::kOutOfRange, "weights must be finite and nonnegative");
    }
    total += w;
  }
  if (total <= 0.0) throw Error(ErrorCode::kAllZeroWeights, "all weights are zero");
  const std::size_t k = std::max<std::size_t>(1, ceil_log2(weights.size()));
  std::vector<cplx> amps(std::size_t{1} << k);
  for (std::size_t i = 0; i < weights.size(); ++i) amps[i] = std::sqrt(weights[i] / total);
  return ry_tree_circuit(range(0, k), amps, k);
}

Circuit select(const std::vector<Circuit>& unitaries) {
  if (unitaries.empty()) throw Error(ErrorCode::kRegisterMismatch, "no unitaries to select");
  const std::size_t n = unitaries.front().num_qubits();
  for (const auto& u : unitaries) {
    if (u.num_qubits() != n) throw Error(ErrorCode::kRegisterMismatch, "unequal widths");
  }
  const std::size_t k = std::max<std::size_t>(1, ceil_log2(unitaries.size()));
  Circuit c(k + n);
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    std::vector<Control> ctl;
    for (std::size_t b = 0; b < k; ++b) ctl.push_back(Control{b, ((i >> (k - 1 - b)) & 1U) != 0});
    c.append(controlled(shifted(unitaries[i], k, k + n), ctl));
  }
  c.label("index", 0, k);
  c.label("system", k, n);
  return c;
}

BlockEncoding block_encode(const Lcu& lcu) {
  if (lcu.terms.empty()) throw Error(ErrorCode::kRegisterMismatch, "empty LCU");
  const std::size_t n = lcu.num_qubits;
  std::vector<double> weights;
  std::vector<Circuit> unitaries;
  for (const auto& term : lcu.terms) {
    if (term.unitary.num_qubits() != n) {
      throw Error(ErrorCode::kRegisterMismatch, "term width differs from the LCU");
    }
    if (n <= kMaxLowerQubits && unitarity_defect(lower(term.unitary)) > 1e-9) {
      throw Error(ErrorCode::kNonUnitaryTerm, "term is not unitary");
    }
    weights.push_back(std::abs(term.coefficient));
    Circuit u = term.unitary;
    const double phi = std::arg(term.coefficient);
    if (std::abs(term.coefficient) > 0.0 && std::abs(phi) > 0.0) u.phase(phi);
    unitaries.push_back(std::move(u));
  }
  const Circuit p = prep(weights);
  const std::size_t k = p.num_qubits();
  const Circuit sel = select(unitaries);
  const std::size_t total = k + 1 + n;

  std::vector<std::size_t> sel_map(k + n);
  for (std::size_t q = 0; q < k + n; ++q) sel_map[q] = q < k ? q : q + 1;

  BlockEncoding be;
  be.index_qubits = k;
  be.system_qubits = n;
  be.subnormalization = std::accumulate(weights.begin(), weights.end(), 0.0);
  be.circuit = Circuit(total);
  be.circuit.append(p);
  be.circuit.append(remap(sel, sel_map, total));
  be.circuit.append(inverse(p));
  be.circuit.x(k);
  be.circuit.label("index", 0, k);
  be.circuit.label("b2", k, 1);
  be.circuit.label("system", k + 1, n);
  return be;
}

ComplexMatrix encoded_block(const BlockEncoding& be) {
  const std::size_t k = be.index_qubits;
  const std::size_t n = be.system_qubits;
  const std::size_t total = k + 1 + n;
  const std::size_t sys_dim = std::size_t{1} << n;
  const std::size_t b2_bit = sys_dim;  // b2 sits just above the system register
  const double h = 1.0 / std::sqrt(2.0);

  ComplexMatrix state(std::size_t{1} << total, sys_dim);
  for (std::size_t j = 0; j < sys_dim; ++j) {
    state(j, j) = h;
    state(b2_bit | j, j) = h;
  }
  const Circuit flat = expand_macros(be.circuit);
  for (const auto& op : flat.ops()) apply_gate(state, total, std::get<Gate>(op));

  ComplexMatrix out(sys_dim, sys_dim);
  for (std::size_t i = 0; i < sys_dim; ++i) {
    for (std::size_t j = 0; j < sys_dim; ++j) {
      out(i, j) = h * (state(i, j) + state(b2_bit | i, j));
    }
  }
  return out;
}

double reflection_defect(const Circuit& c) {
  if (c.num_qubits() <= kMaxLowerQubits) {
    const ComplexMatrix u = lower(c);
    return max_abs_diff(u * u, ComplexMatrix::identity(u.rows()));
  }
  // Too wide to lower: probe evenly spaced basis states and a few random ones.
  const std::size_t dim = std::size_t{1} << c.num_qubits();
  const std::size_t basis_probes = 64, random_probes = 4;
  ComplexMatrix probes(dim, basis_probes + random_probes);
  for (std::size_t j = 0; j < basis_probes; ++j) probes(j * (dim / basis_probes), j) = 1.0;
  std::mt19937_64 rng(20240531);
  for (std::size_t j = 0; j < random_probes; ++j) {
    const StateVector psi = random_state(dim, rng);
    for (std::size_t i = 0; i < dim; ++i) probes(i, basis_probes + j) = psi[i];
  }
  ComplexMatrix state = probes;
  const Circuit flat = expand_macros(c);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& op : flat.ops()) apply_gate(state, c.num_qubits(), std::get<Gate>(op));
  }
  return max_abs_diff(state, probes);
}

Circuit qubitize(const BlockEncoding& be) {
  const double defect = reflection_defect(be.circuit);
  if (defect > tol::kUnitary) {
    throw Error(ErrorCode::kNotReflection,
                "S^2 deviates from I by " + std::to_string(defect));
  }
  const std::size_t b2 = be.b2_qubit();
  std::vector<Control> idx_zero;
  for (std::size_t q = 0; q < be.index_qubits; ++q) idx_zero.push_back(Control{q, false});

  Circuit w(be.circuit.num_qubits());
  w.append(be.circuit);
  // 2 Pi - I with Pi = |0><0|_index (x) |+><+|_b2.
  w.h(b2);
  w.x(b2);
  w.z(b2, idx_zero);
  w.x(b2);
  w.h(b2);
  w.phase(kPi);
  for (const auto& [name, reg] : be.circuit.registers()) w.label(name, reg.start, reg.size);
  return w;
}

std::vector<WalkCheck> walk_eigenphase_check(const BlockEncoding& be, const Circuit& walk) {
  const ComplexMatrix block = encoded_block(be);
  const EigenSystem es = hermitian_eig(0.5 * (block + block.adjoint()));
  const std::size_t sys_dim = block.rows();
  const std::size_t total = be.circuit.num_qubits();
  const std::size_t dim = std::size_t{1} << total;
  const double h = 1.0 / std::sqrt(2.0);

  std::vector<WalkCheck> out;
  for (std::size_t e = 0; e < sys_dim; ++e) {
    std::vector<cplx> g(dim);
    for (std::size_t i = 0; i < sys_dim; ++i) {
      g[i] = h * es.eigenvectors(i, e);
      g[sys_dim | i] = h * es.eigenvectors(i, e);
    }
    const StateVector gv = StateVector::raw(g);
    const StateVector sg = simulate(be.circuit, gv);
    const cplx lambda = inner(gv, sg);

    std::vector<cplx> perp(dim);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      perp[i] = sg[i] - lambda * g[i];
      norm2 += std::norm(perp[i]);
    }
    WalkCheck chk;
    chk.eigenvalue = es.eigenvalues[e];
    if (std::sqrt(norm2) < 1e-9) {
      chk.cosine = lambda.real();
    } else {
      for (auto& a : perp) a /= std::sqrt(norm2);
      const StateVector pv = StateVector::raw(perp);
      const cplx tr = inner(gv, simulate(walk, gv)) + inner(pv, simulate(walk, pv));
      chk.cosine = 0.5 * tr.real();
    }
    chk.deviation = std::abs(chk.cosine - chk.eigenvalue);
    out.push_back(chk);
  }
  return out;
}

}  // namespace qubitizer
