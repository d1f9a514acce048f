#include <bit>
#include <numeric>

#include "qubitizer/errors.hpp"
#include "qubitizer/structured.hpp"

namespace qubitizer {

namespace {

std::size_t state_qubits(const StateVector& psi) {
  const std::size_t dim = psi.dim();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw Error(ErrorCode::kDimMismatch, "state dimension must be a power of two >= 2");
  }
  if (!psi.normalized()) throw Error(ErrorCode::kNotNormalized, "state is not normalized");
  return std::bit_width(dim) - 1;
}

Circuit chain(std::size_t width, std::initializer_list<const Circuit*> parts) {
  Circuit c(width);
  for (const Circuit* p : parts) c.append(*p);
  return c;
}

Circuit flip_bits(std::size_t j, std::size_t width) {
  Circuit c(width);
  for (std::size_t q = 0; q < width; ++q) {
    if ((j >> (width - 1 - q)) & 1U) c.x(q);
  }
  return c;
}

}  // namespace

Circuit prepare_state(const StateVector& psi) {
  const std::size_t width = state_qubits(psi);
  std::vector<std::size_t> q(width);
  std::iota(q.begin(), q.end(), 0);
  Circuit c(width);
  c.add(MacroGate{MacroKind::StatePrep, q, 0, {psi.amplitudes().begin(), psi.amplitudes().end()}});
  return c;
}

Circuit zero_reflection(std::size_t num_qubits) {
  if (num_qubits == 0) throw Error(ErrorCode::kOutOfRange, "empty register");
  Circuit c(num_qubits);
  for (std::size_t q = 0; q < num_qubits; ++q) c.x(q);
  std::vector<Control> ctl;
  for (std::size_t q = 0; q + 1 < num_qubits; ++q) ctl.push_back(Control{q, true});
  c.z(num_qubits - 1, std::move(ctl));
  for (std::size_t q = 0; q < num_qubits; ++q) c.x(q);
  return c;
}

Lcu density_matrix_lcu(const StateVector& psi) {
  return outer_product_lcu(psi, psi);
}

Lcu outer_product_lcu(const StateVector& phi, const StateVector& psi) {
  const std::size_t width = state_qubits(psi);
  if (state_qubits(phi) != width) throw Error(ErrorCode::kDimMismatch, "phi and psi widths differ");
  const Circuit up = prepare_state(psi);
  const Circuit undo = inverse(up);
  const Circuit r = zero_reflection(width);
  if (phi.dim() == psi.dim() && std::equal(phi.amplitudes().begin(), phi.amplitudes().end(),
                                           psi.amplitudes().begin())) {
    return Lcu{width, {{cplx(0.5), Circuit(width)}, {cplx(-0.5), chain(width, {&undo, &r, &up})}}};
  }
  const Circuit uphi = prepare_state(phi);
  return Lcu{width,
             {{cplx(0.5), chain(width, {&undo, &uphi})},
              {cplx(-0.5), chain(width, {&undo, &r, &uphi})}}};
}

Lcu pseudo_covariance_lcu(const StateVector& psi) {
  const std::size_t width = state_qubits(psi);
  const Circuit up = prepare_state(psi);
  const Circuit undo = inverse(up);
  const Circuit uphi = conjugate(up);
  const Circuit r = zero_reflection(width);
  return Lcu{width,
             {{cplx(0.5), chain(width, {&undo, &uphi})},
              {cplx(-0.5), chain(width, {&undo, &r, &uphi})}}};
}

Lcu line_column_lcu(const StateVector& psi, std::size_t j, bool line) {
  const std::size_t width = state_qubits(psi);
  if (j >= psi.dim()) throw Error(ErrorCode::kOutOfRange, "index outside the state");
  const Circuit xj = flip_bits(j, width);
  const Circuit r = zero_reflection(width);
  const Circuit up = prepare_state(psi);
  if (line) {
    const Circuit undo = inverse(up);
    return Lcu{width,
               {{cplx(0.5), chain(width, {&undo, &xj})},
                {cplx(-0.5), chain(width, {&undo, &r, &xj})}}};
  }
  return Lcu{width,
             {{cplx(0.5), chain(width, {&xj, &up})}, {cplx(-0.5), chain(width, {&xj, &r, &up})}}};
}

BlockEncoding density_matrix(const StateVector& psi) { return block_encode(density_matrix_lcu(psi)); }

BlockEncoding outer_product(const StateVector& phi, const StateVector& psi) {
  return block_encode(outer_product_lcu(phi, psi));
}

BlockEncoding line_column(const StateVector& psi, std::size_t j, bool line) {
  return block_encode(line_column_lcu(psi, j, line));
}

Circuit exp_projector(const StateVector& psi, double t) {
  const std::size_t width = state_qubits(psi);
  const Circuit up = prepare_state(psi);
  std::vector<Control> zeros;
  for (std::size_t q = 0; q < width; ++q) zeros.push_back(Control{q, false});
  Circuit c(width);
  c.append(inverse(up));
  c.phase(t, std::move(zeros));
  c.append(up);
  return c;
}

}  // namespace qubitizer
