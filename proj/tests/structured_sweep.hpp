#pragma once

// Every structured kind and variant at one matrix size, plus helpers to turn a
// decomposition back into the matrix it represents. Shared by the structured
// tests and the acceptance runner.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "qubitizer/circuit.hpp"
#include "qubitizer/errors.hpp"
#include "qubitizer/structured.hpp"

namespace qt {

using namespace qubitizer;

// Rows of the value register with the ancilla register at |0>.
inline ComplexMatrix value_block(const Circuit& c, std::size_t width) {
  const std::size_t m = std::size_t{1} << width;
  ComplexMatrix out(m, m);
  for (std::size_t x = 0; x < m; ++x) {
    const StateVector s = simulate(c, StateVector::basis(m * m, x * m));
    for (std::size_t y = 0; y < m; ++y) out(y, x) = s[y * m];
  }
  return out;
}

inline ComplexMatrix realized(const Decomposition& d, const StructuredSpec& spec) {
  if (spec.kind == StructuredKind::PermutationTable) return value_block(*d.unitary, d.num_qubits);
  if (d.lch) return materialize(*d.lch);
  return materialize(*d.lcu);
}

inline std::vector<std::size_t> random_cycle(std::size_t m, std::mt19937_64& rng) {
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> succ(m);
  for (std::size_t k = 0; k < m; ++k) succ[order[k]] = order[(k + 1) % m];
  return succ;
}

inline std::vector<StructuredSpec> sweep_specs(std::size_t m, std::mt19937_64& rng) {
  std::vector<StructuredSpec> out;
  const cplx w(0.6, -0.8);
  auto add = [&](StructuredKind k, std::size_t n, std::string variant = {}, cplx weight = 1.0) {
    StructuredSpec s;
    s.kind = k;
    s.m = m;
    s.n = n;
    s.variant = std::move(variant);
    s.weight = weight;
    out.push_back(std::move(s));
  };
  for (std::size_t n = 1; n < m; ++n) {
    add(StructuredKind::ToeplitzDiag, n, {}, w);
    for (const char* v : {"recursive", "adder", "lcu"}) add(StructuredKind::Circulant, n, v, w);
    try {
      StructuredSpec s;
      s.kind = StructuredKind::CirculantAdder;
      s.m = m;
      s.n = n;
      s.weight = w;
      validate(s);
      out.push_back(s);
    } catch (const Error&) {
    }
  }
  for (std::size_t n = 1; n <= 2 * m - 1; ++n) add(StructuredKind::HankelAntiDiag, n, {}, -0.7);
  for (std::size_t n = 0; n < m; ++n) {
    for (const char* v : {"sum", "adder_conjugation", "anti_adder"}) add(StructuredKind::AntiCirculant, n, v);
  }
  if (m <= 16) {
    for (std::size_t n = 1; n < m; ++n) {
      const auto succ = random_cycle(m, rng);
      for (const char* v : {"recursive", "adder"}) {
        add(StructuredKind::CircularPermutation, n, v);
        out.back().table = succ;
      }
    }
  }
  for (int rep = 0; rep < 3; ++rep) {
    StructuredSpec s;
    s.kind = StructuredKind::PermutationTable;
    s.m = m;
    s.table.resize(m);
    for (std::size_t i = 0; i < m; ++i) s.table[i] = i;
    std::shuffle(s.table.begin(), s.table.end(), rng);
    out.push_back(s);
  }
  for (std::size_t s = m; s <= 32; s *= 2) {
    for (std::size_t n = 1; n < m; ++n) {
      add(StructuredKind::CornerEmbed, n, {}, w);
      out.back().s = s;
      out.back().inner = StructuredKind::Circulant;
    }
  }
  const StateVector psi = random_state(m, rng), phi = random_state(m, rng);
  const std::vector<cplx> a(psi.amplitudes().begin(), psi.amplitudes().end());
  const std::vector<cplx> b(phi.amplitudes().begin(), phi.amplitudes().end());
  add(StructuredKind::DensityMatrix, 0);
  out.back().psi = a;
  add(StructuredKind::OuterProduct, 0);
  out.back().psi = a;
  out.back().phi = b;
  add(StructuredKind::OuterProduct, 0, "pseudo_covariance");
  out.back().psi = a;
  for (bool line : {false, true}) {
    add(StructuredKind::LineColumn, 0);
    out.back().psi = a;
    out.back().index = m / 2;
    out.back().line = line;
  }
  if (m >= 4) {
    for (bool cyc : {false, true}) {
      StructuredSpec g;
      g.kind = StructuredKind::Grid;
      g.m = m;
      g.dims = {2, m / 2};
      g.cyclic = {cyc, !cyc};
      out.push_back(g);
    }
  }
  return out;
}

inline std::string describe(const StructuredSpec& s) {
  return std::string(to_string(s.kind)) + " n=" + std::to_string(s.n) + " m=" + std::to_string(s.m) +
         " s=" + std::to_string(s.s) + " variant=" + s.variant;
}

}  // namespace qt
