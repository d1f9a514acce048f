#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"
#include "qubitizer/structured.hpp"

namespace qubitizer {

namespace {

constexpr std::array<std::pair<StructuredKind, std::string_view>, 12> kKindNames{{
    {StructuredKind::ToeplitzDiag, "toeplitz_diag"},
    {StructuredKind::Circulant, "circulant"},
    {StructuredKind::CirculantAdder, "circulant_adder"},
    {StructuredKind::HankelAntiDiag, "hankel_antidiag"},
    {StructuredKind::AntiCirculant, "anticirculant"},
    {StructuredKind::CornerEmbed, "corner_embed"},
    {StructuredKind::CircularPermutation, "circular_permutation"},
    {StructuredKind::PermutationTable, "permutation_table"},
    {StructuredKind::DensityMatrix, "density_matrix"},
    {StructuredKind::OuterProduct, "outer_product"},
    {StructuredKind::LineColumn, "line_column"},
    {StructuredKind::Grid, "grid"},
}};

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t qubits_of(std::size_t dim) {
  if (dim < 2 || !is_pow2(dim)) {
    throw Error(ErrorCode::kInvalidSpec, "size " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return std::bit_width(dim) - 1;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidSpec, what);
}

StateVector state_of(const std::vector<cplx>& amps, const char* name) {
  require(!amps.empty(), std::string(name) + " is empty");
  qubits_of(amps.size());
  try {
    return StateVector(amps);
  } catch (const Error&) {
    throw Error(ErrorCode::kNotNormalized, std::string(name) + " is not normalized");
  }
}

// Position of the band recursion's circulant inside an m x m matrix.
std::size_t indexed_distance(std::size_t n, std::size_t m) {
  const std::size_t w = std::bit_width(n) - 1;
  return m - ((std::size_t{2} << w) - n);
}

ComplexMatrix circulant_matrix(std::size_t n, std::size_t m, cplx w) {
  ComplexMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    a((i + n) % m, i) += std::conj(w);
    a((i + m - n) % m, i) += w;
  }
  return a;
}

ComplexMatrix toeplitz_matrix(std::size_t n, std::size_t m, cplx w) {
  ComplexMatrix a(m, m);
  for (std::size_t i = 0; i < n; ++i) {
    a(i + m - n, i) = w;
    a(i, i + m - n) = std::conj(w);
  }
  return a;
}

ComplexMatrix hankel_matrix(std::size_t n, std::size_t m, double w) {
  ComplexMatrix a(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (r + c + 1 == n) a(r, c) = w;
    }
  }
  return a;
}

Lcu single_unitary(const Circuit& c) { return Lcu{c.num_qubits(), {{cplx(1.0), c}}}; }

}  // namespace

std::string_view to_string(StructuredKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

StructuredKind parse_structured_kind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  throw Error(ErrorCode::kInvalidSpec, "unknown kind '" + std::string(name) + "'");
}

void validate(const StructuredSpec& spec) {
  const auto& m = spec.m;
  const auto& n = spec.n;
  const auto& v = spec.variant;
  auto variant_in = [&](std::initializer_list<std::string_view> allowed) {
    require(v.empty() || std::find(allowed.begin(), allowed.end(), v) != allowed.end(),
            "unknown variant '" + v + "' for " + std::string(to_string(spec.kind)));
  };
  switch (spec.kind) {
    case StructuredKind::ToeplitzDiag:
      qubits_of(m);
      require(n >= 1 && n < m, "toeplitz_diag needs 1 <= n < m");
      require(std::abs(spec.weight) > 0.0, "weight must be nonzero");
      variant_in({});
      break;
    case StructuredKind::Circulant:
      qubits_of(m);
      require(n >= 1 && n < m, "circulant needs 1 <= n < m");
      require(std::abs(spec.weight) > 0.0, "weight must be nonzero");
      variant_in({"recursive", "adder", "lcu"});
      break;
    case StructuredKind::CirculantAdder: {
      qubits_of(m);
      require(n >= 1 && n < m, "circulant_adder needs 1 <= n < m");
      require(std::abs(spec.weight) > 0.0, "weight must be nonzero");
      const std::size_t w = std::bit_width(n) - 1;
      require(is_pow2(n) ? 2 * n <= m : (std::size_t{2} << w) <= m,
              "circulant_adder needs m >= 2^(floor(log2 n) + 1)");
      variant_in({});
      break;
    }
    case StructuredKind::HankelAntiDiag:
      qubits_of(m);
      require(n >= 1 && n <= 2 * m - 1, "hankel_antidiag needs 1 <= n <= 2m - 1");
      require(spec.weight.imag() == 0.0 && spec.weight.real() != 0.0,
              "hankel_antidiag needs a nonzero real weight");
      variant_in({});
      break;
    case StructuredKind::AntiCirculant:
      qubits_of(m);
      require(n < m, "anticirculant needs 0 <= n < m");
      variant_in({"sum", "adder_conjugation", "anti_adder"});
      break;
    case StructuredKind::CornerEmbed: {
      require(spec.inner != StructuredKind::CornerEmbed, "corner_embed cannot nest");
      StructuredSpec inner = spec;
      inner.kind = spec.inner;
      validate(inner);
      require(qubits_of(spec.s) >= qubits_of(m), "corner_embed needs s >= m");
      break;
    }
    case StructuredKind::CircularPermutation:
      require(spec.table.size() == m, "successor table must have m entries");
      qubits_of(m);
      require(n >= 1 && n < m, "circular_permutation needs 1 <= n < m");
      variant_in({"recursive", "adder"});
      break;
    case StructuredKind::PermutationTable:
      require(spec.table.size() == m, "permutation table must have m entries");
      qubits_of(m);
      PermutationSpec::from_table(spec.table);
      break;
    case StructuredKind::DensityMatrix:
      state_of(spec.psi, "psi");
      break;
    case StructuredKind::OuterProduct:
      if (spec.variant == "pseudo_covariance") {
        state_of(spec.psi, "psi");
      } else {
        variant_in({});
        require(spec.phi.size() == spec.psi.size(), "phi and psi dimensions differ");
        state_of(spec.psi, "psi");
        state_of(spec.phi, "phi");
      }
      break;
    case StructuredKind::LineColumn:
      state_of(spec.psi, "psi");
      if (spec.index >= spec.psi.size()) throw Error(ErrorCode::kOutOfRange, "index outside psi");
      break;
    case StructuredKind::Grid:
      require(!spec.dims.empty(), "grid needs dims");
      for (auto d : spec.dims) qubits_of(d);
      require(spec.cyclic.empty() || spec.cyclic.size() == spec.dims.size(),
              "one boundary flag per axis");
      require(spec.axis_weights.empty() || spec.axis_weights.size() == spec.dims.size(),
              "one weight per axis");
      for (double w : spec.axis_weights) require(w != 0.0, "axis weights must be nonzero");
      break;
  }
}

ComplexMatrix dense_oracle(const StructuredSpec& spec) {
  validate(spec);
  const std::size_t m = spec.m;
  const std::size_t n = spec.n;
  switch (spec.kind) {
    case StructuredKind::ToeplitzDiag: return toeplitz_matrix(n, m, spec.weight);
    case StructuredKind::Circulant: return circulant_matrix(n, m, spec.weight);
    case StructuredKind::CirculantAdder:
      return circulant_matrix(indexed_distance(n, m), m, spec.weight);
    case StructuredKind::HankelAntiDiag: return hankel_matrix(n, m, spec.weight.real());
    case StructuredKind::AntiCirculant: {
      ComplexMatrix a(m, m);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
          if ((r + c + 1 + n) % m == 0) a(r, c) = 1.0;
        }
      }
      return a;
    }
    case StructuredKind::CornerEmbed: {
      StructuredSpec inner = spec;
      inner.kind = spec.inner;
      const ComplexMatrix blk = dense_oracle(inner);
      ComplexMatrix a(spec.s, spec.s);
      for (std::size_t r = 0; r < blk.rows(); ++r) {
        for (std::size_t c = 0; c < blk.cols(); ++c) a(r, c) = blk(r, c);
      }
      return a;
    }
    case StructuredKind::CircularPermutation: {
      std::vector<std::size_t> step(m);
      for (std::size_t i = 0; i < m; ++i) {
        std::size_t x = i;
        for (std::size_t k = 0; k < n; ++k) x = spec.table[x];
        step[i] = x;
      }
      const ComplexMatrix u = permutation_matrix(step);
      return u + u.transpose();
    }
    case StructuredKind::PermutationTable: return permutation_matrix(spec.table);
    case StructuredKind::DensityMatrix: {
      const StateVector psi = state_of(spec.psi, "psi");
      return outer(psi, psi);
    }
    case StructuredKind::OuterProduct: {
      const StateVector psi = state_of(spec.psi, "psi");
      if (spec.variant == "pseudo_covariance") return outer(psi.conj(), psi);
      return outer(state_of(spec.phi, "phi"), psi);
    }
    case StructuredKind::LineColumn: {
      const StateVector psi = state_of(spec.psi, "psi");
      const StateVector e = StateVector::basis(psi.dim(), spec.index);
      return spec.line ? outer(e, psi) : outer(psi, e);
    }
    case StructuredKind::Grid: {
      ComplexMatrix total;
      std::size_t dim = 1;
      for (auto d : spec.dims) dim *= d;
      total = ComplexMatrix(dim, dim);
      std::size_t before = 1;
      for (std::size_t a = 0; a < spec.dims.size(); ++a) {
        const std::size_t s = spec.dims[a];
        const double w = spec.axis_weights.empty() ? 1.0 : spec.axis_weights[a];
        const bool cyc = !spec.cyclic.empty() && spec.cyclic[a];
        const ComplexMatrix band = cyc ? circulant_matrix(s - 1, s, w) : toeplitz_matrix(s - 1, s, w);
        const std::size_t after = dim / before / s;
        total += kron(kron(ComplexMatrix::identity(before), band), ComplexMatrix::identity(after));
        before *= s;
      }
      return total;
    }
  }
  throw Error(ErrorCode::kInvalidSpec, "unhandled kind");
}

PermutationSpec PermutationSpec::from_table(std::vector<std::size_t> table) {
  std::vector<bool> seen(table.size(), false);
  for (std::size_t v : table) {
    if (v >= table.size() || seen[v]) throw Error(ErrorCode::kNotBijective, "table is not a bijection");
    seen[v] = true;
  }
  PermutationSpec p;
  std::fill(seen.begin(), seen.end(), false);
  for (std::size_t start = 0; start < table.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t x = start; !seen[x]; x = table[x]) {
      seen[x] = true;
      orbit.push_back(x);
    }
    p.orbits.push_back(std::move(orbit));
  }
  p.table = std::move(table);
  return p;
}

std::size_t PermutationSpec::transposition_count() const {
  std::size_t count = 0;
  for (const auto& o : orbits) count += o.size() - 1;
  return count;
}

ComplexMatrix permutation_matrix(const std::vector<std::size_t>& table) {
  ComplexMatrix a(table.size(), table.size());
  for (std::size_t i = 0; i < table.size(); ++i) a(table[i], i) = 1.0;
  return a;
}

Circuit two_state_swap(std::size_t a, std::size_t b, std::size_t num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (a >= dim || b >= dim) throw Error(ErrorCode::kOutOfRange, "basis state outside register");
  Circuit c(num_qubits);
  if (a == b) return c;
  auto bit = [&](std::size_t q) { return std::size_t{1} << (num_qubits - 1 - q); };
  std::vector<std::size_t> differ;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if ((a ^ b) & bit(q)) differ.push_back(q);
  }
  const std::size_t root = differ.front();
  // Fold the other differing bits onto the root so the two states become
  // neighbours along the root qubit.
  Circuit ladder(num_qubits);
  std::size_t folded = a;
  for (std::size_t k = 1; k < differ.size(); ++k) {
    ladder.cx(root, differ[k]);
    if (a & bit(root)) folded ^= bit(differ[k]);
  }
  std::vector<Control> ctl;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if (q != root) ctl.push_back(Control{q, (folded & bit(q)) != 0});
  }
  c.append(ladder);
  c.x(root, std::move(ctl));
  c.append(inverse(ladder));
  return c;
}

Circuit permutation_by_swaps(const PermutationSpec& p) {
  const std::size_t width = qubits_of(p.table.size());
  Circuit c(width);
  for (const auto& orbit : p.orbits) {
    for (std::size_t k = 1; k < orbit.size(); ++k) c.append(two_state_swap(orbit[0], orbit[k], width));
  }
  return c;
}

CircularPermutation circular_permutation(const std::vector<std::size_t>& successor, std::size_t n) {
  const std::size_t m = successor.size();
  const std::size_t width = qubits_of(m);
  const PermutationSpec r = PermutationSpec::from_table(successor);
  if (r.orbits.size() != 1) {
    throw Error(ErrorCode::kNotSingleCycle,
                "successor map has " + std::to_string(r.orbits.size()) + " cycles");
  }
  if (n < 1 || n >= m) throw Error(ErrorCode::kInvalidSpec, "step needs 1 <= n < m");
  std::vector<std::size_t> dag(m);
  std::size_t x = 0;
  for (std::size_t i = 0; i < m; ++i) {
    x = successor[x];
    dag[i] = x;
  }
  CircularPermutation out;
  out.relabel_dagger = permutation_by_swaps(PermutationSpec::from_table(dag));
  out.relabel = inverse(out.relabel_dagger);
  out.unitary = Circuit(width);
  out.unitary.append(out.relabel);
  out.unitary.append(adder_ladder(n, m));
  out.unitary.append(out.relabel_dagger);
  out.hermitian = Lch(width);
  const Lch circ = circulant_recursive(n, m);
  for (const auto& t : circ.terms()) {
    Circuit frame(width);
    frame.append(out.relabel);
    frame.append(t.frame);
    out.hermitian.add(t.string, std::move(frame));
  }
  return out;
}

Circuit permutation_from_table(const PermutationSpec& p) {
  const std::size_t m = p.table.size();
  const std::size_t width = qubits_of(m);
  std::vector<std::size_t> inv(m);
  for (std::size_t i = 0; i < m; ++i) inv[p.table[i]] = i;

  Circuit c(2 * width);
  auto xor_into_b = [&](const std::vector<std::size_t>& f) {
    for (std::size_t x = 0; x < m; ++x) {
      std::vector<Control> ctl;
      for (std::size_t q = 0; q < width; ++q) {
        ctl.push_back(Control{q, ((x >> (width - 1 - q)) & 1U) != 0});
      }
      for (std::size_t q = 0; q < width; ++q) {
        if ((f[x] >> (width - 1 - q)) & 1U) c.x(width + q, ctl);
      }
    }
  };
  xor_into_b(p.table);
  for (std::size_t q = 0; q < width; ++q) c.swap(q, width + q);
  xor_into_b(inv);
  c.label("A", 0, width);
  c.label("B", width, width);
  return c;
}

Decomposition build(const StructuredSpec& spec) {
  validate(spec);
  Decomposition d;
  const std::size_t m = spec.m;
  const std::size_t n = spec.n;
  switch (spec.kind) {
    case StructuredKind::ToeplitzDiag:
      d.lch = toeplitz_diag(n, m, spec.weight);
      break;
    case StructuredKind::Circulant:
      if (spec.variant == "lcu") {
        d.lcu = circulant_lcu(n, m, spec.weight);
      } else if (spec.variant == "adder") {
        d.lch = circulant_adder(n, m, spec.weight);
      } else {
        d.lch = circulant_recursive(n, m, spec.weight);
      }
      break;
    case StructuredKind::CirculantAdder:
      d.lch = circulant_adder_indexed(n, m, spec.weight);
      break;
    case StructuredKind::HankelAntiDiag:
      d.lch = hankel_antidiag(n, m, spec.weight.real());
      break;
    case StructuredKind::AntiCirculant:
      if (spec.variant == "anti_adder") {
        d.unitary = anti_adder(n, m);
        d.lcu = single_unitary(*d.unitary);
      } else if (spec.variant == "adder_conjugation") {
        d.lch = anticirculant_adder(n, m);
      } else {
        d.lch = anticirculant_sum(n, m);
      }
      break;
    case StructuredKind::CornerEmbed: {
      StructuredSpec inner = spec;
      inner.kind = spec.inner;
      Decomposition in = build(inner);
      if (!in.lch) {
        throw Error(ErrorCode::kInvalidSpec, "corner_embed needs a Hermitian inner decomposition");
      }
      d.lch = corner_embed(*in.lch, qubits_of(spec.s));
      d.notes = in.notes;
      break;
    }
    case StructuredKind::CircularPermutation: {
      CircularPermutation cp = circular_permutation(spec.table, n);
      d.unitary = cp.unitary;
      if (spec.variant == "adder") {
        Lch h(cp.hermitian.num_qubits());
        const Lch circ = circulant_adder(n, m);
        for (const auto& t : circ.terms()) {
          Circuit frame(h.num_qubits());
          frame.append(cp.relabel);
          frame.append(t.frame);
          h.add(t.string, std::move(frame));
        }
        d.lch = std::move(h);
      } else {
        d.lch = std::move(cp.hermitian);
      }
      break;
    }
    case StructuredKind::PermutationTable:
      d.unitary = permutation_from_table(PermutationSpec::from_table(spec.table));
      d.lcu = single_unitary(*d.unitary);
      d.notes.push_back("unitary acts on the value register plus an equal-width ancilla register");
      break;
    case StructuredKind::DensityMatrix:
      d.lcu = density_matrix_lcu(state_of(spec.psi, "psi"));
      break;
    case StructuredKind::OuterProduct:
      if (spec.variant == "pseudo_covariance") {
        d.lcu = pseudo_covariance_lcu(state_of(spec.psi, "psi"));
      } else {
        d.lcu = outer_product_lcu(state_of(spec.phi, "phi"), state_of(spec.psi, "psi"));
      }
      break;
    case StructuredKind::LineColumn:
      d.lcu = line_column_lcu(state_of(spec.psi, "psi"), spec.index, spec.line);
      break;
    case StructuredKind::Grid:
      d.lch = grid(spec.dims, spec.cyclic, spec.axis_weights);
      break;
  }
  if (d.lch) d.num_qubits = d.lch->num_qubits();
  if (d.lcu && !d.lch) d.num_qubits = d.lcu->num_qubits;
  if (spec.kind == StructuredKind::PermutationTable) d.num_qubits = qubits_of(m);
  return d;
}

std::size_t summand_count(const StructuredSpec& spec, Representation rep) {
  const Decomposition d = build(spec);
  if (rep == Representation::LCH) {
    if (!d.lch) {
      throw Error(ErrorCode::kInvalidSpec,
                  std::string(to_string(spec.kind)) + " has no Hermitian decomposition");
    }
    return d.lch->size();
  }
  if (d.lch) return 2 * d.lch->size();
  return d.lcu->terms.size();
}

}  // namespace qubitizer
