#include <numeric>

#include "qubitizer/errors.hpp"
#include "qubitizer/synth.hpp"

namespace qubitizer {

namespace {

std::size_t checked_width(std::size_t n, std::size_t m) {
  if (m < 2) throw Error(ErrorCode::kOutOfRange, "adder modulus must be >= 2");
  const std::size_t width = log2_exact(m);
  if (n >= m) {
    throw Error(ErrorCode::kOutOfRange,
                "shift " + std::to_string(n) + " outside [0, " + std::to_string(m) + ")");
  }
  return width;
}

std::vector<std::size_t> all_qubits(std::size_t width) {
  std::vector<std::size_t> q(width);
  std::iota(q.begin(), q.end(), 0);
  return q;
}

}  // namespace

std::size_t log2_exact(std::size_t m) {
  if (m == 0 || (m & (m - 1)) != 0) {
    throw Error(ErrorCode::kOutOfRange, std::to_string(m) + " is not a power of two");
  }
  std::size_t k = 0;
  while ((std::size_t{1} << k) < m) ++k;
  return k;
}

ComplexMatrix adder_permutation(std::size_t n, std::size_t m) {
  ComplexMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i) out((i + n) % m, i) = 1.0;
  return out;
}

Circuit adder_qft(std::size_t n, std::size_t m) {
  const std::size_t width = checked_width(n, m);
  Circuit c(width);
  c.add(MacroGate{MacroKind::AdderQFT, all_qubits(width), n, {}});
  return c;
}

Circuit adder_ladder(std::size_t n, std::size_t m) {
  const std::size_t width = checked_width(n, m);
  Circuit c(width);
  c.add(MacroGate{MacroKind::AdderLadder, all_qubits(width), n, {}});
  return c;
}

Circuit zadd(std::size_t n, std::size_t m) {
  const std::size_t width = checked_width(n, m);
  const auto q = all_qubits(width);
  Circuit c(width);
  for (std::size_t power = 0; power < width; ++power) {
    if (!((n >> power) & 1U)) continue;
    // Adding 2^power wraps exactly when the top (width - power) bits are all set.
    const std::size_t k = width - power;
    std::vector<Control> ctl;
    for (std::size_t l = 1; l < k; ++l) ctl.push_back(Control{q[l], true});
    c.z(q[0], std::move(ctl));
    c.append(adder_ladder_circuit(q, std::size_t{1} << power, width));
  }
  return c;
}

}  // namespace qubitizer
