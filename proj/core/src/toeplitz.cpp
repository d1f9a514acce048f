#include <algorithm>
#include <bit>

#include "qubitizer/errors.hpp"
#include "qubitizer/structured.hpp"

namespace qubitizer {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t floor_log2(std::size_t n) { return std::bit_width(n) - 1; }

std::vector<Factor> repeat(Factor f, std::size_t count) { return std::vector<Factor>(count, f); }

std::vector<Factor> concat(std::vector<Factor> a, const std::vector<Factor>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Factor x_conjugate(Factor f) {
  switch (f) {
    case Factor::N: return Factor::M;
    case Factor::M: return Factor::N;
    case Factor::Sigma: return Factor::SigmaDag;
    case Factor::SigmaDag: return Factor::Sigma;
    default: return f;
  }
}

std::vector<Factor> dagger_factors(std::vector<Factor> f) {
  for (auto& x : f) x = factor_dagger(x);
  return f;
}

std::vector<Factor> x_conjugate_factors(std::vector<Factor> f) {
  for (auto& x : f) x = x_conjugate(x);
  return f;
}

// Shared recursion; `anti` swaps the alphabet I->X, sigma->m, sigma^dagger->n.
std::vector<ShiftBranch> expansion(std::size_t n, bool anti) {
  if (n == 0) throw Error(ErrorCode::kInvalidSpec, "band index must be positive");
  if (n == 1 || is_pow2(n)) return {};
  const std::size_t w = floor_log2(n);
  const std::size_t p = n - (std::size_t{1} << w);
  const std::size_t q = (std::size_t{2} << w) - n;
  const Factor one = anti ? Factor::X : Factor::I;
  const Factor up = anti ? Factor::M : Factor::Sigma;
  const Factor down = anti ? Factor::N : Factor::SigmaDag;
  return {
      ShiftBranch{concat({one}, repeat(up, w - shift_qubits(p))), p, false},
      ShiftBranch{concat({up}, repeat(down, w - shift_qubits(q))), q, true},
  };
}

std::vector<std::vector<Factor>> expand(std::size_t n, bool anti) {
  if (n == 1) return {{anti ? Factor::M : Factor::Sigma}};
  if (is_pow2(n)) return {repeat(anti ? Factor::X : Factor::I, floor_log2(n))};
  std::vector<std::vector<Factor>> out;
  for (const auto& br : expansion(n, anti)) {
    for (auto s : expand(br.child, anti)) {
      if (br.dagger) s = anti ? x_conjugate_factors(std::move(s)) : dagger_factors(std::move(s));
      out.push_back(concat(br.prefix, s));
    }
  }
  return out;
}

std::size_t width_of(std::size_t m) {
  if (m < 2) throw Error(ErrorCode::kInvalidSpec, "matrix size must be at least 2");
  if (!is_pow2(m)) throw Error(ErrorCode::kInvalidSpec, std::to_string(m) + " is not a power of two");
  return floor_log2(m);
}

void require_weight(cplx w) {
  if (std::abs(w) == 0.0) throw Error(ErrorCode::kInvalidSpec, "weight must be nonzero");
}

OperatorString hc_string(std::vector<Factor> f, cplx w) { return {std::move(f), w, true}; }

}  // namespace

std::size_t fusc(std::size_t n) {
  std::size_t a = 1, b = 0;
  for (; n > 0; n >>= 1) {
    if (n & 1U) {
      b += a;
    } else {
      a += b;
    }
  }
  return b;
}

std::size_t shift_qubits(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidSpec, "band index must be positive");
  if (n == 1) return 1;
  return is_pow2(n) ? floor_log2(n) : floor_log2(n) + 1;
}

std::vector<ShiftBranch> shift_expansion(std::size_t n) { return expansion(n, false); }
std::vector<std::vector<Factor>> shift_strings(std::size_t n) { return expand(n, false); }
std::vector<ShiftBranch> antishift_expansion(std::size_t n) { return expansion(n, true); }
std::vector<std::vector<Factor>> antishift_strings(std::size_t n) { return expand(n, true); }

Lch toeplitz_diag(std::size_t n, std::size_t m, cplx w) {
  const std::size_t width = width_of(m);
  if (n < 1 || n >= m) {
    throw Error(ErrorCode::kInvalidSpec, "Toeplitz band needs 1 <= n < m");
  }
  require_weight(w);
  const auto prefix = repeat(Factor::Sigma, width - shift_qubits(n));
  Lch out(width);
  for (const auto& s : shift_strings(n)) out.add(hc_string(concat(prefix, s), w));
  return out;
}

Lch circulant_recursive(std::size_t n, std::size_t m, cplx w) {
  Lch out = toeplitz_diag(n, m, w);
  out.append(toeplitz_diag(m - n, m, std::conj(w)));
  return out;
}

Lch circulant_adder_indexed(std::size_t n, std::size_t m, cplx w) {
  const std::size_t width = width_of(m);
  require_weight(w);
  if (n < 1 || n >= m) throw Error(ErrorCode::kInvalidSpec, "adder index needs 1 <= n < m");
  Lch out(width);
  if (is_pow2(n)) {
    const std::size_t k = floor_log2(n);
    if (k + 1 > width) throw Error(ErrorCode::kInvalidSpec, "wrap distance exceeds m / 2");
    const auto s = concat(concat(repeat(Factor::I, width - k - 1), {Factor::Sigma}),
                          repeat(Factor::I, k));
    out.add(hc_string(s, w));
    out.add(hc_string(s, w), adder_ladder(n, m));
    return out;
  }
  const std::size_t wn = floor_log2(n);
  if ((std::size_t{2} << wn) > m) {
    throw Error(ErrorCode::kInvalidSpec, "adder form needs m >= 2^(floor(log2 n) + 1)");
  }
  const auto branches = shift_expansion(n);
  const ShiftBranch& a = branches[0];
  const ShiftBranch& b = branches[1];
  const std::size_t eps = width - 1 - wn;
  const Circuit frame = adder_ladder(std::size_t{1} << wn, m);

  for (const auto& s : shift_strings(a.child)) {
    // a.prefix starts with the I of the recursion; the rest is sigma^alpha.
    const std::vector<Factor> body(a.prefix.begin() + 1, a.prefix.end());
    out.add(hc_string(concat(concat(repeat(Factor::I, eps + 1), body), s), w));
  }
  std::vector<std::vector<Factor>> lifted;
  for (const auto& s : shift_strings(b.child)) {
    // b.prefix is sigma (sigma^dagger)^beta; B drops the leading sigma.
    lifted.push_back(concat(concat(repeat(Factor::I, eps), b.prefix), dagger_factors(s)));
  }
  for (const auto& s : lifted) out.add(hc_string(s, w));
  for (const auto& s : lifted) out.add(hc_string(s, w), frame);
  return out;
}

Lch circulant_adder(std::size_t n, std::size_t m, cplx w) {
  width_of(m);
  if (n < 1 || n >= m) throw Error(ErrorCode::kInvalidSpec, "circulant needs 1 <= n < m");
  // conj(w) ADD_n + w ADD_n^dagger is also w ADD_q + conj(w) ADD_q^dagger with
  // q = m - n; pick the orientation with wrap distance q <= m / 2.
  std::size_t q = m - n;
  cplx weight = w;
  if (2 * q > m) {
    q = n;
    weight = std::conj(w);
  }
  if (is_pow2(q)) return circulant_adder_indexed(q, m, weight);
  const std::size_t wq = floor_log2(q) + 1;
  return circulant_adder_indexed((std::size_t{2} << wq) - q, m, weight);
}

Lcu circulant_lcu(std::size_t n, std::size_t m, cplx w) {
  const std::size_t width = width_of(m);
  if (n < 1 || n >= m) throw Error(ErrorCode::kInvalidSpec, "circulant needs 1 <= n < m");
  require_weight(w);
  return Lcu{width, {{std::conj(w), adder_qft(n, m)}, {w, adder_qft(m - n, m)}}};
}

Lch hankel_antidiag(std::size_t n, std::size_t m, double w) {
  const std::size_t width = width_of(m);
  if (n < 1 || n > 2 * m - 1) {
    throw Error(ErrorCode::kInvalidSpec, "Hankel anti-diagonal needs 1 <= n <= 2m - 1");
  }
  require_weight(w);
  Lch out(width);
  const bool reflected = n > m;
  const std::size_t base = reflected ? 2 * m - n : n;
  const auto prefix = repeat(Factor::M, width - shift_qubits(base));
  for (const auto& s : antishift_strings(base)) {
    auto f = concat(prefix, s);
    if (reflected) f = x_conjugate_factors(std::move(f));
    out.add(OperatorString{std::move(f), w, false});
  }
  return out;
}

Lch anticirculant_sum(std::size_t n, std::size_t m) {
  width_of(m);
  if (n >= m) throw Error(ErrorCode::kInvalidSpec, "anti-circulant needs 0 <= n < m");
  Lch out = hankel_antidiag(m - n, m);
  if (n > 0) out.append(hankel_antidiag(2 * m - n, m));
  return out;
}

Lch anticirculant_adder(std::size_t n, std::size_t m) {
  const std::size_t width = width_of(m);
  if (n >= m) throw Error(ErrorCode::kInvalidSpec, "anti-circulant needs 0 <= n < m");
  const Lch base = (n % 2 == 0) ? hankel_antidiag(m, m) : anticirculant_sum(1, m);
  const std::size_t shift = n / 2;
  if (shift == 0) return base;
  const Circuit frame = adder_ladder(shift, m);
  Lch out(width);
  for (const auto& t : base.terms()) out.add(t.string, frame);
  return out;
}

Circuit anti_adder(std::size_t n, std::size_t m) {
  const std::size_t width = width_of(m);
  if (n >= m) throw Error(ErrorCode::kInvalidSpec, "anti-adder needs 0 <= n < m");
  Circuit c = adder_ladder(n, m);
  for (std::size_t q = 0; q < width; ++q) c.x(q);
  return c;
}

Lch corner_embed(const Lch& inner, std::size_t total_qubits) {
  const std::size_t width = inner.num_qubits();
  if (total_qubits < width) {
    throw Error(ErrorCode::kInvalidSpec, "embedding size smaller than the block");
  }
  const std::size_t extra = total_qubits - width;
  const auto prefix = repeat(Factor::M, extra);
  Lch out(total_qubits);
  for (const auto& t : inner.terms()) {
    OperatorString s = t.string;
    s.factors = concat(prefix, s.factors);
    out.add(std::move(s), shifted(t.frame, extra, total_qubits));
  }
  return out;
}

Lch grid(const std::vector<std::size_t>& dims, const std::vector<bool>& cyclic,
         const std::vector<double>& axis_weights) {
  if (dims.empty()) throw Error(ErrorCode::kInvalidSpec, "grid needs at least one axis");
  if (!cyclic.empty() && cyclic.size() != dims.size()) {
    throw Error(ErrorCode::kInvalidSpec, "one boundary flag per axis");
  }
  if (!axis_weights.empty() && axis_weights.size() != dims.size()) {
    throw Error(ErrorCode::kInvalidSpec, "one weight per axis");
  }
  std::vector<std::size_t> widths;
  for (std::size_t d : dims) widths.push_back(width_of(d));
  std::size_t total = 0;
  for (std::size_t w : widths) total += w;

  Lch out(total);
  std::size_t before = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    const bool cyc = !cyclic.empty() && cyclic[a];
    const double weight = axis_weights.empty() ? 1.0 : axis_weights[a];
    const Lch band = cyc ? circulant_recursive(dims[a] - 1, dims[a], weight)
                         : toeplitz_diag(dims[a] - 1, dims[a], weight);
    const std::size_t after = total - before - widths[a];
    for (const auto& t : band.terms()) {
      OperatorString s = t.string;
      s.factors = concat(concat(repeat(Factor::I, before), s.factors), repeat(Factor::I, after));
      out.add(std::move(s));
    }
    before += widths[a];
  }
  return out;
}

}  // namespace qubitizer
