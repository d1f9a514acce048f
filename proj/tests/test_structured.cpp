#include "test_util.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "qubitizer/circuit.hpp"
#include "qubitizer/errors.hpp"
#include "qubitizer/structured.hpp"
#include "qubitizer/synth.hpp"
#include "structured_sweep.hpp"

using namespace qubitizer;
using qt::describe;
using qt::realized;
using qt::sweep_specs;

namespace {

using Strings = std::vector<std::vector<Factor>>;

std::vector<Factor> factors(const std::string& text) { return qt::str(text).factors; }

ComplexMatrix sum_of(const Strings& strings) {
  ComplexMatrix total;
  for (const auto& f : strings) {
    OperatorString s;
    s.factors = f;
    const ComplexMatrix m = materialize(s);
    if (total.rows() == 0) total = ComplexMatrix(m.rows(), m.cols());
    total += m;
  }
  return total;
}

// Count induced by the band recursion, computed without the builders.
std::size_t recursion_count(std::size_t n) {
  if (n == 1 || (n & (n - 1)) == 0) return 1;
  const std::size_t w = std::bit_width(n) - 1;
  return recursion_count(n - (std::size_t{1} << w)) + recursion_count((std::size_t{2} << w) - n);
}

const char* const kPrintedBand[] = {
    "00110000000000000000", "00011000000000000000", "00000110000000000000", "00000011000000000000",
    "00000001100000000000", "00000000110000000000", "00000000011000000000", "00000000001100000000",
    "00000000000110000000", "00000000000011000000", "00000000000001100000", "00000000000000110000",
    "00000000000000011000", "00000000000000001100", "00000000000000000110", "00000000000000000011",
    "00000000000000000001", "00000000000000000000", "00000000000000000000",
};

}  // namespace

TEST(Fusc, Values) {
  EXPECT_EQ(fusc(0), 0u);
  EXPECT_EQ(fusc(1), 1u);
  EXPECT_EQ(fusc(13), 5u);
  for (std::size_t k = 1; k <= 512; ++k) {
    EXPECT_EQ(fusc(2 * k), fusc(k));
    EXPECT_EQ(fusc(2 * k + 1), fusc(k) + fusc(k + 1));
  }
  const std::size_t first[] = {0, 1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5, 2, 5, 3, 4, 1};
  for (std::size_t n = 0; n < std::size(first); ++n) EXPECT_EQ(fusc(n), first[n]);
}

TEST(ShiftRecursion, BaseCases) {
  EXPECT_EQ(shift_strings(1), Strings{factors("s")});
  EXPECT_EQ(shift_strings(2), Strings{factors("I")});
  EXPECT_EQ(shift_strings(8), Strings{factors("I.I.I")});
  EXPECT_EQ(shift_strings(3), (Strings{factors("I.s"), factors("s.sd")}));
  EXPECT_EQ(shift_qubits(1), 1u);
  EXPECT_EQ(shift_qubits(8), 3u);
  EXPECT_EQ(shift_qubits(13), 4u);
  EXPECT_THROW(shift_strings(0), Error);
}

TEST(ShiftRecursion, ThirteenAndFourteen) {
  EXPECT_EQ(shift_expansion(13), (std::vector<ShiftBranch>{{factors("I"), 5, false},
                                                            {factors("s.sd"), 3, true}}));
  EXPECT_EQ(shift_expansion(14), (std::vector<ShiftBranch>{{factors("I"), 6, false},
                                                            {factors("s.sd.sd"), 2, true}}));
  EXPECT_EQ(shift_expansion(6), (std::vector<ShiftBranch>{{factors("I.s"), 2, false},
                                                           {factors("s.sd"), 2, true}}));
  EXPECT_EQ(shift_strings(13).size(), 5u);
  EXPECT_EQ(shift_strings(14).size(), 3u);
}

TEST(ShiftRecursion, MaterializesToLowerBand) {
  for (std::size_t n = 1; n <= 64; ++n) {
    const std::size_t dim = std::size_t{1} << shift_qubits(n);
    ComplexMatrix want(dim, dim);
    for (std::size_t i = 0; i < n; ++i) want(i + dim - n, i) = 1.0;
    ASSERT_MATRIX_NEAR(sum_of(shift_strings(n)), want, 0.0) << n;
  }
}

TEST(ShiftRecursion, PrintedSmallBlocks) {
  // Printed bands are superdiagonals: the transpose of ours.
  EXPECT_EQ(sum_of(shift_strings(2)), qt::eye(2));
  EXPECT_EQ(sum_of(shift_strings(3)).transpose(),
            ComplexMatrix::from_rows({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}));
  ComplexMatrix m5(8, 8);
  for (std::size_t i = 0; i < 5; ++i) m5(i, i + 3) = 1.0;
  EXPECT_EQ(sum_of(shift_strings(5)).transpose(), m5);
}

TEST(ShiftRecursion, PrintedTwoDiagonalPattern) {
  ComplexMatrix golden(19, 20);
  for (std::size_t r = 0; r < 19; ++r) {
    for (std::size_t c = 0; c < 20; ++c) golden(r, c) = kPrintedBand[r][c] == '1' ? 1.0 : 0.0;
  }
  ComplexMatrix band(20, 20);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 20; ++j) {
      if (j == i + 2 || j == i + 3) band(i, j) = 1.0;
    }
  }
  // The printed pattern drops the third row of the band.
  ComplexMatrix expected(19, 20);
  for (std::size_t r = 0, src = 0; src < 20; ++src) {
    if (src == 2) continue;
    for (std::size_t c = 0; c < 20; ++c) expected(r, c) = band(src, c);
    ++r;
  }
  EXPECT_EQ(golden, expected);
  const ComplexMatrix sum = (sum_of(shift_strings(13)) + sum_of(shift_strings(14))).transpose();
  EXPECT_EQ(block(band, 0, 0, 16, 16), sum);
}

TEST(AntishiftRecursion, Examples) {
  EXPECT_EQ(antishift_strings(1), Strings{factors("m")});
  EXPECT_EQ(antishift_strings(3), (Strings{factors("X.m"), factors("m.n")}));
  EXPECT_EQ(antishift_strings(4), Strings{factors("X.X")});
  EXPECT_EQ(antishift_strings(16), Strings{factors("X.X.X.X")});
  for (std::size_t n = 1; n <= 64; ++n) {
    const std::size_t dim = std::size_t{1} << shift_qubits(n);
    ComplexMatrix want(dim, dim);
    for (std::size_t r = 0; r < n; ++r) want(r, n - 1 - r) = 1.0;
    ASSERT_MATRIX_NEAR(sum_of(antishift_strings(n)), want, 0.0) << n;
  }
}

TEST(Oracle, Examples) {
  StructuredSpec t;
  t.m = 4;
  t.n = 3;
  ComplexMatrix tri(4, 4);
  for (std::size_t i = 0; i + 1 < 4; ++i) tri(i, i + 1) = tri(i + 1, i) = 1.0;
  EXPECT_EQ(dense_oracle(t), tri);

  StructuredSpec c;
  c.kind = StructuredKind::Circulant;
  c.m = 4;
  c.n = 1;
  const ComplexMatrix add1 =
      ComplexMatrix::from_rows({{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  EXPECT_EQ(dense_oracle(c), add1 + add1.transpose());

  StructuredSpec h;
  h.kind = StructuredKind::HankelAntiDiag;
  h.m = 4;
  h.n = 3;
  ComplexMatrix anti(4, 4);
  anti(0, 2) = anti(1, 1) = anti(2, 0) = 1.0;
  EXPECT_EQ(dense_oracle(h), anti);
  EXPECT_MATRIX_NEAR(materialize(hankel_antidiag(3, 4)), anti, 1e-12);
}

TEST(Builders, MatchOracleForEveryKind) {
  std::mt19937_64 rng(31);
  std::size_t checked = 0;
  for (std::size_t m = 2; m <= 32; m *= 2) {
    for (const StructuredSpec& spec : sweep_specs(m, rng)) {
      const ComplexMatrix want = dense_oracle(spec);
      const Decomposition d = build(spec);
      ASSERT_MATRIX_NEAR(realized(d, spec), want, 1e-12) << describe(spec);
      ++checked;
    }
  }
  EXPECT_GT(checked, 500u);
}

TEST(Builders, GridMatchesOracle) {
  const std::vector<std::vector<std::size_t>> shapes = {{4}, {2, 2}, {4, 4}, {2, 4, 2}, {8, 4}};
  for (const auto& dims : shapes) {
    for (int bc = 0; bc < 2; ++bc) {
      StructuredSpec s;
      s.kind = StructuredKind::Grid;
      s.dims = dims;
      s.cyclic.assign(dims.size(), bc == 1);
      for (std::size_t a = 0; a < dims.size(); ++a) s.axis_weights.push_back(0.5 + static_cast<double>(a));
      EXPECT_MATRIX_NEAR(materialize(*build(s).lch), dense_oracle(s), 1e-12);
    }
  }
  const ComplexMatrix two_by_two = materialize(grid({2, 2}, {}));
  EXPECT_MATRIX_NEAR(two_by_two, kron(qt::eye(2), qt::pauli_x()) + kron(qt::pauli_x(), qt::eye(2)), 1e-12);
  // A 4 x 4 grid is one band per axis: two Toeplitz strings each.
  EXPECT_EQ(grid({4, 4}, {}).size(), 2 * toeplitz_diag(3, 4).size());
  EXPECT_MATRIX_NEAR(materialize(grid({4, 4}, {})),
                     kron(qt::eye(4), materialize(toeplitz_diag(3, 4))) +
                         kron(materialize(toeplitz_diag(3, 4)), qt::eye(4)),
                     1e-12);
}

TEST(Builders, HermitianTermsAreQubitizedOrProjectors) {
  std::mt19937_64 rng(32);
  for (std::size_t m = 2; m <= 16; m *= 2) {
    for (const StructuredSpec& spec : sweep_specs(m, rng)) {
      const Decomposition d = build(spec);
      if (!d.lch) continue;
      for (const auto& t : d.lch->terms()) {
        const SpectralKind k = classify(unit_term(t.string)).kind;
        ASSERT_TRUE(k == SpectralKind::Qubitized || k == SpectralKind::Projector)
            << describe(spec) << " " << to_text(t.string);
      }
    }
  }
}

TEST(Builders, CirculantVariantsAgree) {
  for (std::size_t n = 1; n < 16; ++n) {
    const ComplexMatrix rec = materialize(circulant_recursive(n, 16));
    EXPECT_MATRIX_NEAR(materialize(circulant_adder(n, 16)), rec, 1e-12) << n;
    EXPECT_MATRIX_NEAR(materialize(circulant_lcu(n, 16)), rec, 1e-12) << n;
  }
  const Lcu lcu = circulant_lcu(1, 4);
  ASSERT_EQ(lcu.terms.size(), 2u);
  EXPECT_MATRIX_NEAR(lower(lcu.terms[0].unitary), adder_permutation(1, 4), 1e-12);
  EXPECT_MATRIX_NEAR(lower(lcu.terms[1].unitary), adder_permutation(1, 4).adjoint(), 1e-12);
}

TEST(Builders, HankelReflection) {
  for (std::size_t m = 2; m <= 16; m *= 2) {
    const std::size_t width = log2_exact(m);
    Circuit flip(width);
    for (std::size_t q = 0; q < width; ++q) flip.x(q);
    const ComplexMatrix x = lower(flip);
    for (std::size_t n = m + 1; n <= 2 * m - 1; ++n) {
      const ComplexMatrix high = materialize(hankel_antidiag(n, m));
      const ComplexMatrix low = materialize(hankel_antidiag(2 * m - n, m));
      EXPECT_MATRIX_NEAR(high, x * low.adjoint() * x, 1e-12) << n << " " << m;
    }
  }
}

TEST(Builders, AntiCirculantExamples) {
  Circuit flip(3);
  flip.x(0).x(1).x(2);
  const ComplexMatrix x3 = lower(flip);
  EXPECT_MATRIX_NEAR(materialize(anticirculant_adder(0, 8)), x3, 1e-12);
  EXPECT_MATRIX_NEAR(materialize(anticirculant_sum(0, 8)), x3, 1e-12);
  const ComplexMatrix add1 = adder_permutation(1, 8);
  EXPECT_MATRIX_NEAR(materialize(anticirculant_sum(2, 8)), add1.adjoint() * x3 * add1, 1e-12);
  EXPECT_MATRIX_NEAR(lower(anti_adder(0, 8)), x3, 1e-12);
  for (std::size_t n = 0; n < 8; ++n) {
    EXPECT_MATRIX_NEAR(lower(anti_adder(n, 8)), x3 * adder_permutation(n, 8), 1e-12);
  }
}

TEST(Builders, CornerEmbed) {
  const Lch inner = circulant_recursive(3, 4);
  const ComplexMatrix blk = materialize(inner);
  const ComplexMatrix big = materialize(corner_embed(inner, 3));
  EXPECT_MATRIX_NEAR(block(big, 0, 0, 4, 4), blk, 1e-12);
  EXPECT_MATRIX_NEAR(block(big, 4, 4, 4, 4), ComplexMatrix(4, 4), 0.0);
  EXPECT_MATRIX_NEAR(block(big, 0, 4, 4, 4), ComplexMatrix(4, 4), 0.0);
  const Lch embedded = corner_embed(inner, 3);
  for (const auto& t : embedded.terms()) EXPECT_EQ(t.string.factors[0], Factor::M);
  EXPECT_MATRIX_NEAR(materialize(corner_embed(inner, 2)), blk, 0.0);
  try {
    corner_embed(inner, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
  }
}

TEST(Counts, CountingLawUpTo1024) {
  for (std::size_t n = 1; n <= 1024; ++n) {
    ASSERT_EQ(recursion_count(n), fusc(n)) << n;
    ASSERT_EQ(shift_strings(n).size(), fusc(n)) << n;
  }
  for (std::size_t n = 1; n < 2048; n += 37) {
    EXPECT_EQ(toeplitz_diag(n, 2048).size(), fusc(n)) << n;
  }
}

TEST(Counts, SummandCountExamples) {
  StructuredSpec t;
  t.m = 16;
  t.n = 13;
  EXPECT_EQ(summand_count(t, Representation::LCH), 5u);
  EXPECT_EQ(summand_count(t, Representation::LCU), 10u);

  StructuredSpec ca;
  ca.kind = StructuredKind::CirculantAdder;
  ca.m = 8;
  ca.n = 3;
  EXPECT_EQ(summand_count(ca, Representation::LCH), fusc(3) + fusc(1));

  StructuredSpec c;
  c.kind = StructuredKind::Circulant;
  c.m = 8;
  c.n = 3;
  c.variant = "recursive";
  EXPECT_EQ(summand_count(c, Representation::LCH), fusc(3) + fusc(5));
  c.variant = "lcu";
  EXPECT_EQ(summand_count(c, Representation::LCU), 2u);
  EXPECT_THROW(summand_count(c, Representation::LCH), Error);

  StructuredSpec a;
  a.kind = StructuredKind::AntiCirculant;
  a.m = 16;
  a.variant = "adder_conjugation";
  for (std::size_t n = 0; n < 16; n += 2) {
    a.n = n;
    EXPECT_LE(summand_count(a, Representation::LCH), 2u);
    EXPECT_LE(summand_count(a, Representation::LCU), 4u);
  }
  a.variant = "anti_adder";
  a.n = 5;
  EXPECT_EQ(summand_count(a, Representation::LCU), 1u);
}

TEST(Counts, CirculantAdderIndexedLaw) {
  for (std::size_t n = 1; n < 64; ++n) {
    const std::size_t w = std::bit_width(n) - 1;
    const std::size_t m = std::size_t{4} << w;
    const std::size_t q = (std::size_t{2} << w) - n;
    const std::size_t want = (n & (n - 1)) == 0 ? 2 : fusc(n) + fusc(q);
    EXPECT_EQ(circulant_adder_indexed(n, m).size(), want) << n;
  }
}

TEST(Validation, Errors) {
  auto code_of = [](const StructuredSpec& s) -> std::optional<ErrorCode> {
    try {
      validate(s);
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  StructuredSpec s;
  s.m = 6;
  EXPECT_EQ(code_of(s), ErrorCode::kInvalidSpec);
  s.m = 8;
  s.n = 8;
  EXPECT_EQ(code_of(s), ErrorCode::kInvalidSpec);
  s.n = 0;
  EXPECT_EQ(code_of(s), ErrorCode::kInvalidSpec);
  s.n = 3;
  s.variant = "adder";
  EXPECT_EQ(code_of(s), ErrorCode::kInvalidSpec);
  s.kind = StructuredKind::HankelAntiDiag;
  s.variant.clear();
  s.n = 16;
  EXPECT_EQ(code_of(s), ErrorCode::kInvalidSpec);
  s.n = 15;
  s.weight = cplx(0, 1);
  EXPECT_EQ(code_of(s), ErrorCode::kInvalidSpec);
  s.weight = 2.0;
  EXPECT_FALSE(code_of(s).has_value());
  s.kind = StructuredKind::LineColumn;
  s.psi = {1.0, 0.0};
  s.index = 2;
  EXPECT_EQ(code_of(s), ErrorCode::kOutOfRange);
  s.kind = StructuredKind::DensityMatrix;
  s.psi = {1.0, 1.0};
  EXPECT_EQ(code_of(s), ErrorCode::kNotNormalized);
  EXPECT_EQ(parse_structured_kind("circulant_adder"), StructuredKind::CirculantAdder);
  EXPECT_THROW(parse_structured_kind("banana"), Error);
}
