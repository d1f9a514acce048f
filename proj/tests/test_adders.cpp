#include "test_util.hpp"

#include "qubitizer/circuit.hpp"
#include "qubitizer/errors.hpp"
#include "qubitizer/structured.hpp"
#include "qubitizer/synth.hpp"

using namespace qubitizer;

namespace {

// |(i + n) mod m><i|, built by hand.
ComplexMatrix shift_matrix(std::size_t n, std::size_t m, double wrap_sign = 1.0) {
  ComplexMatrix p(m, m);
  for (std::size_t i = 0; i < m; ++i) p((i + n) % m, i) = (i + n >= m) ? wrap_sign : 1.0;
  return p;
}

}  // namespace

TEST(AdderPermutation, MatchesDefinition) {
  for (std::size_t m : {2u, 4u, 8u, 16u}) {
    for (std::size_t n = 0; n < m; ++n) EXPECT_EQ(adder_permutation(n, m), shift_matrix(n, m));
  }
}

TEST(AdderQft, FourStateMatrix) {
  const ComplexMatrix want = ComplexMatrix::from_rows({{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  EXPECT_MATRIX_NEAR(lower(adder_qft(1, 4)), want, 1e-10);
}

TEST(AdderQft, ZeroIsIdentity) {
  for (std::size_t m : {2u, 8u, 32u}) {
    EXPECT_MATRIX_NEAR(lower(adder_qft(0, m)), ComplexMatrix::identity(m), 1e-10);
    EXPECT_MATRIX_NEAR(lower(adder_ladder(0, m)), ComplexMatrix::identity(m), 1e-10);
  }
}

TEST(AdderQft, InverseShift) {
  for (std::size_t m : {4u, 8u, 16u}) {
    for (std::size_t n = 1; n < m; ++n) {
      EXPECT_MATRIX_NEAR(lower(adder_qft(n, m)) * lower(adder_qft(m - n, m)), ComplexMatrix::identity(m), 1e-10);
    }
  }
}

TEST(AdderQft, PhaseGateCount) {
  for (std::size_t big_m = 1; big_m <= 6; ++big_m) {
    const ResourceReport r = count_resources(adder_qft(1, std::size_t{1} << big_m));
    EXPECT_EQ(r.level_histogram.at("adder_qft").at("p"), big_m);
    EXPECT_EQ(r.macro_calls.at("qft") + r.macro_calls.at("iqft"), 2u);
  }
}

TEST(AdderLadder, Examples) {
  EXPECT_MATRIX_NEAR(lower(adder_ladder(1, 2)), qt::pauli_x(), 1e-12);
  EXPECT_MATRIX_NEAR(lower(adder_ladder(2, 8)), shift_matrix(2, 8), 1e-12);
  // Adding 2 on 3 qubits only touches the two most significant bits.
  const Circuit expanded = expand_macros(adder_ladder(2, 8));
  for (const auto& op : expanded.ops()) {
    const Gate& g = std::get<Gate>(op);
    EXPECT_NE(g.targets[0], 2u);
    for (const Control& c : g.controls) EXPECT_NE(c.qubit, 2u);
  }
  Circuit composed = adder_ladder(1, 8);
  composed.append(adder_ladder(2, 8));
  EXPECT_MATRIX_NEAR(lower(adder_ladder(3, 8)), lower(composed), 1e-12);
}

TEST(Adders, TripleEquivalence) {
  for (std::size_t m = 2; m <= 32; m *= 2) {
    for (std::size_t n = 0; n < m; ++n) {
      const ComplexMatrix perm = shift_matrix(n, m);
      const ComplexMatrix qft = lower(adder_qft(n, m));
      const ComplexMatrix ladder = lower(adder_ladder(n, m));
      ASSERT_MATRIX_NEAR(qft, perm, 1e-10) << n << " " << m;
      ASSERT_MATRIX_NEAR(ladder, perm, 1e-10) << n << " " << m;
      ASSERT_MATRIX_NEAR(qft, ladder, 1e-10) << n << " " << m;
    }
  }
}

TEST(Adders, Errors) {
  for (auto f : {&adder_qft, &adder_ladder, &zadd}) {
    EXPECT_THROW(f(4, 4), Error);
    EXPECT_THROW(f(1, 6), Error);
    EXPECT_THROW(f(0, 1), Error);
  }
  try {
    log2_exact(12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  EXPECT_EQ(log2_exact(32), 5u);
}

TEST(Zadd, Examples) {
  const ComplexMatrix want =
      ComplexMatrix::from_rows({{0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  EXPECT_MATRIX_NEAR(lower(zadd(1, 4)), want, 1e-10);
  EXPECT_MATRIX_NEAR(lower(zadd(0, 8)), ComplexMatrix::identity(8), 1e-10);
  for (std::size_t m = 2; m <= 32; m *= 2) {
    for (std::size_t n = 0; n < m; ++n) {
      ASSERT_MATRIX_NEAR(lower(zadd(n, m)), shift_matrix(n, m, -1.0), 1e-10) << n << " " << m;
    }
  }
}

TEST(Zadd, HalfSumIsOneSidedShift) {
  for (std::size_t m = 2; m <= 16; m *= 2) {
    const std::size_t big_m = log2_exact(m);
    for (std::size_t n = 1; n < m; ++n) {
      const ComplexMatrix half = (lower(adder_qft(m - n, m)) + lower(zadd(m - n, m))) * cplx(0.5);
      // Only the non-wrapping entries (i + m - n, i), i < n, survive.
      ComplexMatrix lower_band(m, m);
      for (std::size_t i = 0; i < n; ++i) lower_band(i + m - n, i) = 1.0;
      ASSERT_MATRIX_NEAR(half, lower_band, 1e-10) << n << " " << m;
      // The same band from the shift recursion, prefixed with sigma factors.
      ComplexMatrix band(m, m);
      for (const auto& tail : shift_strings(n)) {
        OperatorString t;
        t.factors.assign(big_m - shift_qubits(n), Factor::Sigma);
        t.factors.insert(t.factors.end(), tail.begin(), tail.end());
        band += materialize(t);
      }
      ASSERT_MATRIX_NEAR(half, band, 1e-10) << n << " " << m;
    }
  }
}
