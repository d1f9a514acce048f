#pragma once

// Sampling variance/covariance bounds, Monte-Carlo cross-checks and the
// first-order Trotter commutator bound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qubitizer/densemath.hpp"
#include "qubitizer/synth.hpp"

namespace qubitizer {

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

/// Throws kNotHermitian, kNotNormalized, kDimMismatch.
MeanVariance exact_expectation_variance(const ComplexMatrix& h, const StateVector& psi);
/// <hi hj> - <hi><hj>. Throws kDimMismatch.
cplx covariance(const ComplexMatrix& hi, const ComplexMatrix& hj, const StateVector& psi);

/// Groups partition the term indices; an empty list means one group per term.
struct ShotPlan {
  std::size_t shots = 0;
  std::vector<std::vector<std::size_t>> groups;
};

struct TermBounds {
  std::string term;
  double alpha = 0.0;
  std::optional<double> mean;
  std::optional<double> variance;
};

struct GroupBounds {
  std::vector<std::size_t> members;
  double bound = 0.0;  // (sum |alpha_i|)^2
  std::optional<double> exact;  // sum_{i,j} alpha_i alpha_j Re Cov_ij
};

struct TrotterBound {
  ComplexMatrix xi1;  // 1/2 sum_{j<k} [a_j H_j, a_k H_k]
  double xi1_norm = 0.0;
  double bound = 0.0;  // sum_{j<k} |a_j a_k|
  double max_pairwise_ratio = 0.0;  // max ||[a_j H_j, a_k H_k]|| / (2 |a_j a_k|)
  double max_nested_ratio = 0.0;    // max ||[a_i H_i, [a_j H_j, a_k H_k]]|| / (4 |a_i a_j a_k|)
  bool holds = false;
};

struct MonteCarloResult {
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> counts;  // per computational-basis outcome
  double mean = 0.0;
  double variance = 0.0;  // per shot
  double exact_mean = 0.0;
  double exact_variance = 0.0;
  bool mean_ok = false;      // within 6 sigma / sqrt(N)
  bool variance_ok = false;  // within 10% relative
};

struct BoundsReport {
  std::vector<TermBounds> terms;
  std::vector<GroupBounds> groups;
  double linear_bound = 0.0;   // sum |alpha_i|
  double grouped_bound = 0.0;  // sum_k (sum_{i in G_k} |alpha_i|)^2
  /// sum alpha_i Var_i and sum alpha_i^2 Var_i; both reported, neither asserted.
  std::optional<double> alpha_weighted_variance;
  std::optional<double> alpha_squared_weighted_variance;
  std::optional<double> grouped_exact;
  std::optional<TrotterBound> trotter;
  std::vector<MonteCarloResult> monte_carlo;
};

/// Throws kBadPartition.
BoundsReport variance_bound(const Lch& lch, const ShotPlan& plan,
                            const std::optional<StateVector>& psi = std::nullopt);

/// Samples outcomes with a seeded generator. Throws kOutOfRange for N < 100.
MonteCarloResult monte_carlo_check(const MeasurementProgram& program, const StateVector& psi,
                                   std::size_t shots, std::uint64_t seed);

/// Throws kTooFewTerms.
TrotterBound trotter_bound(const std::vector<WeightedTerm>& terms);
TrotterBound trotter_bound(const Lch& lch);

/// Spectral-norm distance between the product formula and exp(i t H).
double trotter_defect(const Lch& lch, double t, std::size_t steps, int order = 1);

nlohmann::json to_json(const TrotterBound& b);
nlohmann::json to_json(const MonteCarloResult& r);
nlohmann::json to_json(const BoundsReport& r);

}  // namespace qubitizer
