#include "qubitizer/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"

namespace qubitizer {

namespace {

void check_state(const ComplexMatrix& h, const StateVector& psi) {
  if (!psi.normalized()) throw Error(ErrorCode::kNotNormalized, "state is not normalized");
  if (!h.square() || h.rows() != psi.dim()) {
    throw Error(ErrorCode::kDimMismatch, "operator and state dimensions differ");
  }
}

// Leaves room for rounding in the norms while still catching real violations.
constexpr double kSlack = 1e-10;

}  // namespace

MeanVariance exact_expectation_variance(const ComplexMatrix& h, const StateVector& psi) {
  check_state(h, psi);
  if (hermiticity_defect(h) > tol::kHermitian) {
    throw Error(ErrorCode::kNotHermitian, "expectation of a non-Hermitian operator");
  }
  const StateVector hpsi = apply(h, psi);
  const double mean = inner(psi, hpsi).real();
  const double second = inner(hpsi, hpsi).real();
  return {mean, std::max(0.0, second - mean * mean)};
}

cplx covariance(const ComplexMatrix& hi, const ComplexMatrix& hj, const StateVector& psi) {
  check_state(hi, psi);
  check_state(hj, psi);
  const StateVector a = apply(hi, psi);
  const StateVector b = apply(hj, psi);
  // <psi|hi hj|psi> = <hi psi|hj psi> for Hermitian hi.
  return inner(a, b) - inner(psi, a) * inner(psi, b);
}

BoundsReport variance_bound(const Lch& lch, const ShotPlan& plan,
                            const std::optional<StateVector>& psi) {
  const auto terms = weighted_terms(lch);
  const std::size_t count = terms.size();
  std::vector<std::vector<std::size_t>> groups = plan.groups;
  if (groups.empty()) {
    for (std::size_t i = 0; i < count; ++i) groups.push_back({i});
  }
  std::vector<int> seen(count, 0);
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::kBadPartition, "empty group");
    for (std::size_t i : g) {
      if (i >= count) throw Error(ErrorCode::kBadPartition, "term index out of range");
      ++seen[i];
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; })) {
    throw Error(ErrorCode::kBadPartition, "groups must cover every term exactly once");
  }

  BoundsReport rep;
  for (std::size_t i = 0; i < count; ++i) {
    TermBounds tb;
    tb.term = to_text(lch.terms()[i].string);
    tb.alpha = terms[i].alpha;
    rep.linear_bound += std::abs(tb.alpha);
    if (psi) {
      const MeanVariance mv = exact_expectation_variance(terms[i].h, *psi);
      tb.mean = mv.mean;
      tb.variance = mv.variance;
    }
    rep.terms.push_back(std::move(tb));
  }
  if (psi) {
    double lin = 0.0, sq = 0.0;
    for (const auto& t : rep.terms) {
      lin += t.alpha * *t.variance;
      sq += t.alpha * t.alpha * *t.variance;
    }
    rep.alpha_weighted_variance = lin;
    rep.alpha_squared_weighted_variance = sq;
    rep.grouped_exact = 0.0;
  }
  for (const auto& g : groups) {
    GroupBounds gb;
    gb.members = g;
    double s = 0.0;
    for (std::size_t i : g) s += std::abs(terms[i].alpha);
    gb.bound = s * s;
    rep.grouped_bound += gb.bound;
    if (psi) {
      double exact = 0.0;
      for (std::size_t i : g) {
        for (std::size_t j : g) {
          exact += terms[i].alpha * terms[j].alpha * covariance(terms[i].h, terms[j].h, *psi).real();
        }
      }
      gb.exact = exact;
      *rep.grouped_exact += exact;
    }
    rep.groups.push_back(std::move(gb));
  }
  if (count >= 2) rep.trotter = trotter_bound(terms);
  return rep;
}

MonteCarloResult monte_carlo_check(const MeasurementProgram& program, const StateVector& psi,
                                   std::size_t shots, std::uint64_t seed) {
  if (shots < 100) throw Error(ErrorCode::kOutOfRange, "at least 100 shots are required");
  const auto probs = outcome_probabilities(program, psi);
  const Moments exact = program_moments(program, psi);

  MonteCarloResult r;
  r.shots = shots;
  r.seed = seed;
  r.exact_mean = exact.mean;
  r.exact_variance = exact.variance;
  r.counts.assign(probs.size(), 0);

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
  for (std::size_t s = 0; s < shots; ++s) ++r.counts[dist(rng)];

  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double c = program.contribution(i);
    sum += c * static_cast<double>(r.counts[i]);
    sum2 += c * c * static_cast<double>(r.counts[i]);
  }
  const double n = static_cast<double>(shots);
  r.mean = sum / n;
  r.variance = std::max(0.0, sum2 / n - r.mean * r.mean);

  const double sigma = std::sqrt(exact.variance / n);
  r.mean_ok = std::abs(r.mean - exact.mean) <= std::max(6.0 * sigma, 1e-12);
  r.variance_ok = exact.variance > 1e-12 ? std::abs(r.variance - exact.variance) <= 0.1 * exact.variance
                                         : r.variance <= 1e-12;
  return r;
}

TrotterBound trotter_bound(const std::vector<WeightedTerm>& terms) {
  if (terms.size() < 2) throw Error(ErrorCode::kTooFewTerms, "needs at least two terms");
  const std::size_t dim = terms.front().h.rows();
  std::vector<ComplexMatrix> scaled;
  for (const auto& t : terms) {
    if (t.h.rows() != dim) throw Error(ErrorCode::kDimMismatch, "term dimensions differ");
    scaled.push_back(t.h * cplx(t.alpha));
  }
  TrotterBound b;
  b.xi1 = ComplexMatrix(dim, dim);
  bool ok = true;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    for (std::size_t k = j + 1; k < terms.size(); ++k) {
      const ComplexMatrix c = commutator(scaled[j], scaled[k]);
      b.xi1 += c * cplx(0.5);
      const double weight = std::abs(terms[j].alpha * terms[k].alpha);
      b.bound += weight;
      const double norm = spectral_norm(c);
      if (norm > 2.0 * weight + kSlack) ok = false;
      if (weight > 0.0) b.max_pairwise_ratio = std::max(b.max_pairwise_ratio, norm / (2.0 * weight));
    }
  }
  // The nested commutators bound the next order; keep the sweep small.
  if (terms.size() <= 6) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = 0; j < terms.size(); ++j) {
        for (std::size_t k = j + 1; k < terms.size(); ++k) {
          const double weight = std::abs(terms[i].alpha * terms[j].alpha * terms[k].alpha);
          const double norm = spectral_norm(commutator(scaled[i], commutator(scaled[j], scaled[k])));
          if (norm > 4.0 * weight + kSlack) ok = false;
          if (weight > 0.0) b.max_nested_ratio = std::max(b.max_nested_ratio, norm / (4.0 * weight));
        }
      }
    }
  }
  b.xi1_norm = spectral_norm(b.xi1);
  b.holds = ok && b.xi1_norm <= b.bound + kSlack;
  return b;
}

TrotterBound trotter_bound(const Lch& lch) { return trotter_bound(weighted_terms(lch)); }

double trotter_defect(const Lch& lch, double t, std::size_t steps, int order) {
  const ComplexMatrix product = lower(trotter(lch, TrotterPlan{t, steps, order, {}}));
  const ComplexMatrix h = materialize(lch);
  return spectral_norm(product - expm_hermitian(0.5 * (h + h.adjoint()), t));
}

nlohmann::json to_json(const TrotterBound& b) {
  return {{"xi1_norm", b.xi1_norm},
          {"bound", b.bound},
          {"max_pairwise_ratio", b.max_pairwise_ratio},
          {"max_nested_ratio", b.max_nested_ratio},
          {"holds", b.holds}};
}

nlohmann::json to_json(const MonteCarloResult& r) {
  return {{"shots", r.shots},           {"seed", r.seed},
          {"mean", r.mean},             {"variance", r.variance},
          {"exact_mean", r.exact_mean}, {"exact_variance", r.exact_variance},
          {"mean_ok", r.mean_ok},       {"variance_ok", r.variance_ok}};
}

nlohmann::json to_json(const BoundsReport& r) {
  nlohmann::json j;
  j["linear_bound"] = r.linear_bound;
  j["grouped_bound"] = r.grouped_bound;
  auto& terms = j["terms"] = nlohmann::json::array();
  for (const auto& t : r.terms) {
    nlohmann::json row{{"term", t.term}, {"alpha", t.alpha}};
    if (t.mean) row["mean"] = *t.mean;
    if (t.variance) row["variance"] = *t.variance;
    terms.push_back(std::move(row));
  }
  auto& groups = j["groups"] = nlohmann::json::array();
  for (const auto& g : r.groups) {
    nlohmann::json row{{"members", g.members}, {"bound", g.bound}};
    if (g.exact) row["exact"] = *g.exact;
    groups.push_back(std::move(row));
  }
  if (r.alpha_weighted_variance) j["alpha_weighted_variance"] = *r.alpha_weighted_variance;
  if (r.alpha_squared_weighted_variance) {
    j["alpha_squared_weighted_variance"] = *r.alpha_squared_weighted_variance;
  }
  if (r.grouped_exact) j["grouped_exact"] = *r.grouped_exact;
  if (r.trotter) j["trotter"] = to_json(*r.trotter);
  if (!r.monte_carlo.empty()) {
    auto& mc = j["monte_carlo"] = nlohmann::json::array();
    for (const auto& m : r.monte_carlo) mc.push_back(to_json(m));
  }
  return j;
}

}  // namespace qubitizer
