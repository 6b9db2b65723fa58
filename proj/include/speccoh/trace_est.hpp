#pragma once

// Data-driven estimators of the four trace functionals from S_hat with K
// tapers:
//
//   tr{S}     <- tr{S_hat}                            exactly unbiased
//   tr{S^2}   <- tr{S_hat^2} - (1/K) tr^2{S_hat}      mean (1 - 1/K^2) tr{S^2}
//   tr{S^-1}  <- (1 - p/K) tr{S_hat^-1}               exactly unbiased, K > p
//   tr{S^-2}  <- (1 - p/K)^2 tr{S_hat^-2}             one-term, adopted
//
// The exactly-unbiased two-term tr{S^-2} estimator exists only inside
// bias_check for the variance comparison; it is rejected for production use
// because of its high variance and occasional negative values.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "speccoh/errors.hpp"
#include "speccoh/hermitian.hpp"
#include "speccoh/models.hpp"
#include "speccoh/rng.hpp"
#include "speccoh/wishart.hpp"

namespace speccoh {

inline TraceSet estimate_traces(const HermitianMatrix& s_hat, std::size_t k) {
  const std::size_t p = s_hat.dim();
  if (k <= p + 1)
    throw InsufficientTapers("estimate_traces: need K > p+1, got K=" + std::to_string(k) +
                             ", p=" + std::to_string(p));
  const double kd = static_cast<double>(k);
  const double shrink = 1.0 - static_cast<double>(p) / kd;
  const HermitianMatrix inv = invert(s_hat);

  TraceSet t;
  t.tr_s = trace_real(s_hat);
  t.tr_s2 = trace_square(s_hat) - t.tr_s * t.tr_s / kd;
  t.tr_sinv = shrink * trace_real(inv);
  t.tr_sinv2 = shrink * shrink * trace_square(inv);
  t.provenance = Provenance::Estimated;
  return t;
}

// One row of a bias report: the Monte-Carlo behaviour of one estimator.
struct BiasRow {
  double freq_hz = 0.0;
  std::string functional;   // "tr_s", "tr_s2", "tr_sinv", "tr_sinv2"
  double truth = 0.0;       // true trace functional
  double expected_mean = 0.0;  // analytic mean of the estimator
  double mc_mean = 0.0;
  double se = 0.0;
  bool pass = false;  // |mc_mean - expected_mean| <= 3 se
};

// Variance comparison between the adopted one-term tr{S^-2} estimator and
// the exactly-unbiased two-term version.
struct VarianceComparisonRow {
  double freq_hz = 0.0;
  double var_one_term = 0.0;
  double var_two_term = 0.0;
  std::size_t negative_two_term = 0;  // count of negative two-term estimates
  bool two_term_larger = false;
};

struct BiasReport {
  std::size_t p = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<BiasRow> rows;
  std::vector<VarianceComparisonRow> variance_rows;
};

namespace detail {

struct RunningMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double variance() const {
    const double mu = mean();
    return sum_sq / static_cast<double>(n) - mu * mu;
  }
  double se() const { return std::sqrt(variance() / static_cast<double>(n)); }
};

inline BiasRow make_bias_row(double freq, std::string name, double truth, double expected,
                             const RunningMoments& mom) {
  BiasRow row;
  row.freq_hz = freq;
  row.functional = std::move(name);
  row.truth = truth;
  row.expected_mean = expected;
  row.mc_mean = mom.mean();
  row.se = mom.se();
  row.pass = std::abs(row.mc_mean - row.expected_mean) <= 3.0 * row.se;
  return row;
}

}  // namespace detail

// Monte-Carlo bias study of the trace estimators over a model's grid.
// Replicate m at grid index l draws from child_seed(seed, m, l), matching the
// campaign seeding contract.
inline BiasReport bias_check(const SpectralModel& model, std::size_t k, std::size_t m,
                             std::uint64_t seed) {
  if (m < 100) throw BadCount("bias_check: need at least 100 replicates");
  const std::size_t p = model.p;
  if (k <= p + 1)
    throw InsufficientTapers("bias_check: need K > p+1 for the inverse-trace estimators");

  BiasReport report;
  report.p = p;
  report.k = k;
  report.m = m;
  report.seed = seed;

  const double kd = static_cast<double>(k);
  const double shrink = 1.0 - static_cast<double>(p) / kd;

  for (std::size_t l = 0; l < model.grid_hz.size(); ++l) {
    const HermitianMatrix& s0 = model.s0(l);
    const TraceSet truth = trace_powers(s0);

    detail::RunningMoments m_s, m_s2, m_sinv, m_sinv2_one, m_sinv2_two;
    std::size_t negative_two_term = 0;
    for (std::size_t rep = 0; rep < m; ++rep) {
      Rng rng(child_seed(seed, rep, l));
      const HermitianMatrix s_hat = draw_spectral_estimate(s0, k, rng);
      const TraceSet est = estimate_traces(s_hat, k);
      m_s.add(est.tr_s);
      m_s2.add(est.tr_s2);
      m_sinv.add(est.tr_sinv);
      m_sinv2_one.add(est.tr_sinv2);
      // Two-term unbiased estimator; est.tr_sinv = shrink * tr{S_hat^-1}.
      const double tr_shat_inv = est.tr_sinv / shrink;
      const double two_term = est.tr_sinv2 - (shrink / kd) * tr_shat_inv * tr_shat_inv;
      m_sinv2_two.add(two_term);
      if (two_term < 0.0) ++negative_two_term;
    }

    const double f = model.grid_hz[l];
    report.rows.push_back(detail::make_bias_row(f, "tr_s", truth.tr_s, truth.tr_s, m_s));
    report.rows.push_back(detail::make_bias_row(
        f, "tr_s2", truth.tr_s2, (1.0 - 1.0 / (kd * kd)) * truth.tr_s2, m_s2));
    report.rows.push_back(
        detail::make_bias_row(f, "tr_sinv", truth.tr_sinv, truth.tr_sinv, m_sinv));
    // One-term estimator: finite-K mean from the Wishart inverse moments.
    const double kp = kd - static_cast<double>(p);
    const double c1 = kd * kd / (kp * kp * kp - kp);
    const double one_term_mean =
        shrink * shrink * c1 * (kp * truth.tr_sinv2 + truth.tr_sinv * truth.tr_sinv);
    report.rows.push_back(
        detail::make_bias_row(f, "tr_sinv2", truth.tr_sinv2, one_term_mean, m_sinv2_one));

    VarianceComparisonRow var_row;
    var_row.freq_hz = f;
    var_row.var_one_term = m_sinv2_one.variance();
    var_row.var_two_term = m_sinv2_two.variance();
    var_row.negative_two_term = negative_two_term;
    var_row.two_term_larger = var_row.var_two_term > var_row.var_one_term;
    report.variance_rows.push_back(var_row);
  }
  return report;
}

}  // namespace speccoh
