#pragma once

// Partial coherence from a precision matrix, squared-error scoring and the
// percentage relative improvement in squared error (PRISE).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "speccoh/errors.hpp"
#include "speccoh/hermitian.hpp"
#include "speccoh/method.hpp"

namespace speccoh {

// Symmetric matrix of squared partial coherencies; diagonal is 1 by
// convention and never enters any score.
struct PartialCoherenceMatrix {
  std::size_t p = 0;
  std::vector<double> g2;  // p*p row-major

  double operator()(std::size_t j, std::size_t k) const { return g2[j * p + k]; }
};

// gamma^2_jk = |C_jk|^2 / (C_jj C_kk) from a positive definite precision
// matrix C.
inline PartialCoherenceMatrix partial_coherence(const HermitianMatrix& c) {
  const std::size_t p = c.dim();
  PartialCoherenceMatrix out{p, std::vector<double>(p * p, 1.0)};
  for (std::size_t j = 0; j < p; ++j)
    if (!(c(j, j).real() > 0.0))
      throw NonPositiveDiagonal("partial_coherence: non-positive diagonal at index " +
                                std::to_string(j));
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j + 1; k < p; ++k) {
      const double v = std::norm(c(j, k)) / (c(j, j).real() * c(k, k).real());
      out.g2[j * p + k] = v;
      out.g2[k * p + j] = v;
    }
  }
  return out;
}

// Sum of squared errors over unordered pairs j < k.
inline double squared_error(const PartialCoherenceMatrix& estimate,
                            const PartialCoherenceMatrix& truth) {
  if (estimate.p != truth.p) throw DimensionMismatch("squared_error: dimensions differ");
  double e = 0.0;
  for (std::size_t j = 0; j < estimate.p; ++j)
    for (std::size_t k = j + 1; k < estimate.p; ++k) {
      const double d = estimate(j, k) - truth(j, k);
      e += d * d;
    }
  return e;
}

// 100 (E_basic - E_method) / E_basic, in percent.
inline double prise(double e_basic, double e_method) {
  if (!(e_basic > 0.0)) throw ZeroBaseline("prise: baseline error must be positive");
  return 100.0 * (e_basic - e_method) / e_basic;
}

inline double average_prise(const std::vector<double>& per_frequency) {
  if (per_frequency.empty()) throw EmptyGrid("average_prise: no frequencies");
  double s = 0.0;
  for (double v : per_frequency) s += v;
  return s / static_cast<double>(per_frequency.size());
}

// Per-frequency summary of one method in a campaign. The parameter means are
// averaged over replicates (constant for oracle methods).
struct MethodFrequencyStats {
  double prise_pct = 0.0;
  double mean_alpha = 0.0;
  double mean_beta = 0.0;
  bool has_eta_rho = false;
  double mean_eta = 0.0;
  double mean_rho = 0.0;
  bool is_precision = false;
  double mean_beta_tr_shat = 0.0;  // Efron-Morris style weight, reported only
};

struct MethodReport {
  Method method = Method::Raw;
  std::vector<MethodFrequencyStats> per_freq;
  double avg_prise_pct = 0.0;
};

struct PriseReport {
  std::string model_label;
  std::size_t p = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<double> grid_hz;
  std::vector<double> target_gamma2;  // per frequency, by model construction
  std::vector<MethodReport> methods;

  const MethodReport* find(Method method) const {
    for (const auto& mr : methods)
      if (mr.method == method) return &mr;
    return nullptr;
  }
};

}  // namespace speccoh
