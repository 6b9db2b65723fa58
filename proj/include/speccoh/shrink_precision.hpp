#pragma once

// Two-parameter shrinkage of the precision matrix,
// C*(alpha, beta) = alpha S_hat^-1 + beta I, under Hilbert-Schmidt (HSP) and
// quadratic (QLP) loss. Both require K > p+1. The alpha numerators are
// sphericity statistics: exactly zero when the relevant matrix is a scaled
// identity, positive otherwise.

#include <cmath>
#include <cstddef>
#include <string>

#include "speccoh/errors.hpp"
#include "speccoh/hermitian.hpp"
#include "speccoh/shrink_spectral.hpp"

namespace speccoh {

namespace detail {

inline void require_tapers_above(std::size_t k, std::size_t p, const char* where) {
  if (k <= p + 1)
    throw InsufficientTapers(std::string(where) + ": need K > p+1, got K=" + std::to_string(k) +
                             ", p=" + std::to_string(p));
}

// Sphericity numerators are nonnegative analytically; estimated traces can
// produce genuinely negative samples, which are clamped to zero and flagged.
// Tiny float negatives (>= -1e-12) are snapped silently.
inline double clamp_alpha(double alpha, bool& clamped) {
  if (alpha >= 0.0) return alpha;
  if (alpha < -1e-12) clamped = true;
  return 0.0;
}

}  // namespace detail

inline ShrinkageSolution hsp_oracle(const TraceSet& t, std::size_t p, std::size_t k) {
  detail::require_valid_traces(t, "hsp_oracle");
  detail::require_tapers_above(k, p, "hsp_oracle");
  const double pd = static_cast<double>(p);
  const double kd = static_cast<double>(k);
  const double kp = kd - pd;
  const double c3 = kd / (kp * kp * kp - kp);
  const double r = t.tr_sinv2 / (t.tr_sinv * t.tr_sinv);
  const double d = c3 * pd * kp * kp * r + c3 * pd * kp - kd / kp;

  ShrinkageSolution sol;
  sol.method = SolutionKind::HSP;
  sol.clamped = false;
  sol.alpha = detail::clamp_alpha((pd * r - 1.0) / d, sol.clamped);
  sol.beta = (c3 * t.tr_sinv / d) * (r + kp);
  return sol;
}

inline ShrinkageSolution qlp_oracle(const TraceSet& t, std::size_t p, std::size_t k) {
  detail::require_valid_traces(t, "qlp_oracle");
  detail::require_tapers_above(k, p, "qlp_oracle");
  const double pd = static_cast<double>(p);
  const double kd = static_cast<double>(k);
  const double kp = kd - pd;
  const double c0 = kd * kd / (kp * kp - 1.0);
  const double r = t.tr_s2 / (t.tr_s * t.tr_s);
  const double d = c0 * pd * r - kd / kp;

  ShrinkageSolution sol;
  sol.method = SolutionKind::QLP;
  sol.clamped = false;
  sol.alpha = detail::clamp_alpha((pd * r - 1.0) / d, sol.clamped);
  sol.beta = (pd / (d * t.tr_s)) * (c0 - kd / kp);
  return sol;
}

// alpha*S_hat^-1 + beta*I; inverting S_hat may throw NotPositiveDefinite.
inline HermitianMatrix apply_precision_affine(const HermitianMatrix& s_hat,
                                              const ShrinkageSolution& sol) {
  return affine_with_identity(invert(s_hat), sol.alpha, sol.beta);
}

}  // namespace speccoh
