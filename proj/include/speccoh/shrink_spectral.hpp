#pragma once

// Closed-form shrinkage of the spectral matrix toward a scaled identity.
// Three solutions, all for the model S*(eta, rho) = (1-rho) S_hat + rho eta I:
//
//   HS   eta = tr{S}/p,              rho = [1 - K/p + K tr{S^2}/tr^2{S}]^-1
//   QLa  eta = tr{S}/p,              rho from the one-parameter quadratic-loss
//                                    minimization (fixed LW target)
//   QLb  eta = tr{S^-1}/tr{S^-2},    rho = [1 + K/p - K tr^2{S^-1}/(p^2 tr{S^-2})]^-1
//
// The equivalent affine coefficients (alpha, beta) = (1-rho, rho*eta) are
// stored alongside, so estimators can be applied as alpha*S_hat + beta*I.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "speccoh/errors.hpp"
#include "speccoh/hermitian.hpp"

namespace speccoh {

enum class SolutionKind { HS, QLa, QLb, HSP, QLP };

inline const char* solution_kind_name(SolutionKind k) {
  switch (k) {
    case SolutionKind::HS: return "hs";
    case SolutionKind::QLa: return "qla";
    case SolutionKind::QLb: return "qlb";
    case SolutionKind::HSP: return "hsp";
    case SolutionKind::QLP: return "qlp";
  }
  return "?";
}

// Affine shrinkage coefficients for one frequency. For the spectral-matrix
// methods (eta, rho) are populated and alpha = 1-rho, beta = rho*eta exactly;
// the precision-matrix methods are two-parameter and carry only (alpha, beta).
struct ShrinkageSolution {
  SolutionKind method = SolutionKind::HS;
  double alpha = 0.0;  // multiplier on the data matrix
  double beta = 0.0;   // multiplier on the identity
  std::optional<double> eta;
  std::optional<double> rho;
  bool clamped = false;  // true when rho (or alpha) had to be pulled into range
};

namespace detail {

inline void require_valid_traces(const TraceSet& t, const char* where) {
  if (!traces_valid(t)) throw DegenerateTraces(std::string(where) + ": traces must be positive and finite");
}

inline void require_tapers_at_least(std::size_t k, std::size_t p, const char* where) {
  if (k < p)
    throw InsufficientTapers(std::string(where) + ": need K >= p, got K=" + std::to_string(k) +
                             ", p=" + std::to_string(p));
}

// Oracle formulas keep rho in (0,1]; estimated traces can push it out.
inline double clamp_rho(double rho, bool& clamped) {
  if (!std::isfinite(rho) || rho > 1.0) {
    clamped = true;
    return 1.0;
  }
  if (rho < 0.0) {
    clamped = true;
    return 0.0;
  }
  return rho;
}

inline ShrinkageSolution finish_spectral(SolutionKind kind, double eta, double rho) {
  ShrinkageSolution sol;
  sol.method = kind;
  sol.clamped = false;
  sol.rho = clamp_rho(rho, sol.clamped);
  sol.eta = eta;
  sol.alpha = 1.0 - *sol.rho;
  sol.beta = *sol.rho * eta;
  return sol;
}

}  // namespace detail

// Hilbert-Schmidt solution with the trace-scaled identity target.
inline ShrinkageSolution hs_oracle(const TraceSet& t, std::size_t p, std::size_t k) {
  detail::require_valid_traces(t, "hs_oracle");
  detail::require_tapers_at_least(k, p, "hs_oracle");
  const double pd = static_cast<double>(p);
  const double kd = static_cast<double>(k);
  const double eta = t.tr_s / pd;
  const double denom = 1.0 - kd / pd + kd * t.tr_s2 / (t.tr_s * t.tr_s);
  return detail::finish_spectral(SolutionKind::HS, eta, 1.0 / denom);
}

// Quadratic-loss solution for the same fixed target eta = tr{S}/p.
inline ShrinkageSolution qla_oracle(const TraceSet& t, std::size_t p, std::size_t k) {
  detail::require_valid_traces(t, "qla_oracle");
  detail::require_tapers_at_least(k, p, "qla_oracle");
  const double pd = static_cast<double>(p);
  const double kd = static_cast<double>(k);
  const double eta = t.tr_s / pd;
  const double denom = kd * pd + pd * pd -
                       (2.0 / (pd * pd)) * (kd * pd * t.tr_sinv * t.tr_s -
                                            0.5 * kd * t.tr_s * t.tr_s * t.tr_sinv2);
  if (!(denom > 0.0))
    throw NonPositiveDenominator("qla_oracle: denominator not positive; trace set inconsistent");
  return detail::finish_spectral(SolutionKind::QLa, eta, pd * pd / denom);
}

// Quadratic-loss solution with jointly optimal target scale.
inline ShrinkageSolution qlb_oracle(const TraceSet& t, std::size_t p, std::size_t k) {
  detail::require_valid_traces(t, "qlb_oracle");
  detail::require_tapers_at_least(k, p, "qlb_oracle");
  const double pd = static_cast<double>(p);
  const double kd = static_cast<double>(k);
  const double eta = t.tr_sinv / t.tr_sinv2;
  const double denom =
      1.0 + kd / pd - kd * t.tr_sinv * t.tr_sinv / (pd * pd * t.tr_sinv2);
  return detail::finish_spectral(SolutionKind::QLb, eta, 1.0 / denom);
}

// alpha*S_hat + beta*I.
inline HermitianMatrix apply_affine(const HermitianMatrix& s_hat, const ShrinkageSolution& sol) {
  return affine_with_identity(s_hat, sol.alpha, sol.beta);
}

}  // namespace speccoh
