#pragma once

// Monte-Carlo campaign driver and the Wishart moment-identity checker.
//
// run_campaign realizes the evaluation protocol: per replicate and frequency,
// draw eigencoefficients from the true S0(f), form S_hat, estimate partial
// coherence with every configured method, score the summed squared error
// against the truth, then aggregate to PRISE per frequency and its average.
//
// Output is byte-identical for a fixed (model, config) regardless of thread
// count: cell results land in preallocated slots and are reduced in fixed
// (frequency, replicate) order.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "speccoh/errors.hpp"
#include "speccoh/hermitian.hpp"
#include "speccoh/method.hpp"
#include "speccoh/models.hpp"
#include "speccoh/multitaper.hpp"
#include "speccoh/parallel.hpp"
#include "speccoh/pcoh.hpp"
#include "speccoh/rng.hpp"
#include "speccoh/shrink_precision.hpp"
#include "speccoh/shrink_spectral.hpp"
#include "speccoh/trace_est.hpp"
#include "speccoh/wishart.hpp"

namespace speccoh {

struct McConfig {
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<Method> methods;
};

inline void validate_config(const McConfig& cfg, std::size_t p) {
  if (cfg.m < 1) throw BadCount("campaign: need at least one replicate");
  if (cfg.k < p) throw InsufficientTapers("campaign: need K >= p");
  for (Method m : cfg.methods) {
    if ((method_is_precision(m) || method_uses_estimated_traces(m)) && cfg.k <= p + 1)
      throw InsufficientTapers(std::string("campaign: method ") + method_name(m) +
                               " needs K > p+1");
  }
}

namespace detail {

// Shrinkage solution for one method at one cell. Oracle methods use the true
// traces (precomputed per frequency); -est methods re-estimate from S_hat.
inline ShrinkageSolution solve_method(Method method, const TraceSet& oracle_traces,
                                      const HermitianMatrix& s_hat, std::size_t p,
                                      std::size_t k) {
  switch (method) {
    case Method::HS: return hs_oracle(oracle_traces, p, k);
    case Method::QLa: return qla_oracle(oracle_traces, p, k);
    case Method::QLb: return qlb_oracle(oracle_traces, p, k);
    case Method::HSP: return hsp_oracle(oracle_traces, p, k);
    case Method::QLP: return qlp_oracle(oracle_traces, p, k);
    case Method::QLaEst: return qla_oracle(estimate_traces(s_hat, k), p, k);
    case Method::QLbEst: return qlb_oracle(estimate_traces(s_hat, k), p, k);
    case Method::QLPEst: return qlp_oracle(estimate_traces(s_hat, k), p, k);
    case Method::Raw: break;
  }
  return ShrinkageSolution{};  // Raw has no parameters
}

struct CellResult {
  double err_raw = 0.0;
  std::vector<double> err;        // per configured method
  std::vector<double> alpha, beta, eta, rho, beta_tr_shat;
};

}  // namespace detail

inline PriseReport run_campaign(const SpectralModel& model, const McConfig& cfg,
                                std::size_t threads = 0) {
  validate_config(cfg, model.p);
  const std::size_t n_freq = model.grid_hz.size();
  const std::size_t n_meth = cfg.methods.size();
  const std::size_t p = model.p;
  const std::size_t k = cfg.k;

  // Per-frequency truth and oracle inputs.
  std::vector<PartialCoherenceMatrix> truth(n_freq);
  std::vector<TraceSet> oracle_traces(n_freq);
  for (std::size_t l = 0; l < n_freq; ++l) {
    truth[l] = partial_coherence(invert(model.s0(l)));
    oracle_traces[l] = trace_powers(model.s0(l));
  }

  std::vector<detail::CellResult> cells(n_freq * cfg.m);
  parallel_for(n_freq * cfg.m, threads, [&](std::size_t idx) {
    const std::size_t l = idx / cfg.m;
    const std::size_t rep = idx % cfg.m;
    Rng rng(child_seed(cfg.seed, rep, l));
    const HermitianMatrix s_hat = draw_spectral_estimate(model.s0(l), k, rng);
    const HermitianMatrix c_raw = invert(s_hat);
    const PartialCoherenceMatrix pcoh_raw = partial_coherence(c_raw);

    detail::CellResult cell;
    cell.err_raw = squared_error(pcoh_raw, truth[l]);
    cell.err.resize(n_meth);
    cell.alpha.resize(n_meth);
    cell.beta.resize(n_meth);
    cell.eta.resize(n_meth);
    cell.rho.resize(n_meth);
    cell.beta_tr_shat.resize(n_meth);

    const double tr_shat = trace_real(s_hat);
    for (std::size_t mi = 0; mi < n_meth; ++mi) {
      const Method method = cfg.methods[mi];
      if (method == Method::Raw) {
        cell.err[mi] = cell.err_raw;
        continue;
      }
      const ShrinkageSolution sol = detail::solve_method(method, oracle_traces[l], s_hat, p, k);
      PartialCoherenceMatrix pcoh;
      if (method_is_precision(method)) {
        pcoh = partial_coherence(affine_with_identity(c_raw, sol.alpha, sol.beta));
      } else {
        pcoh = partial_coherence(invert(apply_affine(s_hat, sol)));
      }
      cell.err[mi] = squared_error(pcoh, truth[l]);
      cell.alpha[mi] = sol.alpha;
      cell.beta[mi] = sol.beta;
      cell.eta[mi] = sol.eta.value_or(0.0);
      cell.rho[mi] = sol.rho.value_or(0.0);
      cell.beta_tr_shat[mi] = sol.beta * tr_shat;
    }
    cells[idx] = std::move(cell);
  });

  // Fixed-order reduction.
  PriseReport report;
  report.model_label = model.label;
  report.p = p;
  report.k = k;
  report.m = cfg.m;
  report.seed = cfg.seed;
  report.grid_hz = model.grid_hz;
  report.target_gamma2 = model.target_gamma2;
  report.methods.resize(n_meth);

  const double inv_m = 1.0 / static_cast<double>(cfg.m);
  for (std::size_t mi = 0; mi < n_meth; ++mi) {
    MethodReport& mr = report.methods[mi];
    mr.method = cfg.methods[mi];
    mr.per_freq.resize(n_freq);
  }
  for (std::size_t l = 0; l < n_freq; ++l) {
    double mean_raw = 0.0;
    for (std::size_t rep = 0; rep < cfg.m; ++rep) mean_raw += cells[l * cfg.m + rep].err_raw;
    mean_raw *= inv_m;
    for (std::size_t mi = 0; mi < n_meth; ++mi) {
      double mean_err = 0.0, a = 0.0, b = 0.0, e = 0.0, r = 0.0, bt = 0.0;
      for (std::size_t rep = 0; rep < cfg.m; ++rep) {
        const auto& cell = cells[l * cfg.m + rep];
        mean_err += cell.err[mi];
        a += cell.alpha[mi];
        b += cell.beta[mi];
        e += cell.eta[mi];
        r += cell.rho[mi];
        bt += cell.beta_tr_shat[mi];
      }
      MethodFrequencyStats& stats = report.methods[mi].per_freq[l];
      const Method method = cfg.methods[mi];
      stats.prise_pct = prise(mean_raw, mean_err * inv_m);
      stats.mean_alpha = a * inv_m;
      stats.mean_beta = b * inv_m;
      stats.has_eta_rho = !method_is_precision(method) && method != Method::Raw;
      stats.mean_eta = e * inv_m;
      stats.mean_rho = r * inv_m;
      stats.is_precision = method_is_precision(method);
      stats.mean_beta_tr_shat = bt * inv_m;
    }
  }
  for (std::size_t mi = 0; mi < n_meth; ++mi) {
    std::vector<double> per_freq(n_freq);
    for (std::size_t l = 0; l < n_freq; ++l) per_freq[l] = report.methods[mi].per_freq[l].prise_pct;
    report.methods[mi].avg_prise_pct = average_prise(per_freq);
  }
  return report;
}

// One Wishart moment identity checked by Monte Carlo.
struct MomentRow {
  std::string id;        // "eq18".."eq22"
  std::string statistic;
  double truth = 0.0;
  double mc_mean = 0.0;
  double se = 0.0;
  bool skipped = false;
  std::string skip_reason;
  bool pass = false;  // |mc_mean - truth| <= 4 se
};

struct MomentReport {
  std::size_t p = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<MomentRow> rows;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.skipped && !r.pass) return false;
    return true;
  }
};

// Monte-Carlo check of the five complex-Wishart expectation identities used
// throughout the estimator derivations, with A = B = S^-1 in the first
// product identity and A = B = S in the inverse one.
inline MomentReport moment_check(const HermitianMatrix& s0, std::size_t k, std::size_t m,
                                 std::uint64_t seed) {
  const std::size_t p = s0.dim();
  if (k < p) throw InsufficientTapers("moment_check: need K >= p");
  if (m < 2) throw BadCount("moment_check: need at least two replicates");

  const bool inverse_ok = k > p + 1;
  const TraceSet t = trace_powers(s0);
  const double kd = static_cast<double>(k);
  const double pd = static_cast<double>(p);
  const double kp = kd - pd;

  const ComplexMatrix s_full = s0.to_complex();
  const ComplexMatrix sinv_full = invert(s0).to_complex();

  detail::RunningMoments m18, m19, m20, m21, m22;
  for (std::size_t rep = 0; rep < m; ++rep) {
    Rng rng(child_seed(seed, rep, 0));
    const HermitianMatrix s_hat = draw_spectral_estimate(s0, k, rng);
    const ComplexMatrix sh = s_hat.to_complex();
    const ComplexMatrix g = multiply(sinv_full, sh);  // S^-1 S_hat
    m18.add(real_trace_product(g, g));
    const double tr_sh = trace_real(s_hat);
    m19.add(tr_sh * tr_sh);
    if (inverse_ok) {
      const HermitianMatrix sh_inv = invert(s_hat);
      const ComplexMatrix gi = multiply(s_full, sh_inv.to_complex());  // S S_hat^-1
      const double tr_shinv = trace_real(sh_inv);
      m20.add(tr_shinv);
      m21.add(real_trace_product(gi, gi));
      m22.add(tr_shinv * tr_shinv);
    }
  }

  MomentReport report;
  report.p = p;
  report.k = k;
  report.m = m;
  report.seed = seed;

  auto add_row = [&report](std::string id, std::string stat, double truth,
                           const detail::RunningMoments& mom, bool skipped, std::string reason) {
    MomentRow row;
    row.id = std::move(id);
    row.statistic = std::move(stat);
    row.truth = truth;
    if (skipped) {
      row.skipped = true;
      row.skip_reason = std::move(reason);
    } else {
      row.mc_mean = mom.mean();
      row.se = mom.se();
      row.pass = std::abs(row.mc_mean - row.truth) <= 4.0 * row.se;
    }
    report.rows.push_back(std::move(row));
  };

  const double c1 = kd * kd / (kp * kp * kp - kp);
  const std::string need = "needs K > p+1";
  add_row("eq18", "tr{S^-1 Sh S^-1 Sh}", pd + pd * pd / kd, m18, false, "");
  add_row("eq19", "tr^2{Sh}", t.tr_s * t.tr_s + t.tr_s2 / kd, m19, false, "");
  add_row("eq20", "tr{Sh^-1}", inverse_ok ? (kd / kp) * t.tr_sinv : 0.0, m20, !inverse_ok, need);
  add_row("eq21", "tr{S Sh^-1 S Sh^-1}", inverse_ok ? c1 * (kp * pd + pd * pd) : 0.0, m21,
          !inverse_ok, need);
  add_row("eq22", "tr^2{Sh^-1}",
          inverse_ok ? c1 * (kp * t.tr_sinv * t.tr_sinv + t.tr_sinv2) : 0.0, m22, !inverse_ok,
          need);
  return report;
}

}  // namespace speccoh
