#pragma once

// Synthetic spectral-model zoo. Each model pins a true spectral matrix
// S0(f) on a frequency grid by building the precision matrix directly:
//
//   identity  S0(f) = c I                      (all partial coherencies 0)
//   dense     C0(f) = D (I + kappa(f) B) D, S0 = C0^-1, with B the disjoint
//             adjacent-pair pattern (1,2),(3,4),... and kappa(f) a baseline
//             plus Gaussian bumps in frequency; every active pair has
//             squared partial coherence kappa(f)^2 by construction
//   sparse    same with constant kappa and the single pair (1,2)
//
// D is a fixed positive diagonal spreading the channel powers across
// `channel_spread_decades` decades. Partial coherence is invariant under any
// such D, so the coherence targets stay kappa(f)^2 exactly, while the
// eigenvalue profile of S0 becomes spread out the way multichannel recordings
// are; with D = I the spectrum of I + kappa B collapses to the two atoms
// 1 +- kappa.
//
// With the pair pattern, I + kappa B is positive definite exactly when
// |kappa| < 1.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "speccoh/errors.hpp"
#include "speccoh/hermitian.hpp"

namespace speccoh {

enum class ModelKind { Identity, Dense, Sparse };

inline const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Identity: return "identity";
    case ModelKind::Dense: return "dense";
    case ModelKind::Sparse: return "sparse";
  }
  return "?";
}

struct SpikeParams {
  double center_hz = 0.0;
  double amp = 0.0;
  double sigma_hz = 1.0;
};

struct ModelSpec {
  ModelKind kind = ModelKind::Identity;
  std::size_t p = 2;
  double c = 1.0;              // identity: S0 = c I
  double kappa = 0.3;          // sparse: constant coupling
  double kappa_base = 0.3;     // dense: baseline coupling
  std::vector<SpikeParams> spikes;  // dense: bumps in kappa(f)
  double channel_spread_decades = 0.0;  // dense/sparse: power range of D^2
};

struct SpectralModel {
  std::string label;
  std::size_t p = 0;
  std::vector<double> grid_hz;
  std::vector<HermitianMatrix> matrices;   // S0 per frequency
  std::vector<double> target_gamma2;       // per frequency, active pairs
  std::vector<std::pair<std::size_t, std::size_t>> active_pairs;

  const HermitianMatrix& s0(std::size_t l) const { return matrices[l]; }
};

namespace detail {

inline double dense_kappa(const ModelSpec& spec, double f) {
  double k = spec.kappa_base;
  for (const auto& s : spec.spikes) {
    const double z = (f - s.center_hz) / s.sigma_hz;
    k += s.amp * std::exp(-0.5 * z * z);
  }
  return k;
}

inline std::vector<std::pair<std::size_t, std::size_t>> pair_pattern(std::size_t p,
                                                                     bool single) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (single) {
    pairs.emplace_back(0, 1);
  } else {
    for (std::size_t j = 0; j + 1 < p; j += 2) pairs.emplace_back(j, j + 1);
  }
  return pairs;
}

inline std::vector<double> channel_scales(std::size_t p, double spread_decades) {
  std::vector<double> d(p, 1.0);
  if (spread_decades == 0.0 || p < 2) return d;
  for (std::size_t i = 0; i < p; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(p - 1);
    d[i] = std::pow(10.0, spread_decades * (0.5 - t));  // sqrt of channel power
  }
  return d;
}

inline HermitianMatrix coupled_precision(std::size_t p, double kappa, double spread_decades,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  // I + kappa B stays positive definite only for |kappa| < 1.
  if (!(std::abs(kappa) < 0.995))
    throw NotPositiveDefinite("make_model: |kappa| = " + std::to_string(kappa) +
                              " leaves no positive-definite margin");
  const auto d = channel_scales(p, spread_decades);
  HermitianMatrix c(p);
  for (std::size_t i = 0; i < p; ++i) c.set(i, i, Complex(d[i] * d[i], 0.0));
  for (const auto& [j, k] : pairs) c.set(j, k, Complex(kappa * d[j] * d[k], 0.0));
  return c;
}

}  // namespace detail

inline std::vector<double> make_grid(double start_hz, double stop_hz, double step_hz) {
  if (!(step_hz > 0.0) || stop_hz < start_hz - 1e-12)
    throw EmptyGrid("make_grid: need step > 0 and stop >= start");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((stop_hz - start_hz) / step_hz + 0.5)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(start_hz + static_cast<double>(i) * step_hz);
  return grid;
}

inline SpectralModel make_model(const ModelSpec& spec, const std::vector<double>& grid_hz) {
  if (grid_hz.empty()) throw EmptyGrid("make_model: empty frequency grid");
  for (std::size_t i = 1; i < grid_hz.size(); ++i)
    if (!(grid_hz[i] > grid_hz[i - 1])) throw ScenarioError("make_model: grid not strictly increasing");
  if (spec.p < 2) throw ScenarioError("make_model: need p >= 2");

  SpectralModel model;
  model.label = model_kind_name(spec.kind);
  model.p = spec.p;
  model.grid_hz = grid_hz;
  model.matrices.reserve(grid_hz.size());
  model.target_gamma2.reserve(grid_hz.size());

  switch (spec.kind) {
    case ModelKind::Identity: {
      if (!(spec.c > 0.0)) throw NotPositiveDefinite("make_model: identity scale must be positive");
      for (std::size_t l = 0; l < grid_hz.size(); ++l) {
        model.matrices.push_back(HermitianMatrix::scaled_identity(spec.p, spec.c));
        model.target_gamma2.push_back(0.0);
      }
      break;
    }
    case ModelKind::Dense:
    case ModelKind::Sparse: {
      model.active_pairs = detail::pair_pattern(spec.p, spec.kind == ModelKind::Sparse);
      for (double f : grid_hz) {
        const double kappa =
            spec.kind == ModelKind::Sparse ? spec.kappa : detail::dense_kappa(spec, f);
        const HermitianMatrix c0 = detail::coupled_precision(
            spec.p, kappa, spec.channel_spread_decades, model.active_pairs);
        model.matrices.push_back(invert(c0));
        model.target_gamma2.push_back(kappa * kappa);
      }
      break;
    }
  }
  return model;
}

}  // namespace speccoh
