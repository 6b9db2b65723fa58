#pragma once

// Sine tapers, eigencoefficients and the multitaper spectral-matrix
// estimator S_hat(f) = (1/K) J(f) J(f)^H.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "speccoh/errors.hpp"
#include "speccoh/hermitian.hpp"
#include "speccoh/matrix.hpp"

namespace speccoh {

// K orthonormal tapers of length N, rows indexed by taper.
struct TaperSet {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> weights;  // k rows of n samples

  double w(std::size_t taper, std::size_t t) const { return weights[taper * n + t]; }
};

// h_{k,t} = sqrt(2/(N+1)) sin((k+1) pi (t+1) / (N+1)), t = 0..N-1.
inline TaperSet sine_tapers(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw BadCount("sine_tapers: need 1 <= k <= n");
  TaperSet ts{n, k, std::vector<double>(n * k)};
  const double norm = std::sqrt(2.0 / static_cast<double>(n + 1));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < n; ++t)
      ts.weights[j * n + t] =
          norm * std::sin(static_cast<double>(j + 1) * std::numbers::pi *
                          static_cast<double>(t + 1) / static_cast<double>(n + 1));
  return ts;
}

// Arbitrary taper rows; orthonormality enforced to 1e-10.
inline TaperSet tapers_from_weights(std::size_t n, std::size_t k,
                                    const std::vector<double>& weights) {
  if (weights.size() != n * k) throw LengthMismatch("tapers_from_weights: weight count != k*n");
  if (k == 0 || k > n) throw BadCount("tapers_from_weights: need 1 <= k <= n");
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      double dot = 0.0;
      for (std::size_t t = 0; t < n; ++t) dot += weights[a * n + t] * weights[b * n + t];
      const double want = (a == b) ? 1.0 : 0.0;
      if (std::abs(dot - want) > 1e-10)
        throw NotOrthonormal("tapers_from_weights: rows not orthonormal");
    }
  }
  return TaperSet{n, k, weights};
}

// p channels by N samples, row-major by channel.
struct TimeSeries {
  std::size_t channels = 0;
  std::size_t samples = 0;
  std::vector<double> data;

  double x(std::size_t ch, std::size_t t) const { return data[ch * samples + t]; }
  double& x(std::size_t ch, std::size_t t) { return data[ch * samples + t]; }
};

inline TimeSeries make_series(std::size_t channels, std::size_t samples) {
  return TimeSeries{channels, samples, std::vector<double>(channels * samples)};
}

struct EigenCoefficients {
  double freq = 0.0;      // Hz
  ComplexMatrix j;        // p x K
};

// J_k(f) = dt^{1/2} sum_t h_{k,t} x_t exp(-i 2 pi f t dt).
inline EigenCoefficients eigencoefficients(const TimeSeries& x, const TaperSet& tapers,
                                           double freq_hz, double dt) {
  if (x.samples != tapers.n)
    throw LengthMismatch("eigencoefficients: series length != taper length");
  const double nyquist = 1.0 / (2.0 * dt);
  if (std::abs(freq_hz) > nyquist * (1.0 + 1e-12))
    throw FrequencyOutOfRange("eigencoefficients: |freq| beyond Nyquist");

  const std::size_t p = x.channels;
  const std::size_t n = x.samples;
  const std::size_t k = tapers.k;
  EigenCoefficients out;
  out.freq = freq_hz;
  out.j = ComplexMatrix(p, k);

  const double sqrt_dt = std::sqrt(dt);
  std::vector<Complex> phase(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double theta = -2.0 * std::numbers::pi * freq_hz * static_cast<double>(t) * dt;
    phase[t] = Complex(std::cos(theta), std::sin(theta));
  }
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t tap = 0; tap < k; ++tap) {
      Complex acc{};
      for (std::size_t t = 0; t < n; ++t) acc += tapers.w(tap, t) * x.x(c, t) * phase[t];
      out.j(c, tap) = sqrt_dt * acc;
    }
  }
  return out;
}

// (1/K) J J^H; Hermitian positive semidefinite by construction.
inline HermitianMatrix spectral_matrix(const EigenCoefficients& ec) {
  const std::size_t p = ec.j.rows();
  const std::size_t k = ec.j.cols();
  if (k == 0) throw BadCount("spectral_matrix: need at least one taper");
  HermitianMatrix s(p);
  const double inv_k = 1.0 / static_cast<double>(k);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a; b < p; ++b) {
      Complex acc{};
      for (std::size_t c = 0; c < k; ++c) acc += ec.j(a, c) * std::conj(ec.j(b, c));
      s.set(a, b, inv_k * acc);
    }
  }
  return s;
}

// Spectral bandwidth of K sine tapers: B = (K+1) / ((N+1) dt).
inline double bandwidth(std::size_t k, std::size_t n, double dt) {
  return static_cast<double>(k + 1) / (static_cast<double>(n + 1) * dt);
}

}  // namespace speccoh
