#pragma once

// Frequency-domain sampling of eigencoefficients: K independent columns
// J_k = L z with L L^H = S0 and z standard complex Gaussian, so that
// K * S_hat = K * (1/K) J J^H follows the complex Wishart law W_p(K, S0).

#include <cstddef>

#include "speccoh/hermitian.hpp"
#include "speccoh/matrix.hpp"
#include "speccoh/multitaper.hpp"
#include "speccoh/rng.hpp"

namespace speccoh {

inline EigenCoefficients draw_eigencoefficients(const HermitianMatrix& s0, std::size_t k, Rng& rng,
                                                double freq_hz = 0.0) {
  const ComplexMatrix l = cholesky_factor(s0);
  const std::size_t p = s0.dim();
  EigenCoefficients out;
  out.freq = freq_hz;
  out.j = ComplexMatrix(p, k);
  std::vector<Complex> z(p);
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t i = 0; i < p; ++i) z[i] = rng.next_complex_normal();
    for (std::size_t row = 0; row < p; ++row) {
      Complex acc{};
      for (std::size_t i = 0; i <= row; ++i) acc += l(row, i) * z[i];
      out.j(row, col) = acc;
    }
  }
  return out;
}

// Convenience draw of S_hat itself.
inline HermitianMatrix draw_spectral_estimate(const HermitianMatrix& s0, std::size_t k, Rng& rng) {
  return spectral_matrix(draw_eigencoefficients(s0, k, rng));
}

}  // namespace speccoh
