#pragma once

// Test-only oracles, deliberately independent of the library's Cholesky
// path: Gauss-Jordan inversion with partial pivoting and a two-sided Jacobi
// eigenvalue solver for Hermitian matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "speccoh/hermitian.hpp"
#include "speccoh/matrix.hpp"
#include "speccoh/rng.hpp"

namespace testsupport {

using speccoh::Complex;
using speccoh::ComplexMatrix;
using speccoh::HermitianMatrix;

inline ComplexMatrix gauss_inverse(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("gauss_inverse: not square");
  const std::size_t n = a.rows();
  ComplexMatrix work = a;
  ComplexMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    if (std::abs(work(pivot, col)) < 1e-300) throw std::runtime_error("gauss_inverse: singular");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Complex d = work(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      work(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = work(r, col);
      if (f == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        work(r, c) -= f * work(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

// Eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.to_complex();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-13; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double r = std::abs(a(i, j));
        if (r < 1e-300) continue;
        const double phi = std::arg(a(i, j));
        const double tau = (a(j, j).real() - a(i, i).real()) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        ComplexMatrix v(n, n);
        for (std::size_t d = 0; d < n; ++d) v(d, d) = 1.0;
        v(i, i) = c;
        v(i, j) = s;
        v(j, i) = -s * std::exp(Complex(0.0, -phi));
        v(j, j) = c * std::exp(Complex(0.0, -phi));
        a = multiply(adjoint(v), multiply(a, v));
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

// Random Hermitian positive definite matrix: A A^H / p + ridge I.
inline HermitianMatrix random_pd(speccoh::Rng& rng, std::size_t p, double ridge = 0.25) {
  ComplexMatrix a(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) a(i, j) = rng.next_complex_normal();
  HermitianMatrix s(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < p; ++k) acc += a(i, k) * std::conj(a(j, k));
      s.set(i, j, acc / static_cast<double>(p));
    }
  }
  return speccoh::affine_with_identity(s, 1.0, ridge);
}

// Real positive diagonal congruence D S D.
inline HermitianMatrix diagonal_congruence(const HermitianMatrix& s,
                                           const std::vector<double>& d) {
  HermitianMatrix out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i; j < s.dim(); ++j) out.set(i, j, d[i] * s(i, j) * d[j]);
  return out;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace testsupport
