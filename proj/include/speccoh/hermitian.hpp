#pragma once

// Complex Hermitian matrix value type plus the dense kernels every estimator
// consumes: Cholesky factorization, inversion and the four trace functionals
// tr{S}, tr{S^2}, tr{S^-1}, tr{S^-2}.
//
// Conjugate symmetry is exact by construction: set() writes both triangles
// and keeps the diagonal real, so downstream code never sees drift.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "speccoh/errors.hpp"
#include "speccoh/matrix.hpp"

namespace speccoh {

enum class Provenance { Oracle, Estimated };

// The four trace functionals of a positive definite matrix.
struct TraceSet {
  double tr_s = 0.0;
  double tr_s2 = 0.0;
  double tr_sinv = 0.0;
  double tr_sinv2 = 0.0;
  Provenance provenance = Provenance::Oracle;
};

inline bool traces_valid(const TraceSet& t) {
  return std::isfinite(t.tr_s) && std::isfinite(t.tr_s2) && std::isfinite(t.tr_sinv) &&
         std::isfinite(t.tr_sinv2) && t.tr_s > 0.0 && t.tr_s2 > 0.0 && t.tr_sinv > 0.0 &&
         t.tr_sinv2 > 0.0;
}

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static HermitianMatrix identity(std::size_t dim) { return scaled_identity(dim, 1.0); }

  static HermitianMatrix scaled_identity(std::size_t dim, double c) {
    HermitianMatrix m(dim);
    for (std::size_t j = 0; j < dim; ++j) m.data_[j * dim + j] = Complex(c, 0.0);
    return m;
  }

  std::size_t dim() const { return dim_; }

  Complex operator()(std::size_t j, std::size_t k) const { return data_[j * dim_ + k]; }

  // Writes (j,k) and its conjugate mirror; diagonal imaginary parts dropped.
  void set(std::size_t j, std::size_t k, Complex v) {
    if (j == k) {
      data_[j * dim_ + j] = Complex(v.real(), 0.0);
    } else {
      data_[j * dim_ + k] = v;
      data_[k * dim_ + j] = std::conj(v);
    }
  }

  ComplexMatrix to_complex() const {
    ComplexMatrix out(dim_, dim_);
    out.data() = data_;
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

// Hermitian part (A + A^H)/2, no asymmetry check. Internal builder for
// products that are Hermitian analytically but carry float drift.
inline HermitianMatrix hermitian_part(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw NonSquare("hermitian_part: matrix not square");
  const std::size_t p = a.rows();
  HermitianMatrix out(p);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = j; k < p; ++k)
      out.set(j, k, 0.5 * (a(j, k) + std::conj(a(k, j))));
  return out;
}

// Validating constructor: accepts a square matrix whose relative asymmetry is
// at most 1e-9 and returns its Hermitian part.
inline HermitianMatrix make_hermitian(const ComplexMatrix& raw) {
  if (raw.rows() != raw.cols()) throw NonSquare("make_hermitian: input not square");
  const std::size_t p = raw.rows();
  double asym = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < p; ++k) {
      scale = std::max(scale, std::abs(raw(j, k)));
      asym = std::max(asym, std::abs(raw(j, k) - std::conj(raw(k, j))));
    }
  }
  const double floor = std::numeric_limits<double>::min();
  if (asym > 1e-9 * std::max(scale, floor))
    throw TooAsymmetric("make_hermitian: relative asymmetry above 1e-9");
  return hermitian_part(raw);
}

// Lower-triangular L with S = L L^H. Throws NotPositiveDefinite when a pivot
// is non-positive or non-finite; no condition-number cutoff by design.
inline ComplexMatrix cholesky_factor(const HermitianMatrix& s) {
  const std::size_t p = s.dim();
  ComplexMatrix l(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    double d = s(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0) || !std::isfinite(d))
      throw NotPositiveDefinite("cholesky_factor: non-positive pivot at index " +
                                std::to_string(j));
    const double ljj = std::sqrt(d);
    l(j, j) = Complex(ljj, 0.0);
    for (std::size_t i = j + 1; i < p; ++i) {
      Complex v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k));
      l(i, j) = v / ljj;
    }
  }
  return l;
}

namespace detail {

// In-place inverse of a lower-triangular factor.
inline ComplexMatrix invert_lower(const ComplexMatrix& l) {
  const std::size_t p = l.rows();
  ComplexMatrix inv(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    inv(j, j) = Complex(1.0 / l(j, j).real(), 0.0);
    for (std::size_t i = j + 1; i < p; ++i) {
      Complex v{};
      for (std::size_t k = j; k < i; ++k) v += l(i, k) * inv(k, j);
      inv(i, j) = -v / l(i, i).real();
    }
  }
  return inv;
}

}  // namespace detail

// S^-1 via the Hermitian factorization, re-symmetrized.
inline HermitianMatrix invert(const HermitianMatrix& s) {
  const ComplexMatrix linv = detail::invert_lower(cholesky_factor(s));
  const std::size_t p = s.dim();
  // S^-1 = L^-H L^-1; accumulate the upper triangle only.
  HermitianMatrix out(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j; k < p; ++k) {
      Complex v{};
      for (std::size_t i = k; i < p; ++i) v += std::conj(linv(i, j)) * linv(i, k);
      out.set(j, k, v);
    }
  }
  return out;
}

inline double trace_real(const HermitianMatrix& s) {
  double t = 0.0;
  for (std::size_t j = 0; j < s.dim(); ++j) t += s(j, j).real();
  return t;
}

// tr{S^2} = sum |s_jk|^2 for Hermitian S.
inline double trace_square(const HermitianMatrix& s) {
  double t = 0.0;
  const std::size_t p = s.dim();
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = 0; k < p; ++k) t += std::norm(s(j, k));
  return t;
}

// Exact (oracle) trace functionals of a positive definite matrix.
inline TraceSet trace_powers(const HermitianMatrix& s) {
  TraceSet t;
  t.tr_s = trace_real(s);
  t.tr_s2 = trace_square(s);
  const HermitianMatrix sinv = invert(s);
  t.tr_sinv = trace_real(sinv);
  t.tr_sinv2 = trace_square(sinv);
  t.provenance = Provenance::Oracle;
  return t;
}

// alpha*S + beta*I, Hermitian by construction.
inline HermitianMatrix affine_with_identity(const HermitianMatrix& s, double alpha, double beta) {
  const std::size_t p = s.dim();
  HermitianMatrix out(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j; k < p; ++k) {
      Complex v = alpha * s(j, k);
      if (j == k) v += beta;
      out.set(j, k, v);
    }
  }
  return out;
}

}  // namespace speccoh
