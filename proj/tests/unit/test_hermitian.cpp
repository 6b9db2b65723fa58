#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "speccoh/hermitian.hpp"
#include "speccoh/matrix.hpp"
#include "speccoh/rng.hpp"

using namespace speccoh;
using testsupport::rel_err;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

HermitianMatrix herm2(double a, Complex b, double d) {
  HermitianMatrix m(2);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 1, d);
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("hermitian");

TEST_CASE("make_hermitian accepts an already Hermitian matrix unchanged") {
  const auto m = make_hermitian(mat2(2.0, {1.0, 1.0}, {1.0, -1.0}, 3.0));
  CHECK(m(0, 0) == Complex{2.0, 0.0});
  CHECK(m(0, 1) == Complex{1.0, 1.0});
  CHECK(m(1, 0) == Complex{1.0, -1.0});
  CHECK(m(1, 1) == Complex{3.0, 0.0});
}

TEST_CASE("make_hermitian rejects clearly asymmetric input") {
  CHECK_THROWS_AS(make_hermitian(mat2(1.0, 5.0, 0.0, 1.0)), TooAsymmetric);
}

TEST_CASE("make_hermitian zeroes a tiny imaginary diagonal") {
  const auto m = make_hermitian(mat2(Complex(1.0, 1e-15), 0.0, 0.0, 2.0));
  CHECK(m(0, 0).imag() == 0.0);
  CHECK(m(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("make_hermitian rejects non-square input") {
  CHECK_THROWS_AS(make_hermitian(ComplexMatrix(2, 3)), NonSquare);
}

TEST_CASE("invert on diagonal and identity matrices") {
  const auto inv = invert(herm2(1.0, 0.0, 2.0));
  CHECK(inv(0, 0).real() == doctest::Approx(1.0));
  CHECK(inv(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(inv(0, 1)) == 0.0);

  const auto id = invert(HermitianMatrix::identity(4));
  for (std::size_t i = 0; i < 4; ++i) CHECK(id(i, i).real() == doctest::Approx(1.0));
}

TEST_CASE("invert matches the 2x2 closed form") {
  const auto inv = invert(herm2(2.0, 1.0, 2.0));
  CHECK(inv(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(inv(0, 1).real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(inv(1, 1).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("invert reports indefinite and singular input") {
  CHECK_THROWS_AS(invert(herm2(1.0, 2.0, 1.0)), NotPositiveDefinite);  // eigenvalues -1, 3
  CHECK_THROWS_AS(invert(HermitianMatrix(3)), NotPositiveDefinite);    // all zeros
}

TEST_CASE("trace_powers on frozen examples") {
  const auto t = trace_powers(herm2(1.0, 0.0, 2.0));
  CHECK(t.tr_s == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(t.tr_s2 == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(t.tr_sinv == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(t.tr_sinv2 == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(t.provenance == Provenance::Oracle);

  // c * I_p
  const double c = 2.5;
  const auto ti = trace_powers(HermitianMatrix::scaled_identity(4, c));
  CHECK(ti.tr_s == doctest::Approx(4 * c).epsilon(1e-14));
  CHECK(ti.tr_s2 == doctest::Approx(4 * c * c).epsilon(1e-14));
  CHECK(ti.tr_sinv == doctest::Approx(4 / c).epsilon(1e-12));
  CHECK(ti.tr_sinv2 == doctest::Approx(4 / (c * c)).epsilon(1e-12));

  // [[2,1],[1,2]] has eigenvalues {1, 3}
  const auto tb = trace_powers(herm2(2.0, 1.0, 2.0));
  CHECK(tb.tr_s == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(tb.tr_s2 == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(tb.tr_sinv == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(tb.tr_sinv2 == doctest::Approx(10.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("random PD properties: double inversion, trace consistency, Cauchy-Schwarz") {
  Rng rng(20240811);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t p = 2 + static_cast<std::size_t>(rng.next_u64() % 5);
    const auto s = testsupport::random_pd(rng, p);
    const auto t = trace_powers(s);
    const double pd = static_cast<double>(p);

    CHECK(pd * t.tr_s2 >= t.tr_s * t.tr_s * (1.0 - 1e-12));
    CHECK(pd * t.tr_sinv2 >= t.tr_sinv * t.tr_sinv * (1.0 - 1e-12));

    const auto sinv = invert(s);
    CHECK(rel_err(trace_real(sinv), t.tr_sinv) < 1e-10);

    const auto back = invert(sinv);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        CHECK(std::abs(back(i, j) - s(i, j)) <= 1e-8 * std::abs(s(i, i)));
  }
}

TEST_CASE("invert and trace_powers agree with independent oracles") {
  Rng rng(777001);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = 2 + static_cast<std::size_t>(rng.next_u64() % 4);
    const auto s = testsupport::random_pd(rng, p);

    // Gauss-Jordan route for the inverse.
    const auto inv = invert(s);
    const auto oracle_inv = testsupport::gauss_inverse(s.to_complex());
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        CHECK(std::abs(inv(i, j) - oracle_inv(i, j)) < 1e-9);

    // Eigenvalue route for all four trace functionals.
    const auto eig = testsupport::jacobi_eigenvalues(s);
    double e1 = 0, e2 = 0, em1 = 0, em2 = 0;
    for (double v : eig) {
      e1 += v;
      e2 += v * v;
      em1 += 1.0 / v;
      em2 += 1.0 / (v * v);
    }
    const auto t = trace_powers(s);
    CHECK(rel_err(t.tr_s, e1) < 1e-9);
    CHECK(rel_err(t.tr_s2, e2) < 1e-9);
    CHECK(rel_err(t.tr_sinv, em1) < 1e-9);
    CHECK(rel_err(t.tr_sinv2, em2) < 1e-9);
  }
}

TEST_SUITE_END();
