#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "../support/risk_oracle.hpp"
#include "speccoh/shrink_precision.hpp"

using namespace speccoh;

namespace {

TraceSet traces_of_diag(std::initializer_list<double> eig) {
  TraceSet t;
  for (double v : eig) {
    t.tr_s += v;
    t.tr_s2 += v * v;
    t.tr_sinv += 1.0 / v;
    t.tr_sinv2 += 1.0 / (v * v);
  }
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("shrink_precision");

TEST_CASE("scaled identity recovers the exact precision: alpha=0, beta=1/c") {
  for (std::size_t p : {2UL, 5UL}) {
    const double c = 2.5;
    const auto t = trace_powers(HermitianMatrix::scaled_identity(p, c));
    const auto hsp = hsp_oracle(t, p, p + 3);
    CHECK(std::abs(hsp.alpha) < 1e-12);
    CHECK(hsp.beta == doctest::Approx(1.0 / c).epsilon(1e-12));
    const auto qlp = qlp_oracle(t, p, p + 3);
    CHECK(std::abs(qlp.alpha) < 1e-12);
    CHECK(qlp.beta == doctest::Approx(1.0 / c).epsilon(1e-12));
  }
}

TEST_CASE("hsp_oracle frozen values for diag(1,2), p=2, K=4") {
  const auto sol = hsp_oracle(traces_of_diag({1.0, 2.0}), 2, 4);
  CHECK(sol.alpha == doctest::Approx(3.0 / 98.0).epsilon(1e-13));
  CHECK(sol.beta == doctest::Approx(621.0 / 882.0).epsilon(1e-13));
  CHECK(!sol.eta.has_value());
  CHECK(!sol.rho.has_value());
}

TEST_CASE("qlp_oracle frozen values") {
  // diag(1,2), p=2, K=4: c0 = 16/3, D = 106/27
  const auto sol = qlp_oracle(traces_of_diag({1.0, 2.0}), 2, 4);
  CHECK(sol.alpha == doctest::Approx(3.0 / 106.0).epsilon(1e-13));
  CHECK(sol.beta == doctest::Approx(60.0 / 106.0).epsilon(1e-13));

  // diag(1,1,4), p=3, K=6
  const auto sol3 = qlp_oracle(traces_of_diag({1.0, 1.0, 4.0}), 3, 6);
  CHECK(sol3.alpha == doctest::Approx(2.0 / 19.0).epsilon(1e-13));
  CHECK(sol3.beta == doctest::Approx(5.0 / 19.0).epsilon(1e-13));
}

TEST_CASE("K at or below p+1 is rejected") {
  const auto t = traces_of_diag({1.0, 2.0});
  CHECK_THROWS_AS(hsp_oracle(t, 2, 3), InsufficientTapers);
  CHECK_THROWS_AS(hsp_oracle(t, 2, 2), InsufficientTapers);
  CHECK_THROWS_AS(qlp_oracle(t, 2, 3), InsufficientTapers);
}

TEST_CASE("degenerate traces are rejected") {
  TraceSet bad = traces_of_diag({1.0, 2.0});
  bad.tr_sinv = 0.0;
  CHECK_THROWS_AS(hsp_oracle(bad, 2, 4), DegenerateTraces);
  CHECK_THROWS_AS(qlp_oracle(bad, 2, 4), DegenerateTraces);
}

TEST_CASE("apply_precision_affine basics") {
  HermitianMatrix s(2);
  s.set(0, 0, 2.0);
  s.set(1, 1, 4.0);

  ShrinkageSolution sol;
  sol.alpha = 0.0;
  sol.beta = 2.0;
  auto out = apply_precision_affine(s, sol);
  CHECK(out(0, 0).real() == doctest::Approx(2.0));
  CHECK(out(1, 1).real() == doctest::Approx(2.0));

  sol.alpha = 1.0;
  sol.beta = 0.0;
  out = apply_precision_affine(s, sol);
  CHECK(out(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(out(1, 1).real() == doctest::Approx(0.25).epsilon(1e-14));

  s.set(0, 0, 1.0);
  s.set(1, 1, 2.0);
  sol.alpha = 0.5;
  sol.beta = 0.1;
  out = apply_precision_affine(s, sol);
  CHECK(out(0, 0).real() == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(out(1, 1).real() == doctest::Approx(0.35).epsilon(1e-14));
}

TEST_CASE("alpha is a sphericity statistic: zero iff scaled identity") {
  Rng rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = 2 + static_cast<std::size_t>(rng.next_u64() % 3);
    const auto s = testsupport::random_pd(rng, p);
    const auto t = trace_powers(s);
    // random_pd output is almost surely non-spherical
    CHECK(hsp_oracle(t, p, p + 3).alpha > 0.0);
    CHECK(qlp_oracle(t, p, p + 3).alpha > 0.0);
  }
}

TEST_CASE("closed forms sit at the zero-gradient point of the empirical risks") {
  Rng rng(22001177);
  for (int trial = 0; trial < 3; ++trial) {
    const std::size_t p = 2 + static_cast<std::size_t>(trial);
    const std::size_t k = p + 3;
    const auto s = testsupport::random_pd(rng, p);
    const auto t = trace_powers(s);
    const auto reps =
        testsupport::draw_replicates(s, k, 150000, 7331 + static_cast<std::uint64_t>(trial));
    const auto rt = testsupport::collect_replicate_traces(reps, s);

    const auto hsp = hsp_oracle(t, p, k);
    const auto [hsp_ga, hsp_gb] = testsupport::hs_precision_gradient(rt, hsp.alpha, hsp.beta);
    CHECK(hsp_ga.consistent_with_zero(4.0));
    CHECK(hsp_gb.consistent_with_zero(4.0));

    const auto qlp = qlp_oracle(t, p, k);
    const auto [qlp_ga, qlp_gb] = testsupport::ql_precision_gradient(rt, qlp.alpha, qlp.beta);
    CHECK(qlp_ga.consistent_with_zero(4.0));
    CHECK(qlp_gb.consistent_with_zero(4.0));
  }
}

TEST_SUITE_END();
