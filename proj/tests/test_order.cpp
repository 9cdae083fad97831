#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spdmeans/means.hpp"
#include "spdmeans/order_checks.hpp"
#include "test_support.hpp"

using namespace spdmeans;
using namespace spdmeans::test;

TEST_CASE("log majorization on frozen diagonal examples") {
  const SpdMatrix x(diag2(2.0, 2.0));
  const SpdMatrix y(diag2(4.0, 1.0));
  const MajorizationVerdict ok = log_majorizes(x, y, false);
  CHECK(ok.holds);  // 2 <= 4 and 4 == 4
  CHECK(ok.partial_products_lhs(0) == doctest::Approx(2.0));
  CHECK(ok.partial_products_rhs(0) == doctest::Approx(4.0));
  CHECK(ok.partial_products_lhs(1) == doctest::Approx(4.0));
  CHECK(ok.det_log_gap == doctest::Approx(0.0));

  const MajorizationVerdict bad = log_majorizes(SpdMatrix(diag2(3.0, 1.0)),
                                                SpdMatrix(diag2(2.0, 2.0)), false);
  CHECK_FALSE(bad.holds);  // fails at k=1: 3 > 2
  CHECK(bad.worst_margin == doctest::Approx(std::log(2.0) - std::log(3.0)));
}

TEST_CASE("log majorization is reflexive with zero margin") {
  const SpdMatrix x = random_spd(4, 300.0, 40);
  const MajorizationVerdict v = log_majorizes(x, x, false);
  CHECK(v.holds);
  CHECK(std::abs(v.worst_margin) < 1e-14);
}

TEST_CASE("weak log majorization drops the determinant constraint") {
  const SpdMatrix x(diag2(1.0, 1.0));
  const SpdMatrix y(diag2(4.0, 1.0));
  CHECK_FALSE(log_majorizes(x, y, false).holds);  // determinants differ
  CHECK(log_majorizes(x, y, true).holds);
}

TEST_CASE("contraction equivalence on frozen scalar cases") {
  // A = B = I/2: both sides hold
  const SpdMatrix half(0.5 * Matrix::Identity(2, 2));
  const EquivalenceReport both_true = check_contraction_equivalence(half, half, 0.5);
  CHECK(both_true.lhs_holds);
  CHECK(both_true.rhs_holds);
  CHECK(both_true.agree);

  // A = B = 2I: both sides fail
  const SpdMatrix twice(2.0 * Matrix::Identity(2, 2));
  const EquivalenceReport both_false = check_contraction_equivalence(twice, twice, 0.5);
  CHECK_FALSE(both_false.lhs_holds);
  CHECK_FALSE(both_false.rhs_holds);
  CHECK(both_false.agree);
}

TEST_CASE("contraction equivalence agrees across signs of t on random input") {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const SpdMatrix a = random_spd(2 + seed % 4, 50.0, 1000 + seed);
    const SpdMatrix b_raw = random_spd(2 + seed % 4, 50.0, 2000 + seed);
    const double c = std::pow(10.0, static_cast<double>(seed % 5) - 2.0);
    const SpdMatrix b(c * b_raw.entries());
    for (double t : {-0.5, 0.25, 0.5, 0.75, 1.5}) {
      const EquivalenceReport r = check_contraction_equivalence(a, b, t);
      CHECK(r.agree);
    }
  }
}

TEST_CASE("amplification implication on frozen scalars") {
  // A = B = I/2, t = 1/2: the hypothesis holds and (1/2)^p stays below one
  const SpdMatrix half(0.5 * Matrix::Identity(1, 1));
  constexpr double powers[] = {1.0, 2.0, 4.0};
  const ImplicationReport r = check_ando_hiai_implication(half, half, 0.5, powers);
  CHECK(r.hypothesis_holds);
  CHECK(r.conclusion_holds);

  // boundary: scalar ones give equality everywhere
  const SpdMatrix one = scalar_matrix(1.0);
  const ImplicationReport eq = check_ando_hiai_implication(one, one, 0.5, powers);
  CHECK(eq.hypothesis_holds);
  CHECK(eq.conclusion_holds);
}

TEST_CASE("amplification implication via constructive scaling") {
  constexpr double powers[] = {1.0, 1.5, 2.0, 4.0};
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int dim = 2 + static_cast<int>(seed % 3);
    const SpdMatrix a = random_spd(dim, 30.0, 3000 + seed);
    const SpdMatrix b_raw = random_spd(dim, 30.0, 4000 + seed);
    const double t = 0.1 + 0.1 * static_cast<double>(seed % 9);
    // scale B down until the hypothesis holds
    const SpdMatrix m = f_mean(inverse(a), b_raw, t);
    const Matrix w_inv_root = spectral_power_matrix(a, 1.0 - t);
    const SpdMatrix conj(w_inv_root * m.entries() * w_inv_root);
    const double c = 0.999 * std::pow(1.0 / conj.lambda_max(), 1.0 / t);
    const ImplicationReport r =
        check_ando_hiai_implication(a, SpdMatrix(c * b_raw.entries()), t, powers);
    REQUIRE(r.hypothesis_holds);
    CHECK(r.conclusion_holds);
  }
}

TEST_CASE("fixed point characterization") {
  // t = 1: the partner is the identity
  const SpdMatrix a = random_spd(3, 20.0, 50);
  const FixedPointReport r1 = check_fixed_point(a, 1.0);
  CHECK(r1.rel_residual < 1e-9);
  CHECK(r1.holds);

  // t = 1/2: the partner is A itself
  const FixedPointReport r2 = check_fixed_point(a, 0.5);
  CHECK(r2.rel_residual < 1e-9);
  CHECK(r2.holds);

  // random t: equality within tolerance, perturbation visibly breaks it
  const FixedPointReport r3 = check_fixed_point(a, 0.3);
  CHECK(r3.rel_residual <= 1e-9);
  CHECK(r3.perturbed_rel_residual > 1e-8);
  CHECK(r3.holds);

  CHECK_THROWS_AS(check_fixed_point(a, 0.0), InvalidParameter);
}

TEST_CASE("inverse bound corollary") {
  // scalar boundary case at t = 1: hypotheses hold with equality
  const SpdMatrix half = scalar_matrix(0.5);
  const SpdMatrix one = scalar_matrix(1.0);
  const ImplicationReport r = check_inverse_bound(half, one, 1.0);
  CHECK(r.hypothesis_holds);
  CHECK(r.conclusion_holds);  // 1 <= 2

  const ImplicationReport eq = check_inverse_bound(one, one, 1.0);
  CHECK(eq.hypothesis_holds);
  CHECK(eq.conclusion_holds);

  // at t < 1 the same pair fails the hypothesis and the check records a skip
  const ImplicationReport skip = check_inverse_bound(half, one, 0.5);
  CHECK(skip.skipped);

  // constructive sampler: scale B down until the hypothesis holds
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int dim = 2 + static_cast<int>(seed % 3);
    const SpdMatrix raw = random_spd(dim, 50.0, 5000 + seed);
    const SpdMatrix a(raw.entries() / (raw.lambda_max() * 1.02));
    const SpdMatrix b_raw = random_spd(dim, 50.0, 6000 + seed);
    const double t = 0.1 + 0.1 * static_cast<double>(seed % 9);
    const SpdMatrix f = f_mean(a, b_raw, t);
    const Matrix w_inv_root = spectral_power_matrix(a, t - 1.0);
    const SpdMatrix conj(w_inv_root * f.entries() * w_inv_root);
    const double c = 0.999 * std::pow(1.0 / conj.lambda_max(), 1.0 / t);
    const ImplicationReport cr = check_inverse_bound(a, SpdMatrix(c * b_raw.entries()), t);
    REQUIRE(cr.hypothesis_holds);
    CHECK(cr.conclusion_holds);
  }
}

TEST_CASE("operator norm bound") {
  const SpdMatrix a = random_spd(3, 100.0, 60);
  const NormBoundReport self = check_norm_bound(a, a, 0.4);
  CHECK(self.mean_norm == doctest::Approx(self.bound).epsilon(1e-10));
  CHECK(self.holds);

  // scalars achieve the bound exactly
  const NormBoundReport scalar = check_norm_bound(scalar_matrix(3.0), scalar_matrix(5.0), 0.25);
  CHECK(scalar.mean_norm == doctest::Approx(scalar.bound).epsilon(1e-12));

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const SpdMatrix x = random_spd(2 + seed % 5, 1000.0, 7000 + seed);
    const SpdMatrix y = random_spd(2 + seed % 5, 1000.0, 8000 + seed);
    for (double t : {0.0, 0.3, 0.5, 0.8, 1.0}) {
      CHECK(check_norm_bound(x, y, t).holds);
    }
  }
}

TEST_CASE("trace inequality with formula agreement") {
  // scalar equality case
  const TraceBoundReport scalar =
      check_trace_inequality(scalar_matrix(1.0), scalar_matrix(4.0), 0.5);
  CHECK(scalar.trace_mean == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(scalar.bound == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(scalar.holds);

  const SpdMatrix a = random_spd(4, 500.0, 70);
  const TraceBoundReport self = check_trace_inequality(a, a, 0.7);
  CHECK(self.trace_mean == doctest::Approx(a.trace()).epsilon(1e-9));
  CHECK(self.holds);

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const SpdMatrix x = random_spd(2 + seed % 5, 1000.0, 9000 + seed);
    const SpdMatrix y = random_spd(2 + seed % 5, 1000.0, 10000 + seed);
    for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      const TraceBoundReport r = check_trace_inequality(x, y, t);
      CHECK(r.holds);
      CHECK(r.formula_rel_gap <= 1e-10);
    }
  }
}

TEST_CASE("log majorization chain") {
  // commuting inputs: every quantity equals the power mean, margins vanish
  const auto [ca, cb] = commuting_pair(3, 80);
  const MajorizationChainReport commuting = check_log_majorization_chain(ca, cb, 0.7, 0.7);
  CHECK(commuting.all_hold);
  for (const auto& [name, verdict] : commuting.links) {
    if (name.find("weak") == std::string::npos) {
      // strict links collapse to the power mean; the weak link keeps a real gap
      CHECK(std::abs(verdict.worst_margin) < 1e-9);
    } else {
      CHECK(verdict.worst_margin >= -1e-9);
    }
  }

  // identical inputs: equalities throughout
  const SpdMatrix a = random_spd(3, 100.0, 81);
  CHECK(check_log_majorization_chain(a, a, 0.6, 0.4).all_hold);

  // random pairs across the (t, z) grid; condition capped so the sandwiched
  // quantity's powers (up to 1/z) stay clear of the positive-definiteness gate
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (const auto& [t, z] :
         {std::pair{0.3, 0.1}, {0.5, 0.5}, {0.75, 0.75}, {0.9, 0.6}, {1.0, 1.0}}) {
      const double cond_cap = std::min(1000.0, std::pow(10.0, 10.0 * z));
      const SpdMatrix x = random_spd(2 + seed % 5, cond_cap, 11000 + seed);
      const SpdMatrix y = random_spd(2 + seed % 5, cond_cap, 12000 + seed);
      CHECK(check_log_majorization_chain(x, y, t, z).all_hold);
    }
  }

  CHECK_THROWS_AS(check_log_majorization_chain(a, a, 0.5, 0.7), InvalidParameter);
  CHECK_THROWS_AS(check_log_majorization_chain(a, a, 1.2, 0.5), InvalidParameter);
}

TEST_CASE("trace ordering chain on the upper half of the weight range") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SpdMatrix a = random_spd(2 + seed % 5, 1000.0, 13000 + seed);
    const SpdMatrix b = random_spd(2 + seed % 5, 1000.0, 14000 + seed);
    for (double t : {0.5, 0.7, 0.9, 1.0}) {
      const double tr_f = f_mean(a, b, t).trace();
      const double tr_q = renyi_quantity(a, b, t, t).trace();
      const double tr_s = spectral_geometric_mean(a, b, t).trace();
      const double tr_w = wasserstein_mean(a, b, t).trace();
      const double tr_m = arithmetic_mean(a, b, t).trace();
      CHECK(tr_f <= tr_q * (1.0 + 1e-10));
      CHECK(tr_q <= tr_s * (1.0 + 1e-10));
      CHECK(tr_s <= tr_w * (1.0 + 1e-10));
      CHECK(tr_w <= tr_m * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("sandwiched trace form equals the defining trace") {
  const SpdMatrix a = random_spd(4, 200.0, 90);
  const SpdMatrix b = random_spd(4, 200.0, 91);
  for (double t : {0.1, 0.5, 0.9}) {
    CHECK(f_mean(a, b, t).trace() ==
          doctest::Approx(f_mean_trace_form(a, b, t)).epsilon(1e-11));
  }
}
