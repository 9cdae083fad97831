#include "spdmeans/order_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spdmeans/means.hpp"

namespace spdmeans {

namespace {

double order_threshold(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  return tol * (1.0 + a.operator_norm() + b.operator_norm());
}

}  // namespace

EquivalenceReport check_contraction_equivalence(const SpdMatrix& a, const SpdMatrix& b, double t,
                                                double tol) {
  const HermitianMatrix identity = HermitianMatrix::Identity(a.dim());

  const SpdMatrix f = f_mean(a, b, t);
  EquivalenceReport r;
  r.lhs_margin = loewner_margin(f.hermitian(), identity);
  r.lhs_holds = r.lhs_margin >= -order_threshold(f.hermitian(), identity, tol);

  const Matrix root = spectral_power_matrix(a, 0.5);
  const SpdMatrix sandwich(root * b.entries() * root);
  const HermitianMatrix lhs_pow(spectral_power_matrix(sandwich, t));
  const HermitianMatrix rhs_pow(spectral_power_matrix(a, 2.0 * t - 1.0));
  r.rhs_margin = loewner_margin(lhs_pow, rhs_pow);
  r.rhs_holds = r.rhs_margin >= -order_threshold(lhs_pow, rhs_pow, tol);

  r.agree = (r.lhs_holds == r.rhs_holds);
  return r;
}

ImplicationReport check_ando_hiai_implication(const SpdMatrix& a, const SpdMatrix& b, double t,
                                              std::span<const double> powers, double tol) {
  ImplicationReport r;
  const SpdMatrix f = f_mean(inverse(a), b, t);
  const HermitianMatrix target(spectral_power_matrix(a, 2.0 * (t - 1.0)));
  r.hypothesis_margin = loewner_margin(f.hermitian(), target);
  r.hypothesis_holds = r.hypothesis_margin >= -order_threshold(f.hermitian(), target, tol);
  if (!r.hypothesis_holds) {
    r.skipped = true;
    return r;
  }
  const HermitianMatrix identity = HermitianMatrix::Identity(a.dim());
  r.conclusion_holds = true;
  r.conclusion_margin = std::numeric_limits<double>::infinity();
  for (double p : powers) {
    if (!(p >= 1.0)) {
      throw InvalidParameter("check_ando_hiai_implication: powers must be >= 1");
    }
    const SpdMatrix amplified =
        metric_geometric_mean(spectral_power(a, p), spectral_power(b, p), t);
    const double margin = loewner_margin(amplified.hermitian(), identity);
    r.conclusion_margin = std::min(r.conclusion_margin, margin);
    if (margin < -order_threshold(amplified.hermitian(), identity, tol)) {
      r.conclusion_holds = false;
    }
  }
  return r;
}

ImplicationReport check_inverse_bound(const SpdMatrix& a, const SpdMatrix& b, double t,
                                      double tol) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw InvalidParameter("check_inverse_bound: t must lie in (0,1]");
  }
  ImplicationReport r;
  const HermitianMatrix identity = HermitianMatrix::Identity(a.dim());

  const SpdMatrix f = f_mean(a, b, t);
  const HermitianMatrix target(spectral_power_matrix(a, 2.0 - 2.0 * t));
  const double margin_f = loewner_margin(f.hermitian(), target);
  const double margin_a = loewner_margin(a.hermitian(), identity);
  r.hypothesis_margin = std::min(margin_f, margin_a);
  r.hypothesis_holds = margin_f >= -order_threshold(f.hermitian(), target, tol) &&
                       margin_a >= -order_threshold(a.hermitian(), identity, tol);
  if (!r.hypothesis_holds) {
    r.skipped = true;
    return r;
  }
  const HermitianMatrix inv_a(spectral_power_matrix(a, -1.0));
  r.conclusion_margin = loewner_margin(b.hermitian(), inv_a);
  r.conclusion_holds = r.conclusion_margin >= -order_threshold(b.hermitian(), inv_a, tol);
  return r;
}

FixedPointReport check_fixed_point(const SpdMatrix& a, double t, double tol) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw InvalidParameter("check_fixed_point: t must lie in (0,1]");
  }
  const SpdMatrix b = spectral_power(a, 1.0 / t - 1.0);
  const Matrix target = spectral_power_matrix(a, 2.0 - 2.0 * t);
  const double target_norm = target.norm();

  FixedPointReport r;
  r.rel_residual = (f_mean(a, b, t).entries() - target).norm() / target_norm;

  const SpdMatrix perturbed(b.entries() + 0.1 * Matrix::Identity(a.dim(), a.dim()));
  r.perturbed_rel_residual = (f_mean(a, perturbed, t).entries() - target).norm() / target_norm;

  r.holds = r.rel_residual <= tol && r.perturbed_rel_residual > 10.0 * tol;
  return r;
}

NormBoundReport check_norm_bound(const SpdMatrix& a, const SpdMatrix& b, double t, double slack) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidParameter("check_norm_bound: t must lie in [0,1]");
  }
  NormBoundReport r;
  r.mean_norm = f_mean(a, b, t).operator_norm();
  r.bound = std::pow(a.operator_norm(), 1.0 - t) * std::pow(b.operator_norm(), t);
  r.rel_margin = (r.bound - r.mean_norm) / r.bound;
  r.holds = r.mean_norm <= r.bound * (1.0 + slack);
  return r;
}

double f_mean_trace_form(const SpdMatrix& a, const SpdMatrix& b, double t) {
  const Matrix root = spectral_power_matrix(a, 0.5);
  const SpdMatrix sandwich(root * b.entries() * root);
  const Matrix outer = spectral_power_matrix(a, 0.5 - t);
  return (outer * spectral_power_matrix(sandwich, t) * outer).trace().real();
}

TraceBoundReport check_trace_inequality(const SpdMatrix& a, const SpdMatrix& b, double t,
                                        double slack) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidParameter("check_trace_inequality: t must lie in [0,1]");
  }
  TraceBoundReport r;
  r.trace_mean = f_mean(a, b, t).trace();
  r.bound = std::pow(a.trace(), 1.0 - t) * std::pow(b.trace(), t);
  r.rel_margin = (r.bound - r.trace_mean) / r.bound;
  const double via_formula = f_mean_trace_form(a, b, t);
  r.formula_rel_gap = std::abs(r.trace_mean - via_formula) / std::abs(via_formula);
  r.holds = r.trace_mean <= r.bound * (1.0 + slack) && r.formula_rel_gap <= 1e-10;
  return r;
}

MajorizationChainReport check_log_majorization_chain(const SpdMatrix& a, const SpdMatrix& b,
                                                     double t, double z, double tol) {
  if (!(z > 0.0 && z <= t && t <= 1.0)) {
    throw InvalidParameter("check_log_majorization_chain: need 0 < z <= t <= 1");
  }
  MajorizationChainReport r;
  const SpdMatrix f = f_mean(a, b, t);
  r.links.emplace_back("f_mean_below_renyi",
                       log_majorizes(f, renyi_quantity(a, b, t, z), /*weak=*/false, tol));
  if (t >= 0.5) {
    const SpdMatrix sandwiched = renyi_quantity(a, b, t, t);
    const SpdMatrix spectral = spectral_geometric_mean(a, b, t);
    r.links.emplace_back("f_mean_below_sandwiched_renyi",
                         log_majorizes(f, sandwiched, /*weak=*/false, tol));
    r.links.emplace_back("sandwiched_renyi_below_spectral",
                         log_majorizes(sandwiched, spectral, /*weak=*/false, tol));
    r.links.emplace_back(
        "spectral_below_wasserstein_weak",
        log_majorizes(spectral, wasserstein_mean(a, b, t), /*weak=*/true, tol));
  }
  r.all_hold = true;
  for (const auto& [name, verdict] : r.links) {
    r.all_hold = r.all_hold && verdict.holds;
  }
  return r;
}

}  // namespace spdmeans
