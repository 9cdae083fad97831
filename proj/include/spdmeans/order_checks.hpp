#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spdmeans/linalg.hpp"
#include "spdmeans/majorization.hpp"
#include "spdmeans/types.hpp"

namespace spdmeans {

/// Two-sided evaluation of: f_mean(A,B,t) <= I  iff  (A^{1/2} B A^{1/2})^t <= A^{2t-1},
/// valid for every real t. Margins are the smallest eigenvalues of the
/// respective differences; the contract is that the flags agree on every input.
struct EquivalenceReport {
  bool lhs_holds = false;
  bool rhs_holds = false;
  bool agree = false;
  double lhs_margin = 0.0;
  double rhs_margin = 0.0;
};
EquivalenceReport check_contraction_equivalence(const SpdMatrix& a, const SpdMatrix& b, double t,
                                                double tol = kDefaultOrderTol);

struct ImplicationReport {
  bool hypothesis_holds = false;
  bool skipped = false;  // hypothesis failed; conclusion not asserted
  bool conclusion_holds = false;
  double hypothesis_margin = 0.0;
  double conclusion_margin = 0.0;  // worst margin over the asserted conclusions
};

/// f_mean(A^{-1}, B, t) <= A^{2(t-1)}  implies  A^p #_t B^p <= I for p >= 1
/// (Ando-Hiai style amplification). Conclusion checked for each listed power.
ImplicationReport check_ando_hiai_implication(const SpdMatrix& a, const SpdMatrix& b, double t,
                                              std::span<const double> powers,
                                              double tol = kDefaultOrderTol);

/// f_mean(A,B,t) <= A^{2-2t} together with A <= I implies B <= A^{-1},
/// t in (0,1].
ImplicationReport check_inverse_bound(const SpdMatrix& a, const SpdMatrix& b, double t,
                                      double tol = kDefaultOrderTol);

/// f_mean(A, A^{1/t - 1}, t) equals A^{2-2t}, and perturbing the second
/// argument destroys the equality. t in (0,1].
struct FixedPointReport {
  double rel_residual = 0.0;
  double perturbed_rel_residual = 0.0;
  bool holds = false;
};
FixedPointReport check_fixed_point(const SpdMatrix& a, double t, double tol = 1e-9);

/// ||f_mean(A,B,t)||_op <= ||A||^{1-t} ||B||^t with relative slack.
struct NormBoundReport {
  double mean_norm = 0.0;
  double bound = 0.0;
  double rel_margin = 0.0;  // (bound - mean_norm) / bound
  bool holds = false;
};
NormBoundReport check_norm_bound(const SpdMatrix& a, const SpdMatrix& b, double t,
                                 double slack = 1e-10);

/// tr f_mean(A,B,t) <= (tr A)^{1-t} (tr B)^t, plus agreement between the
/// defining composition and the sandwiched trace formula
/// tr[A^{1/2-t} (A^{1/2} B A^{1/2})^t A^{1/2-t}].
struct TraceBoundReport {
  double trace_mean = 0.0;
  double bound = 0.0;
  double rel_margin = 0.0;
  double formula_rel_gap = 0.0;
  bool holds = false;
};
TraceBoundReport check_trace_inequality(const SpdMatrix& a, const SpdMatrix& b, double t,
                                        double slack = 1e-10);

/// Evaluates tr[A^{1/2-t} (A^{1/2} B A^{1/2})^t A^{1/2-t}] directly; exposed
/// as the independent trace route used by the divergence tests.
double f_mean_trace_form(const SpdMatrix& a, const SpdMatrix& b, double t);

/// Per-link verdicts for the ordering chain
///   f_mean <  renyi(t,z)                  (0 < z <= t <= 1, strict log-majorization)
///   renyi(t,t) < spectral geometric mean  (t in [1/2,1], strict)
///   spectral geometric < wasserstein mean (t in [1/2,1], weak)
struct MajorizationChainReport {
  std::vector<std::pair<std::string, MajorizationVerdict>> links;
  bool all_hold = false;
};
MajorizationChainReport check_log_majorization_chain(const SpdMatrix& a, const SpdMatrix& b,
                                                     double t, double z,
                                                     double tol = kDefaultMajorizationTol);

}  // namespace spdmeans
