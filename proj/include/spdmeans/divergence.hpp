#pragma once

#include <span>

#include "spdmeans/types.hpp"

namespace spdmeans {

/// tr[(1-t)A + tB] - tr f_mean(A,B,t). Nonnegative by the trace inequality;
/// values inside the clamp window [-1e-10 * (trA + trB), 0) round to zero,
/// anything more negative raises NegativityViolation (it would mean a bug,
/// not rounding).
struct DivergenceValue {
  double value = 0.0;
  double t = 0.0;
};
DivergenceValue divergence(const SpdMatrix& a, const SpdMatrix& b, double t);

/// Gradient of the divergence in its second argument, t in (0,1):
/// tI - A^{1/2} D(S^t)[A^{1-2t}] A^{1/2} with S = A^{1/2} B A^{1/2} and D the
/// (self-adjoint) Daleckii-Krein derivative map. Vanishes at B = A.
HermitianMatrix divergence_gradient(const SpdMatrix& a, const SpdMatrix& b, double t);

/// Second directional derivative s -> divergence(A, B + sY) at s = 0 by
/// central second differences with step 1e-4 * (1 + ||B||_F).
double divergence_hessian_quadform(const SpdMatrix& a, const SpdMatrix& b, double t,
                                   const HermitianMatrix& y);

/// Invariance of the divergence under unitary congruence and under tensoring
/// both arguments with a density matrix.
struct InvarianceReport {
  double unitary_rel_gap = 0.0;
  double tensor_rel_gap = 0.0;
  bool holds = false;
};
InvarianceReport check_divergence_invariance(const SpdMatrix& a, const SpdMatrix& b, double t,
                                             const Matrix& unitary, const SpdMatrix& density,
                                             double tol = 1e-9);

/// Concavity of X -> tr f_mean(A, X, t) along segments, with a strict gap
/// whenever the endpoints are separated.
struct ConcavityReport {
  double min_gap = 0.0;
  double min_strict_gap = 0.0;
  long checked = 0;
  bool holds = false;
};
ConcavityReport check_trace_concavity(const SpdMatrix& a, const SpdMatrix& x, const SpdMatrix& y,
                                      double t, std::span<const double> lambdas,
                                      double tol = 1e-10);

/// Aggregate of the divergence-axiom sweeps run by the verification suite.
struct AxiomReport {
  double nonnegativity_margin = 0.0;        // min of value / scale over samples
  double identity_gap = 0.0;                // max divergence(A, A)
  double gradient_norm_on_diagonal = 0.0;   // max ||grad(A,A)||_F / m
  double min_hessian_quadform = 0.0;        // min quadform / ||Y||_F^2 at B = A
  long samples = 0;
};

}  // namespace spdmeans
