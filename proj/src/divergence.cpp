#include "spdmeans/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spdmeans/linalg.hpp"
#include "spdmeans/means.hpp"

namespace spdmeans {

namespace {

constexpr double kClampWindow = 1e-10;

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": dimensions differ");
  }
}

}  // namespace

DivergenceValue divergence(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "divergence");
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidParameter("divergence: weight t must lie in [0,1]");
  }
  if (a.entries() == b.entries()) {
    return DivergenceValue{0.0, t};  // the mean of identical arguments is the argument
  }
  const double scale = a.trace() + b.trace();
  double value = (1.0 - t) * a.trace() + t * b.trace() - f_mean(a, b, t).trace();
  if (value < -kClampWindow * scale) {
    throw NegativityViolation("divergence evaluated to " + std::to_string(value) +
                              " below the rounding window; this indicates a defect");
  }
  value = std::max(value, 0.0);
  return DivergenceValue{value, t};
}

HermitianMatrix divergence_gradient(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "divergence_gradient");
  if (!(t > 0.0 && t < 1.0)) {
    throw InvalidParameter("divergence_gradient: t must lie in the open interval (0,1)");
  }
  const Matrix root = spectral_power_matrix(a, 0.5);
  const SpdMatrix sandwich(root * b.entries() * root);
  const HermitianMatrix weight(spectral_power_matrix(a, 1.0 - 2.0 * t));
  const HermitianMatrix dk = frechet_power_derivative(sandwich, t, weight);
  const Matrix grad_trace = root * dk.entries() * root;
  return HermitianMatrix(t * Matrix::Identity(a.dim(), a.dim()) - grad_trace);
}

double divergence_hessian_quadform(const SpdMatrix& a, const SpdMatrix& b, double t,
                                   const HermitianMatrix& y) {
  require_same_dim(a, b, "divergence_hessian_quadform");
  if (y.dim() != a.dim()) {
    throw DimensionMismatch("divergence_hessian_quadform: direction dimension differs");
  }
  if (!(t > 0.0 && t < 1.0)) {
    throw InvalidParameter("divergence_hessian_quadform: t must lie in (0,1)");
  }
  const double h = 1e-4 * (1.0 + b.frobenius_norm());
  const SpdMatrix forward(b.entries() + h * y.entries());
  const SpdMatrix backward(b.entries() - h * y.entries());
  const double center = divergence(a, b, t).value;
  return (divergence(a, forward, t).value - 2.0 * center + divergence(a, backward, t).value) /
         (h * h);
}

InvarianceReport check_divergence_invariance(const SpdMatrix& a, const SpdMatrix& b, double t,
                                             const Matrix& unitary, const SpdMatrix& density,
                                             double tol) {
  require_same_dim(a, b, "check_divergence_invariance");
  if (unitary.rows() != a.dim() || unitary.cols() != a.dim()) {
    throw DimensionMismatch("check_divergence_invariance: unitary dimension differs");
  }
  const Index m = a.dim();
  if ((unitary.adjoint() * unitary - Matrix::Identity(m, m)).norm() > 1e-12) {
    throw InvalidParameter("check_divergence_invariance: matrix is not unitary");
  }
  if (std::abs(density.trace() - 1.0) > 1e-12) {
    throw InvalidParameter("check_divergence_invariance: density matrix must have unit trace");
  }

  const double base = divergence(a, b, t).value;
  const double denom = std::max(std::abs(base), std::numeric_limits<double>::min());

  const SpdMatrix ua(unitary * a.entries() * unitary.adjoint());
  const SpdMatrix ub(unitary * b.entries() * unitary.adjoint());
  InvarianceReport r;
  r.unitary_rel_gap = std::abs(divergence(ua, ub, t).value - base) / denom;

  const SpdMatrix ta(kron(a.entries(), density.entries()));
  const SpdMatrix tb(kron(b.entries(), density.entries()));
  r.tensor_rel_gap = std::abs(divergence(ta, tb, t).value - base) / denom;

  r.holds = r.unitary_rel_gap <= tol && r.tensor_rel_gap <= tol;
  return r;
}

ConcavityReport check_trace_concavity(const SpdMatrix& a, const SpdMatrix& x, const SpdMatrix& y,
                                      double t, std::span<const double> lambdas, double tol) {
  require_same_dim(a, x, "check_trace_concavity");
  require_same_dim(a, y, "check_trace_concavity");
  if (!(t > 0.0 && t < 1.0)) {
    throw InvalidParameter("check_trace_concavity: t must lie in (0,1)");
  }
  const double fx = f_mean(a, x, t).trace();
  const double fy = f_mean(a, y, t).trace();
  const double scale = std::abs(fx) + std::abs(fy);
  const double separation_scale = x.frobenius_norm() + y.frobenius_norm();
  const bool separated = (x.entries() - y.entries()).norm() > 1e-6 * separation_scale;

  ConcavityReport r;
  r.min_gap = std::numeric_limits<double>::infinity();
  r.min_strict_gap = std::numeric_limits<double>::infinity();
  for (double lam : lambdas) {
    if (!(lam >= 0.0 && lam <= 1.0)) {
      throw InvalidParameter("check_trace_concavity: segment parameters must lie in [0,1]");
    }
    const SpdMatrix blend((1.0 - lam) * x.entries() + lam * y.entries());
    const double gap = f_mean(a, blend, t).trace() - ((1.0 - lam) * fx + lam * fy);
    r.min_gap = std::min(r.min_gap, gap);
    if (lam > 0.0 && lam < 1.0) {
      r.min_strict_gap = std::min(r.min_strict_gap, gap);
    }
    ++r.checked;
  }
  r.holds = r.min_gap >= -tol * scale && (!separated || r.min_strict_gap > 0.0);
  return r;
}

}  // namespace spdmeans
