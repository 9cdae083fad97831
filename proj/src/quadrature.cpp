#include "spdmeans/quadrature.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "spdmeans/types.hpp"

namespace spdmeans {

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) {
    throw InvalidParameter("gauss_jacobi: need at least one node");
  }
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw InvalidParameter("gauss_jacobi: weight exponents must exceed -1");
  }
  const double ab = alpha + beta;

  Eigen::VectorXd diag(n);
  Eigen::VectorXd subdiag(std::max(n - 1, 0));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    diag(k) = (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
  }
  if (n > 1) {
    subdiag(0) =
        std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < n; ++k) {
      const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
      const double den =
          (2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0);
      subdiag(k - 1) = std::sqrt(num / den);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("gauss_jacobi: tridiagonal eigensolver failed");
  }

  // total weight mu0 = Int_{-1}^{1} (1-x)^alpha (1+x)^beta dx
  const double mu0 = std::pow(2.0, ab + 1.0) *
                     std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                              std::lgamma(ab + 2.0));

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace spdmeans
