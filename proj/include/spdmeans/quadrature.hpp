#pragma once

#include <vector>

namespace spdmeans {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on (-1, 1),
/// computed with Golub-Welsch (symmetric tridiagonal eigenproblem over the
/// Jacobi-polynomial recurrence coefficients). Requires alpha, beta > -1.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

}  // namespace spdmeans
