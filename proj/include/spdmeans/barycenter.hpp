#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "spdmeans/parallel.hpp"
#include "spdmeans/types.hpp"

namespace spdmeans {

/// Positive probability vector: every weight > 0 and the sum within 1e-12 of 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  const std::vector<double>& values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t j) const { return weights_[j]; }

 private:
  std::vector<double> weights_;
};

/// n equal-dimension positive definite matrices with weights and a parameter
/// t in the open interval (0,1).
struct BarycenterProblem {
  BarycenterProblem(std::vector<SpdMatrix> matrices, WeightVector weights, double t);

  Index dim() const { return matrices.front().dim(); }
  std::size_t size() const { return matrices.size(); }

  std::vector<SpdMatrix> matrices;
  WeightVector weights;
  double t;
};

struct SolverConfig {
  int max_iters = 500;
  double grad_tol = 1e-9;  // relative: converged when ||G||_F <= grad_tol * (1 + ||X||_F)
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;
};

struct SolverReport {
  int iterations = 0;
  double final_grad_norm = 0.0;
  std::vector<double> objective_trace;  // non-increasing by construction
  bool converged = false;
};

/// Weighted sum of divergences to the fixed inputs, strictly convex in X.
double objective(const BarycenterProblem& p, const SpdMatrix& x);

/// Analytic (Daleckii-Krein) gradient of the objective at X.
HermitianMatrix gradient(const BarycenterProblem& p, const SpdMatrix& x);

/// A^t through its resolvent integral, evaluated by Gauss-Jacobi quadrature
/// after the Cayley substitution lambda = (1-x)/(1+x). The result is computed
/// at 2*nodes and validated against the nodes-point rule; a relative drift
/// above 1e-6 raises QuadratureNotConverged. t in (0,1).
SpdMatrix power_integral(const SpdMatrix& a, double t, int nodes = 256,
                         Execution exec = Execution::Serial);

/// The stationarity residual of the barycenter equation, evaluated by
/// quadrature:
///   t I - sum_j w_j (sin(t pi)/pi) Int (lam A_j^{-1}+X)^{-1} A_j^{-2t}
///                                       (lam A_j^{-1}+X)^{-1} lam^t dlam.
/// Agrees with gradient() and serves as its integral-representation
/// cross-check; vanishes exactly at the barycenter. nodes >= 16.
HermitianMatrix gradient_quadrature(const BarycenterProblem& p, const SpdMatrix& x,
                                    int nodes = 256, Execution exec = Execution::Serial);

/// Gradient descent with Armijo backtracking, a Barzilai-Borwein trial step,
/// and a cone safeguard (trial iterates with lambda_min <= 1e-10 * lambda_max
/// are rejected and the step shrunk). Starts from the weighted arithmetic
/// mean unless an initial iterate is supplied. When max_iters runs out the
/// best iterate is returned with converged = false.
std::pair<SpdMatrix, SolverReport> solve(const BarycenterProblem& p,
                                         const SolverConfig& config = {},
                                         const std::optional<SpdMatrix>& initial = {});

/// (sum_j w_j A_j^{1-t})^{1/(1-t)}; valid when the inputs commute, which is
/// checked through pairwise commutators.
SpdMatrix commuting_closed_form(const BarycenterProblem& p);

}  // namespace spdmeans
