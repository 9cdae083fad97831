#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spdmeans {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class InvalidParameter : public Error {
 public:
  using Error::Error;
};
class IllConditioned : public Error {
 public:
  using Error::Error;
};
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};
class NegativityViolation : public Error {
 public:
  using Error::Error;
};
class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};
class LineSearchStalled : public Error {
 public:
  using Error::Error;
};
class NotCommuting : public Error {
 public:
  using Error::Error;
};

/// Loewner-order comparison outcome. Equal satisfies both Leq and Geq.
enum class OrderRelation { Equal, Leq, Geq, Incomparable };

inline bool order_is_leq(OrderRelation r) {
  return r == OrderRelation::Leq || r == OrderRelation::Equal;
}
inline bool order_is_geq(OrderRelation r) {
  return r == OrderRelation::Geq || r == OrderRelation::Equal;
}
const char* to_string(OrderRelation r);

/// (X + X*)/2. Every composite product of Hermitian factors goes through this
/// before becoming a domain value again.
Matrix symmetrized(const Matrix& x);

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary; column i pairs with eigenvalues[i]

  Matrix reconstruct() const;
};

/// Square complex matrix with A = A* enforced at construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& entries);

  static HermitianMatrix Zero(Index dim);
  static HermitianMatrix Identity(Index dim);

  Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

  double trace() const { return entries_.trace().real(); }
  double frobenius_norm() const { return entries_.norm(); }
  /// Spectral norm (largest absolute eigenvalue). Costs an eigenvalue solve.
  double operator_norm() const;

 private:
  Matrix entries_;
};

/// Hermitian matrix with strictly positive spectrum. Construction runs one
/// eigendecomposition, rejects inputs with lambda_min <= 1e-12 * lambda_max
/// (fractional negative powers amplify near-null directions), and caches the
/// decomposition for the spectral calculus built on top.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Matrix& entries);
  explicit SpdMatrix(const HermitianMatrix& h);

  static SpdMatrix Identity(Index dim);

  Index dim() const { return base_.dim(); }
  const Matrix& entries() const { return base_.entries(); }
  const HermitianMatrix& hermitian() const { return base_; }
  const EigenDecomposition& eig() const { return eig_; }

  double lambda_min() const { return eig_.eigenvalues(0); }
  double lambda_max() const { return eig_.eigenvalues(eig_.eigenvalues.size() - 1); }
  double trace() const { return base_.trace(); }
  double frobenius_norm() const { return base_.frobenius_norm(); }
  double operator_norm() const { return lambda_max(); }
  double log_det() const;

 private:
  HermitianMatrix base_;
  EigenDecomposition eig_;
};

}  // namespace spdmeans
