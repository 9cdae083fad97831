#include "spdmeans/types.hpp"

#include <cmath>

namespace spdmeans {

const char* to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::Equal:
      return "Equal";
    case OrderRelation::Leq:
      return "Leq";
    case OrderRelation::Geq:
      return "Geq";
    case OrderRelation::Incomparable:
      return "Incomparable";
  }
  return "Incomparable";
}

Matrix symmetrized(const Matrix& x) { return 0.5 * (x + x.adjoint()); }

Matrix EigenDecomposition::reconstruct() const {
  return symmetrized(eigenvectors * eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                     eigenvectors.adjoint());
}

HermitianMatrix::HermitianMatrix(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw InvalidParameter("HermitianMatrix requires a square matrix of dimension >= 1");
  }
  entries_ = symmetrized(entries);
}

HermitianMatrix HermitianMatrix::Zero(Index dim) {
  return HermitianMatrix(Matrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::Identity(Index dim) {
  return HermitianMatrix(Matrix::Identity(dim, dim));
}

double HermitianMatrix::operator_norm() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigenvalue solver failed on Hermitian matrix");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

constexpr double kSpdRelativeFloor = 1e-12;

EigenDecomposition decompose_checked(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigenvalue solver failed on Hermitian matrix");
  }
  EigenDecomposition d;
  d.eigenvalues = solver.eigenvalues();
  d.eigenvectors = solver.eigenvectors();
  return d;
}

}  // namespace

SpdMatrix::SpdMatrix(const Matrix& entries) : SpdMatrix(HermitianMatrix(entries)) {}

SpdMatrix::SpdMatrix(const HermitianMatrix& h) : base_(h), eig_(decompose_checked(h)) {
  const double lo = eig_.eigenvalues(0);
  const double hi = eig_.eigenvalues(eig_.eigenvalues.size() - 1);
  if (!(lo > 0.0) || lo <= kSpdRelativeFloor * hi) {
    throw InvalidParameter("matrix is not (safely) positive definite: lambda_min = " +
                           std::to_string(lo) + ", lambda_max = " + std::to_string(hi));
  }
}

SpdMatrix SpdMatrix::Identity(Index dim) { return SpdMatrix(Matrix::Identity(dim, dim)); }

double SpdMatrix::log_det() const {
  return eig_.eigenvalues.array().log().sum();
}

}  // namespace spdmeans
