#include "spdmeans/linalg.hpp"

#include <cmath>
#include <random>

namespace spdmeans {

namespace {

constexpr double kPowerConditionFloor = 1e-14;

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ");
  }
}

Matrix spectral_map(const SpdMatrix& a, double (*fn)(double, double), double p) {
  const EigenDecomposition& d = a.eig();
  RealVector mapped(d.eigenvalues.size());
  for (Index i = 0; i < mapped.size(); ++i) {
    mapped(i) = fn(d.eigenvalues(i), p);
  }
  return symmetrized(d.eigenvectors * mapped.asDiagonal().toDenseMatrix().cast<Complex>() *
                     d.eigenvectors.adjoint());
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigenvalue solver failed");
  }
  return solver.eigenvalues();
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigenvalue solver did not converge");
  }
  EigenDecomposition d;
  d.eigenvalues = solver.eigenvalues();
  d.eigenvectors = solver.eigenvectors();
  return d;
}

Matrix spectral_power_matrix(const SpdMatrix& a, double p) {
  if (a.lambda_min() < kPowerConditionFloor * a.lambda_max()) {
    throw IllConditioned("spectral_power: condition number exceeds 1e14");
  }
  return spectral_map(
      a, [](double lam, double q) { return std::pow(lam, q); }, p);
}

SpdMatrix spectral_power(const SpdMatrix& a, double p) {
  if (p == 0.0) {
    return SpdMatrix::Identity(a.dim());
  }
  if (p == 1.0) {
    return a;
  }
  return SpdMatrix(spectral_power_matrix(a, p));
}

Matrix spectral_log_matrix(const SpdMatrix& a) {
  return spectral_map(
      a, [](double lam, double) { return std::log(lam); }, 0.0);
}

HermitianMatrix spectral_log(const SpdMatrix& a) {
  return HermitianMatrix(spectral_log_matrix(a));
}

SpdMatrix spectral_exp(const HermitianMatrix& h) {
  EigenDecomposition d = eig_hermitian(h);
  RealVector mapped = d.eigenvalues.array().exp();
  return SpdMatrix(symmetrized(d.eigenvectors *
                               mapped.asDiagonal().toDenseMatrix().cast<Complex>() *
                               d.eigenvectors.adjoint()));
}

SpdMatrix inverse(const SpdMatrix& a) { return SpdMatrix(spectral_power_matrix(a, -1.0)); }

double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "loewner_margin");
  return hermitian_eigenvalues(b.entries() - a.entries())(0);
}

OrderRelation loewner_compare(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  require_same_dim(a.dim(), b.dim(), "loewner_compare");
  const RealVector diff_eigs = hermitian_eigenvalues(b.entries() - a.entries());
  const double threshold = tol * (1.0 + a.operator_norm() + b.operator_norm());
  const bool leq = diff_eigs(0) >= -threshold;                          // lambda_min(B-A)
  const bool geq = diff_eigs(diff_eigs.size() - 1) <= threshold;        // lambda_max(B-A)
  if (leq && geq) return OrderRelation::Equal;
  if (leq) return OrderRelation::Leq;
  if (geq) return OrderRelation::Geq;
  return OrderRelation::Incomparable;
}

OrderRelation loewner_compare(const SpdMatrix& a, const SpdMatrix& b, double tol) {
  return loewner_compare(a.hermitian(), b.hermitian(), tol);
}

HermitianMatrix frechet_power_derivative(const SpdMatrix& a, double p,
                                         const HermitianMatrix& direction) {
  require_same_dim(a.dim(), direction.dim(), "frechet_power_derivative");
  if (a.lambda_min() < kPowerConditionFloor * a.lambda_max()) {
    throw IllConditioned("frechet_power_derivative: condition number exceeds 1e14");
  }
  const EigenDecomposition& d = a.eig();
  const Index m = a.dim();
  const double tie_tol = 1e-12 * a.lambda_max();
  Matrix rotated = d.eigenvectors.adjoint() * direction.entries() * d.eigenvectors;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      const double li = d.eigenvalues(i);
      const double lj = d.eigenvalues(j);
      double scale;
      if (std::abs(li - lj) <= tie_tol) {
        scale = p * std::pow(li, p - 1.0);
      } else {
        scale = (std::pow(li, p) - std::pow(lj, p)) / (li - lj);
      }
      rotated(i, j) *= scale;
    }
  }
  return HermitianMatrix(d.eigenvectors * rotated * d.eigenvectors.adjoint());
}

namespace {

Matrix gaussian_matrix(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re * inv_sqrt2, im * inv_sqrt2);
    }
  }
  return g;
}

Matrix haar_from_rng(Index dim, std::mt19937_64& rng) {
  Matrix g = gaussian_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    Complex rii = r(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= (mag > 0.0) ? rii / mag : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace

SpdMatrix random_spd(Index dim, double cond, std::uint64_t seed) {
  if (dim < 1) {
    throw InvalidParameter("random_spd: dimension must be >= 1");
  }
  if (!(cond >= 1.0)) {
    throw InvalidParameter("random_spd: condition target must be >= 1");
  }
  if (cond == 1.0) {
    return SpdMatrix::Identity(dim);  // Q I Q* is the identity for any basis
  }
  std::mt19937_64 rng(seed);
  Matrix q = haar_from_rng(dim, rng);
  RealVector lambda(dim);
  const double half_span = 0.5 * std::log(cond);
  std::uniform_real_distribution<double> unif(-half_span, half_span);
  for (Index i = 0; i < dim; ++i) {
    lambda(i) = std::exp(unif(rng));
  }
  return SpdMatrix(q * lambda.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint());
}

Matrix haar_unitary(Index dim, std::uint64_t seed) {
  if (dim < 1) {
    throw InvalidParameter("haar_unitary: dimension must be >= 1");
  }
  std::mt19937_64 rng(seed);
  return haar_from_rng(dim, rng);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace spdmeans
