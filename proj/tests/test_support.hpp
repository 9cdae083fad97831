#pragma once

#include <random>
#include <utility>

#include "spdmeans/linalg.hpp"
#include "spdmeans/types.hpp"

namespace spdmeans::test {

inline double rel_err(const Matrix& got, const Matrix& want) {
  const double denom = want.norm();
  return (got - want).norm() / (denom > 0.0 ? denom : 1.0);
}

inline Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline Matrix real2(double a11, double a12, double a21, double a22) {
  Matrix m(2, 2);
  m(0, 0) = a11;
  m(0, 1) = a12;
  m(1, 0) = a21;
  m(1, 1) = a22;
  return m;
}

inline SpdMatrix scalar_matrix(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return SpdMatrix(m);
}

inline HermitianMatrix random_hermitian(Index dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix h(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      h(i, j) = Complex(gauss(gen), gauss(gen));
    }
  }
  HermitianMatrix out(h);
  return HermitianMatrix(out.entries() / out.frobenius_norm());
}

/// Pair of commuting matrices built from one Haar eigenbasis.
inline std::pair<SpdMatrix, SpdMatrix> commuting_pair(Index dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  const Matrix q = haar_unitary(dim, gen());
  RealVector la(dim), lb(dim);
  for (Index i = 0; i < dim; ++i) {
    la(i) = std::exp(unif(gen));
    lb(i) = std::exp(unif(gen));
  }
  SpdMatrix a(q * la.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint());
  SpdMatrix b(q * lb.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint());
  return {std::move(a), std::move(b)};
}

}  // namespace spdmeans::test
