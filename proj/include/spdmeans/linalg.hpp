#pragma once

#include <cstdint>

#include "spdmeans/types.hpp"

namespace spdmeans {

/// Relative tolerance used by Loewner comparisons unless a caller overrides it;
/// the absolute threshold is tol * (1 + ||A||_op + ||B||_op).
inline constexpr double kDefaultOrderTol = 1e-10;

EigenDecomposition eig_hermitian(const HermitianMatrix& a);

/// U diag(lambda^p) U*, symmetrized. p = 0 and p = 1 short-circuit to the
/// identity / the input.
SpdMatrix spectral_power(const SpdMatrix& a, double p);

/// Raw-matrix variant of spectral_power for compositions that multiply several
/// spectral functions together before re-entering the typed domain.
Matrix spectral_power_matrix(const SpdMatrix& a, double p);

HermitianMatrix spectral_log(const SpdMatrix& a);
Matrix spectral_log_matrix(const SpdMatrix& a);
SpdMatrix spectral_exp(const HermitianMatrix& h);

SpdMatrix inverse(const SpdMatrix& a);

/// lambda_min(B - A); nonnegative (up to tolerance) iff A <= B in Loewner order.
double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b);

OrderRelation loewner_compare(const HermitianMatrix& a, const HermitianMatrix& b,
                              double tol = kDefaultOrderTol);
OrderRelation loewner_compare(const SpdMatrix& a, const SpdMatrix& b,
                              double tol = kDefaultOrderTol);

/// Directional (Frechet) derivative D(A^p)[K] by the Daleckii-Krein rule:
/// in the eigenbasis of A, entry (i,j) of the rotated direction is scaled by
/// the divided difference (lambda_i^p - lambda_j^p)/(lambda_i - lambda_j),
/// falling back to the derivative p * lambda_i^(p-1) when
/// |lambda_i - lambda_j| <= 1e-12 * lambda_max.
HermitianMatrix frechet_power_derivative(const SpdMatrix& a, double p,
                                         const HermitianMatrix& direction);

/// Q diag(lambda) Q* with Q Haar-distributed (QR of a seeded complex Gaussian,
/// R-diagonal phases absorbed) and lambda log-uniform on
/// [1/sqrt(cond), sqrt(cond)]. Deterministic in the seed.
SpdMatrix random_spd(Index dim, double cond, std::uint64_t seed);

Matrix haar_unitary(Index dim, std::uint64_t seed);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace spdmeans
