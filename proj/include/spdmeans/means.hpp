#pragma once

#include "spdmeans/types.hpp"

namespace spdmeans {

/// Module-wide relative tolerance for the mean identities checked by callers.
inline constexpr double kMeansRelTol = 1e-9;

/// (1-t) A + t B.
SpdMatrix arithmetic_mean(const SpdMatrix& a, const SpdMatrix& b, double t);

/// [(1-t) A^{-1} + t B^{-1}]^{-1}.
SpdMatrix harmonic_mean(const SpdMatrix& a, const SpdMatrix& b, double t);

/// A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}. Defined for every real t; the
/// geodesic regime is t in [0,1] and callers asserting mean inequalities stay
/// inside it. t = 1/2 solves the Riccati equation X A^{-1} X = B.
SpdMatrix metric_geometric_mean(const SpdMatrix& a, const SpdMatrix& b, double t);

/// (A^{-1} # B)^t A (A^{-1} # B)^t with # the metric geometric midpoint.
SpdMatrix spectral_geometric_mean(const SpdMatrix& a, const SpdMatrix& b, double t);

/// (A^{-1} #_t B)^{1/2} A^{2-2t} (A^{-1} #_t B)^{1/2}; endpoints short-circuit
/// to A and B exactly. Accepts every real t (the order-analysis equivalence
/// check needs values outside [0,1]); the mean regime is t in [0,1].
SpdMatrix f_mean(const SpdMatrix& a, const SpdMatrix& b, double t);

/// (A^{(1-t)/2z} B^{t/z} A^{(1-t)/2z})^z, z > 0.
SpdMatrix renyi_quantity(const SpdMatrix& a, const SpdMatrix& b, double t, double z);

/// A^{-1/2} ((1-t) A + t (A^{1/2} B A^{1/2})^{1/2})^2 A^{-1/2}.
SpdMatrix wasserstein_mean(const SpdMatrix& a, const SpdMatrix& b, double t);

/// exp((1-t) log A + t log B).
SpdMatrix log_euclidean_mean(const SpdMatrix& a, const SpdMatrix& b, double t);

/// || log(A^{-1/2} B A^{-1/2}) ||_F.
double riemannian_distance(const SpdMatrix& a, const SpdMatrix& b);

/// sqrt( tr[A + B - 2 (A^{1/2} B A^{1/2})^{1/2}] ).
double bures_wasserstein_distance(const SpdMatrix& a, const SpdMatrix& b);

/// 2 || log(A^{-1} # B) ||_op.
double spectral_semimetric(const SpdMatrix& a, const SpdMatrix& b);

}  // namespace spdmeans
