#include "spdmeans/means.hpp"

#include <cmath>

#include "spdmeans/linalg.hpp"

namespace spdmeans {

namespace {

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": dimensions differ");
  }
}

void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidParameter(std::string(what) + ": weight t must lie in [0,1]");
  }
}

}  // namespace

SpdMatrix arithmetic_mean(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "arithmetic_mean");
  require_unit_interval(t, "arithmetic_mean");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return SpdMatrix((1.0 - t) * a.entries() + t * b.entries());
}

SpdMatrix harmonic_mean(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "harmonic_mean");
  require_unit_interval(t, "harmonic_mean");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return inverse(
      SpdMatrix((1.0 - t) * spectral_power_matrix(a, -1.0) + t * spectral_power_matrix(b, -1.0)));
}

SpdMatrix metric_geometric_mean(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "metric_geometric_mean");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const Matrix root = spectral_power_matrix(a, 0.5);
  const Matrix inv_root = spectral_power_matrix(a, -0.5);
  SpdMatrix inner(inv_root * b.entries() * inv_root);
  return SpdMatrix(root * spectral_power_matrix(inner, t) * root);
}

SpdMatrix spectral_geometric_mean(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "spectral_geometric_mean");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const SpdMatrix midpoint = metric_geometric_mean(inverse(a), b, 0.5);
  const Matrix mt = spectral_power_matrix(midpoint, t);
  return SpdMatrix(mt * a.entries() * mt);
}

SpdMatrix f_mean(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "f_mean");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const SpdMatrix geo = metric_geometric_mean(inverse(a), b, t);
  const Matrix geo_root = spectral_power_matrix(geo, 0.5);
  return SpdMatrix(geo_root * spectral_power_matrix(a, 2.0 - 2.0 * t) * geo_root);
}

SpdMatrix renyi_quantity(const SpdMatrix& a, const SpdMatrix& b, double t, double z) {
  require_same_dim(a, b, "renyi_quantity");
  if (!(z > 0.0)) {
    throw InvalidParameter("renyi_quantity: order z must be positive");
  }
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const Matrix outer = spectral_power_matrix(a, (1.0 - t) / (2.0 * z));
  SpdMatrix inner(outer * spectral_power_matrix(b, t / z) * outer);
  return spectral_power(inner, z);
}

SpdMatrix wasserstein_mean(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "wasserstein_mean");
  require_unit_interval(t, "wasserstein_mean");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const Matrix root = spectral_power_matrix(a, 0.5);
  const Matrix inv_root = spectral_power_matrix(a, -0.5);
  SpdMatrix inner(root * b.entries() * root);
  const Matrix cross = spectral_power_matrix(inner, 0.5);
  const Matrix half = inv_root * ((1.0 - t) * a.entries() + t * cross);
  return SpdMatrix(half * half.adjoint());
}

SpdMatrix log_euclidean_mean(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "log_euclidean_mean");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return spectral_exp(
      HermitianMatrix((1.0 - t) * spectral_log_matrix(a) + t * spectral_log_matrix(b)));
}

double riemannian_distance(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "riemannian_distance");
  const Matrix inv_root = spectral_power_matrix(a, -0.5);
  SpdMatrix inner(inv_root * b.entries() * inv_root);
  return std::sqrt(inner.eig().eigenvalues.array().log().square().sum());
}

double bures_wasserstein_distance(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "bures_wasserstein_distance");
  const Matrix root = spectral_power_matrix(a, 0.5);
  SpdMatrix inner(root * b.entries() * root);
  const double cross_trace = inner.eig().eigenvalues.array().sqrt().sum();
  const double sq = a.trace() + b.trace() - 2.0 * cross_trace;
  return std::sqrt(std::max(sq, 0.0));
}

double spectral_semimetric(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "spectral_semimetric");
  const SpdMatrix midpoint = metric_geometric_mean(inverse(a), b, 0.5);
  return 2.0 * midpoint.eig().eigenvalues.array().log().abs().maxCoeff();
}

}  // namespace spdmeans
