#include "spdmeans/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spdmeans {

MajorizationVerdict log_majorizes(const SpdMatrix& x, const SpdMatrix& y, bool weak, double tol) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("log_majorizes: dimensions differ");
  }
  const Index m = x.dim();

  // eigenvalues ascending -> walk from the back for descending order
  RealVector log_lhs(m), log_rhs(m);
  for (Index k = 0; k < m; ++k) {
    log_lhs(k) = std::log(x.eig().eigenvalues(m - 1 - k));
    log_rhs(k) = std::log(y.eig().eigenvalues(m - 1 - k));
  }

  MajorizationVerdict v;
  v.partial_products_lhs.resize(m);
  v.partial_products_rhs.resize(m);
  double sum_lhs = 0.0;
  double sum_rhs = 0.0;
  v.worst_margin = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < m; ++k) {
    sum_lhs += log_lhs(k);
    sum_rhs += log_rhs(k);
    v.partial_products_lhs(k) = std::exp(sum_lhs);
    v.partial_products_rhs(k) = std::exp(sum_rhs);
    v.worst_margin = std::min(v.worst_margin, sum_rhs - sum_lhs);
  }
  v.det_log_gap = std::abs(sum_lhs - sum_rhs);
  v.holds = v.worst_margin >= -tol && (weak || v.det_log_gap <= tol);
  return v;
}

}  // namespace spdmeans
