#pragma once

#include "spdmeans/types.hpp"

namespace spdmeans {

inline constexpr double kDefaultMajorizationTol = 1e-9;

struct MajorizationVerdict {
  bool holds = false;
  RealVector partial_products_lhs;  // descending cumulative eigenvalue products
  RealVector partial_products_rhs;
  double worst_margin = 0.0;  // min over k of (log rhs_k - log lhs_k)
  double det_log_gap = 0.0;   // |log det lhs - log det rhs|
};

/// X is (weakly) log-majorized by Y: descending-eigenvalue partial products of
/// X stay below those of Y at every k, with determinant equality additionally
/// required unless weak. All arithmetic happens in log-space; the tolerance is
/// a log-space slack.
MajorizationVerdict log_majorizes(const SpdMatrix& x, const SpdMatrix& y, bool weak,
                                  double tol = kDefaultMajorizationTol);

}  // namespace spdmeans
