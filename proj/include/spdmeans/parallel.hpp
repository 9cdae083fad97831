#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spdmeans {

/// Execution policy for the data-parallel loops (verification sample sweeps,
/// quadrature node sums). Parallel work writes into per-index slots and is
/// reduced sequentially in index order afterwards, so both policies produce
/// bit-identical results; Serial is the reference path the tests compare
/// against.
enum class Execution { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <typename Body>
void for_each_index(Execution exec, std::ptrdiff_t count, Body&& body) {
  if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
#endif
  }
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    body(i);
  }
}

}  // namespace spdmeans
