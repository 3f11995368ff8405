#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bundlekit {

// Execution mode for kernels that ship both a parallel implementation and a
// serial reference. Both modes follow the same update schedule and
// accumulation order, so their outputs are byte-identical; the serial path
// exists as an oracle for tests and benchmarks.
enum class Exec { serial, openmp };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_max_threads(int n) {
  if (n < 1) n = 1;
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Applies BUNDLEKIT_THREADS if set; returns the resulting worker count.
inline int apply_thread_env() {
  if (const char* env = std::getenv("BUNDLEKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) set_max_threads(n);
  }
  return max_threads();
}

}  // namespace bundlekit
