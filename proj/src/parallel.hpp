#ifndef MIXTAG_SRC_PARALLEL_HPP
#define MIXTAG_SRC_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mixtag {

inline int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

}  // namespace mixtag

#endif  // MIXTAG_SRC_PARALLEL_HPP
