#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace levelcurv {

/// Execution policy for the data-parallel kernels. Every kernel has a serial
/// reference path that produces bit-identical output to the OpenMP path;
/// results never depend on the worker count because all random streams are
/// derived per work item and reductions run in fixed item order.
enum class Exec { serial, parallel };

inline bool openmp_enabled()
{
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n)
{
#ifdef _OPENMP
    if(n > 0)
        omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace levelcurv
