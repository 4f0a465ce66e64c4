#ifndef PDMISO_PARALLEL_HPP
#define PDMISO_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pdmiso::par {

// Serial is the reference path; Parallel uses OpenMP when compiled in.
// Kernels written against parallel_for must produce bitwise-identical
// results under either policy (each index owns its output slot).
enum class Exec { Serial, Parallel };

inline Exec default_exec() {
    if (std::getenv("PDM_ISOSPEC_SERIAL") != nullptr) return Exec::Serial;
    return Exec::Parallel;
}

// An exception thrown by any iteration is rethrown on the calling thread
// after the loop completes (OpenMP regions may not leak exceptions).
template <class F>
void parallel_for(long n, Exec exec, F&& body) {
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
        std::exception_ptr error;
        std::atomic<bool> failed{false};
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                body(i);
            } catch (...) {
                bool expected = false;
                if (failed.compare_exchange_strong(expected, true))
                    error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#else
    (void)exec;
#endif
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace pdmiso::par

#endif
