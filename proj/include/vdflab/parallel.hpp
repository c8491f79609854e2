#ifndef VDFLAB_PARALLEL_HPP
#define VDFLAB_PARALLEL_HPP

#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "vdflab/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vdflab {

// Execution lane for the trial loops of the experiment drivers. The
// OpenMP lane and the serial lane must produce identical results: each
// trial is a pure function of its index, and aggregation happens after
// the loop in index order.
enum class ExecMode {
    serial,   // reference implementation, one trial after another
    open_mp,  // data-parallel over trials
};

inline ExecMode exec_mode_from_string(const std::string& s) {
    if (s == "serial") return ExecMode::serial;
    if (s == "openmp") return ExecMode::open_mp;
    throw Error("unknown execution mode '" + s + "' (expected serial|openmp)");
}

inline std::string to_string(ExecMode mode) {
    return mode == ExecMode::serial ? "serial" : "openmp";
}

inline int hardware_lanes() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs fn(0..count-1) and collects the results into a vector indexed by
// trial. The OpenMP lane falls back to serial when the build has no OpenMP.
template <typename R, typename Fn>
std::vector<R> run_indexed(std::size_t count, ExecMode mode, Fn&& fn) {
    std::vector<R> out(count);
    if (mode == ExecMode::open_mp) {
#ifdef _OPENMP
        std::exception_ptr failure;
        #pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
            try {
                out[static_cast<std::size_t>(i)] =
                    fn(static_cast<std::size_t>(i));
            } catch (...) {
                #pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        return out;
#endif
    }
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
}

}  // namespace vdflab

#endif
