#pragma once

#include <cstddef>
#include <exception>

#include <omp.h>

namespace landis {

/// Serial loops are the reference implementation; parallel ones must give
/// bitwise-identical results (each index writes its own slot, no reductions).
enum class Exec { serial, parallel };

template <class F>
void for_each_index(std::size_t n, Exec exec, F&& body) {
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(landis_for_each_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace landis
