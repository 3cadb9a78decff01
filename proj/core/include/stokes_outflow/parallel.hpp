#pragma once

#include <cstddef>
#include <functional>

namespace stokes_outflow {

/// Worker count: STOKES_OUTFLOW_THREADS if set, else the OpenMP default.
int worker_threads();

/// Override the worker count for this process (0 restores the default).
void set_worker_threads(int n);

/// Runs body(i) for i in [0, n) on the worker pool. Iterations must be
/// independent; the first exception thrown by any iteration is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace stokes_outflow
