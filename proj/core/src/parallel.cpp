#include "stokes_outflow/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

namespace stokes_outflow {

namespace {
std::atomic<int> g_override{0};

int env_threads() {
  const char* s = std::getenv("STOKES_OUTFLOW_THREADS");
  if (!s || !*s) return 0;
  try {
    const int n = std::stoi(s);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}
}  // namespace

int worker_threads() {
  if (int o = g_override.load(); o > 0) return o;
  const int hw = omp_get_max_threads();
  const int cap = env_threads();
  return cap > 0 && cap < hw ? cap : hw;
}

void set_worker_threads(int n) { g_override.store(n > 0 ? n : 0); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const int threads = worker_threads();
  if (threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace stokes_outflow
