#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace stokes_outflow::detail {

namespace {
// Planner calls are not thread-safe in FFTW; execution is.
std::mutex g_plan_mutex;
}  // namespace

void fft_nd(const std::vector<std::size_t>& n, CVec& data, bool forward) {
  std::size_t total = 1;
  std::vector<int> dims(n.size());
  for (std::size_t d = 0; d < n.size(); ++d) {
    dims[d] = static_cast<int>(n[d]);
    total *= n[d];
  }
  if (total != data.size()) throw Error(ErrorKind::InvalidArgument, "fft_nd: size mismatch");
  if (total == 0) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                         forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(plan);
  }
  if (forward) {
    const double s = 1.0 / double(total);
    for (auto& c : data) c *= s;
  }
}

}  // namespace stokes_outflow::detail
