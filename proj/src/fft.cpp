#include "framelet/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "framelet/error.hpp"

namespace framelet {

namespace {

// FFTW plan creation and destruction mutate shared planner state and are not
// thread safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void dft(std::vector<std::complex<double>>& data, const std::vector<std::size_t>& shape,
         int sign) {
  if (sign != -1 && sign != 1) fail(Errc::BadConfig, "dft: sign must be -1 or +1");
  if (shape.empty() || shape.size() > 8) fail(Errc::BadConfig, "dft: rank must be 1..8");
  std::size_t total = 1;
  for (std::size_t n : shape) {
    if (n == 0) fail(Errc::SizeMismatch, "dft: zero-length axis");
    total *= n;
  }
  if (data.size() != total) fail(Errc::SizeMismatch, "dft: buffer does not match shape");

  std::vector<int> dims(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) dims[i] = static_cast<int>(shape[i]);

  // std::complex<double> is layout compatible with fftw_complex.
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE never touches the arrays during planning.
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) fail(Errc::BadConfig, "dft: planner failed for requested shape");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace framelet
