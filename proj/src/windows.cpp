#include "framelet/windows.hpp"

#include <algorithm>
#include <cmath>

namespace framelet {

namespace {

double flat_exp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// sin(pi/2 * g(t)/(g(t)+g(1-t))): the classical flat-at-both-ends ramp,
// accurate for t in [0, 1/2] where it stays away from 1.
double lower_half(double t) {
  const double a = flat_exp(t);
  const double b = flat_exp(1.0 - t);
  return std::sin(M_PI_2 * a / (a + b));
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t <= 0.5) return lower_half(t);
  const double s = lower_half(1.0 - t);
  return std::sqrt(1.0 - s * s);
}

double smooth_step_max_slope() {
  static const double cached = [] {
    const int n = 1 << 15;
    double best = 0.0;
    double prev = smooth_step(0.0);
    for (int i = 1; i <= n; ++i) {
      const double cur = smooth_step(double(i) / n);
      best = std::max(best, (cur - prev) * n);
      prev = cur;
    }
    return best * 1.05;
  }();
  return cached;
}

double bump(double rho, double t) {
  if (!(rho > 0.0)) fail(Errc::NonpositiveRho, "bump width must be positive");
  return smooth_step(2.0 - 2.0 * std::fabs(t) / rho);
}

TensorCutoff::TensorCutoff(int dim, double lambda0, double eps0)
    : dim_(dim), lambda0_(lambda0), eps0_(eps0) {
  if (dim < 1) fail(Errc::SizeMismatch, "cutoff dimension must be >= 1");
  if (!(lambda0 > 0.0 && lambda0 < 1.0))
    fail(Errc::DegenerateLambda0, "cutoff plateau fraction must lie in (0,1)");
  if (!(eps0 > 0.0 && eps0 < 1.0 - lambda0))
    fail(Errc::BadEps0, "cutoff margin must lie in (0, 1-lambda0)");
}

double TensorCutoff::operator()(std::span<const double> xi) const {
  if (int(xi.size()) != dim_) fail(Errc::SizeMismatch, "cutoff argument has wrong dimension");
  double v = 1.0;
  const double lo = lambda0_ * M_PI;
  const double hi = (lambda0_ + eps0_) * M_PI;
  for (double x : xi) {
    const double a = std::fabs(x);
    if (a >= hi) return 0.0;
    if (a > lo) v *= smooth_step((hi - a) / (hi - lo));
  }
  return v;
}

AngularWindow::AngularWindow(int n, double eps) : n_(n), eps_(eps) {
  if (n < 1) fail(Errc::SizeMismatch, "angular window order must be >= 1");
  if (!(eps > 0.0 && eps <= M_PI_2 / n))
    fail(Errc::BadEps, "angular window margin must lie in (0, pi/(2n)]");
}

double AngularWindow::default_eps(int n) {
  if (n < 1) fail(Errc::SizeMismatch, "angular window order must be >= 1");
  return M_PI_4 / n;
}

double AngularWindow::plateau_half_width() const { return M_PI_2 / n_ - eps_; }

double AngularWindow::support_half_width() const { return M_PI_2 / n_ + eps_; }

double AngularWindow::operator()(double theta) const {
  // Reduce to [-pi, pi).
  double u = theta - 2.0 * M_PI * std::floor((theta + M_PI) / (2.0 * M_PI));
  const double a = std::fabs(u);
  const double sup = support_half_width();
  if (a >= sup) return 0.0;
  const double plat = plateau_half_width();
  if (a <= plat) return 1.0;
  return smooth_step((sup - a) / (2.0 * eps_));
}

}  // namespace framelet
