#pragma once

#include <span>

#include "framelet/error.hpp"

namespace framelet {

// C-infinity step: 0 for t <= 0, 1 for t >= 1, strictly increasing in between.
// The upper half is derived from the lower half as sqrt(1 - s^2), so
// smooth_step(t)^2 + smooth_step(1-t)^2 == 1 holds to machine precision and
// complementary window overlaps tile exactly in squared sum.
double smooth_step(double t);

// Safe upper bound on sup |smooth_step'|, used for Lipschitz budgets.
double smooth_step_max_slope();

// Even bump: 1 on [-rho/2, rho/2], strictly positive on (-rho, rho), 0 outside.
double bump(double rho, double t);

// Tensor-product cutoff: 1 on [-l*pi, l*pi]^d, 0 outside [-(l+e)*pi, (l+e)*pi]^d.
class TensorCutoff {
 public:
  TensorCutoff(int dim, double lambda0, double eps0);
  double operator()(std::span<const double> xi) const;
  int dim() const { return dim_; }
  double lambda0() const { return lambda0_; }
  double eps0() const { return eps0_; }

 private:
  int dim_;
  double lambda0_, eps0_;
};

// 2*pi-periodic angular window around 0: identically 1 on
// [-pi/(2n)+eps, pi/(2n)-eps], 0 outside +-(pi/(2n)+eps); the 2n rotates by
// multiples of pi/n tile the circle with sum of squares 1.
class AngularWindow {
 public:
  AngularWindow(int n, double eps);
  static double default_eps(int n);
  static AngularWindow with_default_eps(int n) { return AngularWindow(n, default_eps(n)); }

  double operator()(double theta) const;
  int n() const { return n_; }
  double eps() const { return eps_; }
  double plateau_half_width() const;
  double support_half_width() const;

 private:
  int n_;
  double eps_;
};

}  // namespace framelet
