#pragma once

#include <functional>
#include <memory>
#include <span>

#include "framelet/dilation.hpp"
#include "framelet/grid.hpp"

namespace framelet {

enum class GeneratorKind { scaling, wavelet, directional };

// State shared by a scaling/wavelet pair built for one dilation: the dilation
// itself, the norm adapted to M^T, the plateau radius c, and the contraction
// ratio lambda (= the adapted norm's certified lower factor for M^T). The
// radial profile is 1 on [0, c], 0 on [lambda*c, inf), and a smooth step in
// between, so squares of the pair telescope exactly across scales.
struct FrequencyPair {
  DilationMatrix dilation;
  AdaptedNorm norm;  // adapted to M^T
  double lambda0 = 0.0;
  double c = 0.0;
  double lambda = 0.0;

  double profile(double r) const;
};

struct Generator {
  GeneratorKind kind = GeneratorKind::scaling;
  int dim = 0;
  // Adapted-norm radii: the value is constant 1 (scaling) or 0 (wavelet)
  // inside support_inner, and exactly 0 outside support_outer.
  double support_inner = 0.0;
  double support_outer = 0.0;
  // Euclidean radius of a ball containing the support.
  double bounding_radius = 0.0;
  std::function<double(const double*)> eval;
  std::shared_ptr<const FrequencyPair> pair;

  double operator()(const double* xi) const { return eval(xi); }
  double operator()(std::span<const double> xi) const { return eval(xi.data()); }
};

// Scaling generator: phi(xi) = profile(|xi|_{M^T}). Real, even, values in
// [0,1], identically 1 on the adapted ball of radius c and 0 outside radius
// lambda*c. The second overload picks the norm regularization automatically.
Generator construct_phi(const DilationMatrix& m, double lambda0, double norm_epsilon);
Generator construct_phi(const DilationMatrix& m, double lambda0);

// Wavelet generator: psi(xi) = sqrt(max(0, phi(N xi)^2 - phi(xi)^2)) with
// N = (M^T)^{-1}, so phi(xi)^2 + psi(xi)^2 = phi(N xi)^2 holds exactly. The
// radicand is probed over the support at construction; a value below -1e-15
// reports NegativeRadicand (the clamp only absorbs rounding noise).
Generator construct_psi(const Generator& phi);

// Max/mean of |phi(N^J xi)^2 + sum_{j=J}^{J2-1} psi(N^j xi)^2 - phi(N^J2 xi)^2|
// over the grid. J < J2 required; J = 0, J2 = 1 is the single-scale identity.
ConditionReport calderon_residual(const Generator& phi, const Generator& psi,
                                  const FrequencyGrid& grid, int level_from,
                                  int level_to, double tolerance);
ConditionReport calderon_residual(const Generator& phi, const Generator& psi,
                                  const FrequencyGrid& grid, double tolerance);

// Max over the grid of |1 - phi(N^j xi)^2|: how far the contracted scaling
// symbol is from saturating. Exactly 0 once N^j maps the grid into the
// plateau ball.
double lowpass_limit_residual(const Generator& phi, const FrequencyGrid& grid,
                              int level);

// Smallest j >= 0 with lowpass_limit_residual == 0 for every point of a ball
// of the given Euclidean radius (closed form from the contraction factor).
int saturation_level(const Generator& phi, double euclid_radius);

}  // namespace framelet
