#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "framelet/generators.hpp"

namespace framelet {

// Frequency-tiled multi-level plan for periodic sample grids under the
// dilation 2I. Window band 0 is the lowpass at octave `coarsest`; the
// remaining bands cover octaves coarsest..finest-1. The squared windows sum
// to 1 at every DFT bin (the finest octave is chosen so the telescoping
// lowpass saturates on the whole bin box).
struct TransformPlan {
  int dim = 0;
  std::size_t n = 0;  // samples per axis, power of two
  int levels = 0;     // wavelet octaves
  int coarsest = 0;
  int finest = 0;
  bool directional = false;
  int m = 0;
  double rho = 0.0;
  double tightness_residual = 0.0;
  std::vector<std::string> band_labels;
  // windows[band][flat DFT bin], bins in transform order (nonnegative
  // frequencies first, then the negative alias), row-major across axes.
  std::vector<std::vector<double>> windows;

  std::size_t total_bins() const;
  std::size_t bands() const { return windows.size(); }
};

struct CoefficientPyramid {
  std::shared_ptr<const TransformPlan> plan;
  std::vector<std::vector<std::complex<double>>> bands;

  double energy() const;
};

// Shared core: windows sampled from a constructed scaling/wavelet pair.
std::shared_ptr<const TransformPlan> make_plan(const Generator& phi, const Generator& psi,
                                               std::size_t n, int levels);

// Built-in families. Isotropic plans exist for dim 1 and 2; the directional
// plan splits each octave into m * 2^floor(rho t) oriented wedges, t counted
// from the coarsest octave.
std::shared_ptr<const TransformPlan> make_plan_isotropic(int dim, std::size_t n, int levels);
std::shared_ptr<const TransformPlan> make_plan_directional(std::size_t n, int levels, int m,
                                                           double rho);

// One forward DFT, then one inverse DFT per band of spectrum times window.
// Unitary normalization both directions.
CoefficientPyramid analyze(const std::vector<std::complex<double>>& samples,
                           const std::shared_ptr<const TransformPlan>& plan);

// Exact adjoint of analyze; reconstructs perfectly because the squared
// windows sum to one.
std::vector<std::complex<double>> synthesize(const CoefficientPyramid& pyramid);

// Relative l2 round-trip error (0 for zero input).
double pr_residual(const std::vector<std::complex<double>>& samples,
                   const std::shared_ptr<const TransformPlan>& plan);

}  // namespace framelet
