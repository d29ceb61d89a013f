#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "framelet/directional.hpp"
#include "framelet/generators.hpp"

namespace framelet {

// 2pi-periodic filter symbol. value(xi) = base(reduce(xi)) * exp(-i k.M^T xi)
// where reduce folds every coordinate into [-pi, pi); the base and the
// modulation phase both see only reduced points (the phase changes by a full
// turn under 2pi shifts when k and M are integral), so periodicity is
// structural.
struct Mask {
  int dim = 0;
  Mat mt;
  std::vector<double> mod_k;
  std::function<std::complex<double>(const double*)> base;
  std::string label;

  std::complex<double> operator()(const double* xi) const;
  std::complex<double> operator()(std::span<const double> xi) const {
    return (*this)(xi.data());
  }
};

Mask constant_mask(int dim, const Mat& mt, std::complex<double> value, std::string label);

// Same base with modulation index k (integer entries; NotInteger otherwise).
Mask modulated(const Mask& mask, const std::vector<double>& k);

struct FilterBank {
  DilationMatrix dilation;
  Mask lowpass;
  std::vector<Mask> highpass;
  Mask theta;  // multiplier symbol; the constant 1 unless a caller swaps it
  bool stationary = true;
  int level = 0;
};

// Stationary bank for a scaling/wavelet pair over an integer dilation:
//   a(xi) = phi(M^T xi)
//   b(xi) = h(xi) * psi(M^T xi) / phi(xi) where phi(xi) > 0, h(xi) otherwise,
// with h the tensor cutoff at (lambda0, eps0); eps0 defaults to (1-lambda0)/2.
// The generator supports sit inside the cutoff plateau, so both refinement
// identities hold exactly and |b| never exceeds 1 by more than rounding.
FilterBank derive_masks(const Generator& phi, const Generator& psi, double lambda0,
                        double eps0);
FilterBank derive_masks(const Generator& phi, const Generator& psi, double lambda0);

// One highpass mask per member of a polar family (dilation 2*I_2):
// b_l(xi) = b(xi) * window_l(xi/|xi|), matching the member split of psi.
FilterBank derive_directional_masks(const DirectionalFamily& family, double lambda0,
                                    double eps0);
FilterBank derive_directional_masks(const DirectionalFamily& family, double lambda0);

// dim-1 dyadic orthonormal bank: a = (1+e^{-i xi})/2, b = (1-e^{-i xi})/2.
FilterBank haar_bank();

// Max/mean over the grid of |child(M^T xi) - mask(xi) * parent(xi)|.
ConditionReport refinement_residual(const Mask& mask, const Generator& parent,
                                    const Generator& child, const FrequencyGrid& grid,
                                    double tolerance);

// Rows stack the filters (lowpass first), columns run over the coset offsets
// omega_n of the dilation: P[r][c] = filter_r(xi + 2 pi omega_c).
std::vector<std::vector<std::complex<double>>> polyphase_matrix(const FilterBank& bank,
                                                                const double* xi);

// Max deviation of conj(P)^T P from the identity over seeded random xi.
double polyphase_unitarity_residual(const FilterBank& bank, std::size_t samples);

// Periodized support indicator: contains(xi) when the lattice sum of |g| over
// 2 pi Z^d shifts exceeds the threshold. The sum is finite because generator
// supports are compact (bounding_radius).
struct SupportIndicator {
  bool everywhere = false;
  double threshold = 1e-13;
  Generator g;

  bool contains(const double* xi) const;
};

SupportIndicator support_indicator(const Generator& g, double threshold = 1e-13);
SupportIndicator all_frequencies();

struct OepReport {
  ConditionReport diagonal;
  std::vector<ConditionReport> alias;

  bool passed() const;
  double max_residual() const;
};

// Filter-bank conditions between adjacent levels against the multiplier
// theta_next: on sigma and sigma_t the diagonal identity
//   theta(M^T xi) a(xi) conj(a_t(xi)) + sum_l b_l(xi) conj(b_t_l(xi))
//     = theta_next(xi),
// and for every nonzero coset offset omega the same bilinear form taken
// between xi and xi + 2 pi omega vanishes on sigma intersected with the
// shifted sigma_t. GridTooCoarse below 64 points per axis.
OepReport oep_residuals(const FilterBank& bank, const FilterBank& bank_t,
                        const Mask& theta_next, const SupportIndicator& sigma,
                        const SupportIndicator& sigma_t, const FrequencyGrid& grid,
                        double tolerance);
OepReport oep_residuals(const FilterBank& bank, const Mask& theta_next,
                        const SupportIndicator& sigma, const FrequencyGrid& grid,
                        double tolerance);

// Summable bounds C_n with |a_n(D_n xi) - 1| <= C_n |xi|^eps_exponent over
// the working box: explicit head entries, then the geometric continuation
// C_{n+1} = tail_ratio * C_n. A tail that cannot sum reports
// DivergentMaskBudget.
struct MaskBudget {
  std::vector<double> head;
  double tail_ratio = 0.0;
  double eps_exponent = 1.0;

  double at(int n) const;
  double total() const;
  double tail_after(int t) const;
};

struct ProductResult {
  std::vector<std::complex<double>> values;
  int factors = 0;
  double certificate = 0.0;
  double refeq_residual = 0.0;
};

// Truncated infinite product prod_{n=1..T} mask_at(n)(contraction_at(n) xi)
// over the grid. T is the smallest count whose truncation certificate
//   exp(2 C R^eps) * R^eps * tail_after(T),   C = budget total, R = box radius,
// clears the tolerance (force_factors >= 0 overrides T). refeq_residual
// reports how much factor T+1 would still move the product anywhere on the
// grid.
ProductResult nonstationary_product(const std::function<Mask(int)>& mask_at,
                                    const std::function<Mat(int)>& contraction_at,
                                    const FrequencyGrid& grid, const MaskBudget& budget,
                                    double tolerance, int force_factors = -1);

// Budget certifying the stationary lowpass mask of a scaling generator on
// grids whose box stays inside [-pi, pi]^d after one contraction (BadConfig
// otherwise): C_n = K_step * K_norm * lambda^{1-n} / ((lambda-1) c).
MaskBudget stationary_mask_budget(const Generator& phi, const FrequencyGrid& grid);

// res[i] = max over the grid of |theta_at(i+1)(N^i xi) - 1| for i < j_max:
// how far each multiplier is from flat at its own scale.
std::vector<double> theta_limit_residual(const std::function<Mask(int)>& theta_at,
                                         const DilationMatrix& m, const FrequencyGrid& grid,
                                         int j_max);

}  // namespace framelet
