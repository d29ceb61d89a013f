#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "framelet/dilation.hpp"
#include "framelet/generators.hpp"
#include "framelet/grid.hpp"
#include "framelet/mat.hpp"

namespace framelet {

// Smooth probe with a hard compact support box: evaluates to exactly zero
// outside [lo, hi].
struct TestFunction {
  int dim = 0;
  std::vector<double> lo, hi;
  bool smooth = true;
  std::function<std::complex<double>(const double*)> eval;

  std::complex<double> operator()(const double* xi) const;
  // Euclidean radius of the farthest corner of the support box.
  double bounding_radius() const;
};

// Gaussian core times a product of unit-bump cutoffs (one per axis), times
// the complex exponential exp(i modulation . xi). Hard zero outside the box.
TestFunction modulated_bump(const std::vector<double>& center,
                            const std::vector<double>& half_width,
                            const std::vector<double>& modulation);

// The fixed 2-d probe set shared by the oracle suites.
std::vector<TestFunction> oracle_test_functions();

// One coarsest-scale generator family plus a wavelet family per octave,
// all under a single dilation. wavelets(j) returns the generators whose
// dilated copies live at octave j (undilated; the checks compose with N^j).
// termination_level(r) is the first octave at which every wavelet vanishes
// identically on inputs supported in the centered Euclidean ball of radius r.
struct FrequencySystem {
  DilationMatrix dilation;
  std::vector<Generator> scalings;
  std::function<std::vector<Generator>(int)> wavelets;
  bool stationary = true;
  std::function<int(double)> termination_level;

  std::vector<Generator> wavelets_at(int level) const;
};

FrequencySystem stationary_system(const Generator& phi, const Generator& psi);

// Quasi-stationary oriented 2-d family for the dilation 2I: octave j carries
// m * 2^floor(rho j) wedge members. Families are built on demand and cached.
FrequencySystem directional_system(int m, double rho, double eps_base);

// Pointwise correlation sum_l conj(a_l(xi)) b_l(xi + 2 pi k) sampled on the
// grid; defined as the zero function when k is not an integer vector.
std::vector<std::complex<double>> bracket_correlation(const std::vector<Generator>& a,
                                                      const std::vector<Generator>& b,
                                                      const std::vector<double>& k,
                                                      const FrequencyGrid& grid);

struct OracleResult {
  std::complex<double> lhs{};
  std::complex<double> rhs{};
  double diff = 0.0;
  // Cauchy-Schwarz bound on the coefficient mass discarded outside the k box.
  double truncation_bound = 0.0;
  // Lattice shifts surviving the support intersection on the integral side.
  int alias_terms = 0;
};

// Evaluates the same bilinear coefficient sum two independent ways: the
// translate-coefficient path (periodize, DFT, sum over the k box) against
// direct quadrature of the aliased integral form with its finite shift sum.
// The grid fixes the per-axis sample counts; u is any invertible matrix.
OracleResult bracket_product_oracle(const TestFunction& f, const TestFunction& g,
                                    const Generator& psi, const Generator& psi_tilde,
                                    const Mat& u, const FrequencyGrid& grid, int k_max);

// Fixed suite: probes from oracle_test_functions against the identity, twice
// the identity, and the quincunx transpose. One report per (matrix, probe).
std::vector<ConditionReport> bracket_oracle_suite(const Generator& psi, std::size_t per_axis,
                                                  int k_max, double tolerance);

struct PartialSumResult {
  // Aliased integral form of the truncated expansion.
  std::complex<double> value{};
  // Modulus of the disagreement with the coefficient-sum path.
  double cross_check = 0.0;
};

// Truncated frame expansion: coarse generators at octave `coarse` plus
// wavelet octaves coarse..finest-1, paired between f and g. Both evaluation
// paths of bracket_product_oracle are reused per level and member.
PartialSumResult partial_sum(const TestFunction& f, const TestFunction& g,
                             const FrequencySystem& sys, int coarse, int finest,
                             const FrequencyGrid& grid, int k_max);

enum class DualMode { tight_simple, stationary, nonstationary };

// Characterization residuals for a pair of systems sharing one dilation.
//   tight_simple: support separation, then the per-octave energy split.
//   stationary: the one-step recursion per integer shift k in the overlap
//     ball (shifts without support overlap included for honesty).
//   nonstationary: alias cancellation per certified nonzero lattice shift,
//     plus the saturation profile of the zero-shift partial sums at `levels`
//     (profile rows for unsaturated levels fail their row honestly).
std::vector<ConditionReport> dual_frame_condition_residuals(
    const FrequencySystem& sys, const FrequencySystem& sys_tilde, const FrequencyGrid& grid,
    const std::vector<int>& levels, DualMode mode, double tolerance);

// Residual of the adjacent-level consistency identity: correlations of the
// level generators against the contracted next-level correlation, maximized
// over integer shifts with support overlap.
ConditionReport mra_consistency_residual(const std::vector<Generator>& phi_level,
                                         const std::vector<Generator>& psi_level,
                                         const std::vector<Generator>& phi_next,
                                         const DilationMatrix& m, const FrequencyGrid& grid,
                                         double tolerance);

struct ParsevalResult {
  double ratio = 1.0;
  int terminal_level = 0;
  double total = 0.0;
  double reference = 0.0;
};

// Accumulates coefficient energy octave by octave (Parseval form on the
// torus, no truncation) until the increment drops to tol times the reference
// energy (2 pi)^d |f|^2. For the constructed generators the increments hit
// exact zero once the contracted support enters the wavelet-free plateau.
ParsevalResult parseval_energy_test(const TestFunction& f, const FrequencySystem& sys,
                                    int coarse, std::size_t per_axis, double tol,
                                    int level_cap = 64);

// Support-arithmetic prediction of the terminal octave.
int predicted_termination_level(const TestFunction& f, const FrequencySystem& sys);

// Max over a fixed-seed ensemble of random band-limited probes of total
// coefficient energy per unit input energy. Estimates (2 pi)^d for tight
// systems; empty systems give 0.
double bessel_bound_estimate(const FrequencySystem& sys, int coarse, int ensemble_size,
                             std::size_t per_axis);

}  // namespace framelet
