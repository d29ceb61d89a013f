// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every check rebuilds its own objects so the criteria stay independent.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "framelet/dilation.hpp"
#include "framelet/directional.hpp"
#include "framelet/filterbank.hpp"
#include "framelet/generators.hpp"
#include "framelet/transform.hpp"
#include "framelet/verify.hpp"

using namespace framelet;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct NamedMatrix {
  const char* name;
  Mat entries;
};

std::vector<NamedMatrix> test_matrices() {
  return {{"dyadic-1d", Mat::scalar(1, 2.0)},
          {"dyadic-2d", Mat::scalar(2, 2.0)},
          {"quincunx", Mat::from_rows({{1.0, 1.0}, {1.0, -1.0}})},
          {"shear", Mat::from_rows({{2.0, 1.0}, {0.0, 2.0}})}};
}

struct Pair {
  Generator phi;
  Generator psi;
};

Pair constructed_pair(const Mat& entries, double lambda0 = 0.8) {
  Generator phi = construct_phi(analyze_dilation(entries), lambda0);
  Generator psi = construct_psi(phi);
  return {std::move(phi), std::move(psi)};
}

char buf[512];

Outcome square_identity_across_dilations() {
  double worst = 0.0, slowest = 0.0;
  for (const auto& [name, entries] : test_matrices()) {
    const auto t0 = std::chrono::steady_clock::now();
    const Pair p = constructed_pair(entries);
    const auto grid = FrequencyGrid::standard_torus(entries.dim(), 512);
    const ConditionReport r = calderon_residual(p.phi, p.psi, grid, 1e-12);
    const double took = seconds_since(t0);
    slowest = std::max(slowest, took);
    worst = std::max(worst, r.max_residual);
    if (!r.passed || took >= 10.0) {
      std::snprintf(buf, sizeof buf, "%s: residual %.3g in %.2f s", name, r.max_residual, took);
      return {false, buf};
    }
  }
  std::snprintf(buf, sizeof buf, "4 dilations at 512^d: max residual %.3g, slowest %.2f s",
                worst, slowest);
  return {true, buf};
}

double rows_max(const std::vector<ConditionReport>& rows, bool* all_passed) {
  double worst = 0.0;
  *all_passed = !rows.empty();
  for (const auto& r : rows) {
    worst = std::max(worst, r.max_residual);
    *all_passed = *all_passed && r.passed;
  }
  return worst;
}

Outcome tightness_and_mutant() {
  const Pair p = constructed_pair(Mat::scalar(2, 2.0));
  const auto grid = FrequencyGrid::standard_torus(2, 512);
  const std::vector<int> levels{0, 1, 2, 3, 4};

  bool ok = false;
  const auto stat = dual_frame_condition_residuals(stationary_system(p.phi, p.psi),
                                                   stationary_system(p.phi, p.psi), grid, levels,
                                                   DualMode::tight_simple, 1e-12);
  const double stat_max = rows_max(stat, &ok);
  if (!ok) return {false, "stationary system failed the tightness rows"};

  const auto dsys = directional_system(4, 0.5, 0.0);
  const auto dir = dual_frame_condition_residuals(dsys, dsys, grid, levels,
                                                  DualMode::tight_simple, 1e-12);
  const double dir_max = rows_max(dir, &ok);
  if (!ok) return {false, "directional family failed the tightness rows"};

  Generator damped = p.psi;
  damped.eval = [base = p.psi.eval](const double* xi) { return 0.9 * base(xi); };
  const auto broken = dual_frame_condition_residuals(stationary_system(p.phi, damped),
                                                     stationary_system(p.phi, damped), grid,
                                                     levels, DualMode::tight_simple, 1e-12);
  double peak_psi2 = 0.0;
  {
    std::vector<double> xi(2);
    for (std::size_t i = 0; i < grid.total_points(); ++i) {
      grid.point(i, xi.data());
      peak_psi2 = std::max(peak_psi2, p.psi(xi.data()) * p.psi(xi.data()));
    }
  }
  const double expected = 0.19 * peak_psi2;
  double mutant_peak = 0.0;
  bool any_failed = false;
  for (const auto& r : broken) {
    any_failed = any_failed || !r.passed;
    mutant_peak = std::max(mutant_peak, r.max_residual);
  }
  if (!any_failed) return {false, "damped wavelet passed the tightness rows"};
  if (std::fabs(mutant_peak - expected) > 0.1 * expected) {
    std::snprintf(buf, sizeof buf, "damped wavelet residual %.6g, expected %.6g +- 10%%",
                  mutant_peak, expected);
    return {false, buf};
  }
  std::snprintf(buf, sizeof buf,
                "stationary %.3g, directional %.3g; damped wavelet fails at %.4g (expected %.4g)",
                stat_max, dir_max, mutant_peak, expected);
  return {true, buf};
}

Outcome coefficient_oracle() {
  const Pair p = constructed_pair(Mat::scalar(2, 2.0));
  const auto rows = bracket_oracle_suite(p.psi, 1024, 128, 1e-8);
  bool ok = false;
  const double worst = rows_max(rows, &ok);
  if (rows.size() != 15) {
    std::snprintf(buf, sizeof buf, "expected 15 suite rows, got %zu", rows.size());
    return {false, buf};
  }
  std::snprintf(buf, sizeof buf, "5 probes x 3 matrices, max |lhs - rhs| = %.3g", worst);
  return {ok, buf};
}

Outcome energy_saturation() {
  const auto t0 = std::chrono::steady_clock::now();
  const Pair p = constructed_pair(Mat::scalar(2, 2.0));
  const auto sys = stationary_system(p.phi, p.psi);
  const TestFunction f = modulated_bump({0.0, 0.0}, {M_PI / 2, M_PI / 2}, {1.0, -1.0});
  const int predicted = predicted_termination_level(f, sys);
  const ParsevalResult r = parseval_energy_test(f, sys, 0, 512, 1e-9);
  const double took = seconds_since(t0);
  if (std::fabs(r.ratio - 1.0) >= 1e-8) {
    std::snprintf(buf, sizeof buf, "energy ratio off by %.3g", std::fabs(r.ratio - 1.0));
    return {false, buf};
  }
  if (r.terminal_level != predicted) {
    std::snprintf(buf, sizeof buf, "stopped at octave %d, support predicts %d", r.terminal_level,
                  predicted);
    return {false, buf};
  }
  if (took >= 30.0) {
    std::snprintf(buf, sizeof buf, "took %.1f s at 512^2", took);
    return {false, buf};
  }
  std::snprintf(buf, sizeof buf, "ratio - 1 = %.3g, stopped exactly at octave %d, %.1f s at 512^2",
                r.ratio - 1.0, predicted, took);
  return {true, buf};
}

Outcome filter_bank_identities() {
  const Pair p = constructed_pair(Mat::scalar(2, 2.0));
  const auto grid = FrequencyGrid::standard_torus(2, 512);
  const FilterBank bank = derive_masks(p.phi, p.psi, 0.8);
  const ConditionReport low = refinement_residual(bank.lowpass, p.phi, p.phi, grid, 1e-13);
  const ConditionReport high = refinement_residual(bank.highpass.at(0), p.phi, p.psi, grid, 1e-13);
  if (!low.passed || !high.passed) {
    std::snprintf(buf, sizeof buf, "refinement residuals %.3g / %.3g", low.max_residual,
                  high.max_residual);
    return {false, buf};
  }
  const Mask theta = constant_mask(2, bank.dilation.mt, 1.0, "theta");
  const OepReport oep =
      oep_residuals(bank, theta, support_indicator(p.phi), grid, 1e-12);
  if (!oep.passed()) {
    std::snprintf(buf, sizeof buf, "filter-bank identity residual %.3g", oep.max_residual());
    return {false, buf};
  }
  const double haar = polyphase_unitarity_residual(haar_bank(), 10000);
  if (haar >= 1e-14) {
    std::snprintf(buf, sizeof buf, "dyadic polyphase deviation %.3g", haar);
    return {false, buf};
  }
  std::snprintf(buf, sizeof buf,
                "refinement %.3g / %.3g, diagonal+alias %.3g, dyadic polyphase %.3g",
                low.max_residual, high.max_residual, oep.max_residual(), haar);
  return {true, buf};
}

Outcome product_certificate() {
  const Pair p = constructed_pair(Mat::scalar(2, 2.0));
  const FilterBank bank = derive_masks(p.phi, p.psi, 0.8);
  const auto grid = FrequencyGrid::standard_torus(2, 256);
  const MaskBudget budget = stationary_mask_budget(p.phi, grid);
  const Mat n = p.phi.pair->dilation.n;
  auto mask_at = [&bank](int) { return bank.lowpass; };
  auto contraction_at = [&n](int k) { return mat_power(n, k); };
  const ProductResult run = nonstationary_product(mask_at, contraction_at, grid, budget, 1e-10);
  const ProductResult longer =
      nonstationary_product(mask_at, contraction_at, grid, budget, 1e-10, run.factors + 10);
  double moved = 0.0;
  for (std::size_t i = 0; i < run.values.size(); ++i)
    moved = std::max(moved, std::abs(longer.values[i] - run.values[i]));
  if (moved > run.certificate) {
    std::snprintf(buf, sizeof buf, "10 extra factors moved %.3g, certificate %.3g", moved,
                  run.certificate);
    return {false, buf};
  }
  std::vector<double> xi(2);
  double apart = 0.0;
  for (std::size_t i = 0; i < grid.total_points(); ++i) {
    grid.point(i, xi.data());
    apart = std::max(apart, std::abs(run.values[i] - p.phi(xi.data())));
  }
  if (apart >= 1e-10) {
    std::snprintf(buf, sizeof buf, "product misses the scaling symbol by %.3g", apart);
    return {false, buf};
  }
  std::snprintf(buf, sizeof buf,
                "%d factors, certificate %.3g, 10 more moved %.3g, symbol gap %.3g", run.factors,
                run.certificate, moved, apart);
  return {true, buf};
}

Outcome wedge_tiling_and_counts() {
  const auto line = analyze_dilation(Mat::scalar(1, 2.0));
  Generator radial_phi = construct_phi(line, 0.8);
  Generator radial_psi = construct_psi(radial_phi);

  double worst_tiling = 0.0;
  for (int j = 0; j <= 4; ++j) {
    const auto fam = build_directional_family_2d(4, 0.5, j, 0.0, radial_phi, radial_psi);
    const double r = partition_tiling_residual(fam.partition, 1u << 14);
    worst_tiling = std::max(worst_tiling, r);
    if (r >= 1e-12) {
      std::snprintf(buf, sizeof buf, "octave %d tiling residual %.3g", j, r);
      return {false, buf};
    }
  }

  const double rhos[] = {0.0, 1.0 / 3.0, 0.5};
  const int dens[] = {1, 3, 2};  // rho = 0, 1/3, 1/2; floor(rho j) = j / den (except rho = 0)
  for (int m = 1; m <= 8; ++m)
    for (int r = 0; r < 3; ++r)
      for (int j = 0; j <= 6; ++j) {
        const int expected = m << (r == 0 ? 0 : j / dens[r]);
        const auto fam = build_directional_family_2d(m, rhos[r], j, 0.0, radial_phi, radial_psi);
        if (fam.count != expected || int(fam.members.size()) != expected) {
          std::snprintf(buf, sizeof buf, "m=%d rho=%.3f j=%d: %d members, expected %d", m,
                        rhos[r], j, fam.count, expected);
          return {false, buf};
        }
      }
  std::snprintf(buf, sizeof buf,
                "tiling residual %.3g over octaves 0..4; counts match for 168 (m, rho, j) cells",
                worst_tiling);
  return {true, buf};
}

std::vector<std::complex<double>> random_samples(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> out(n);
  for (auto& v : out) v = {u(rng), u(rng)};
  return out;
}

Outcome transform_round_trip() {
  const auto iso = make_plan_isotropic(2, 256, 4);
  const auto dir = make_plan_directional(256, 4, 4, 0.5);
  const auto f = random_samples(iso->total_bins(), 97);
  const double r_iso = pr_residual(f, iso);
  const double r_dir = pr_residual(f, dir);
  if (r_iso >= 1e-10 || r_dir >= 1e-10) {
    std::snprintf(buf, sizeof buf, "round-trip %.3g (isotropic) / %.3g (directional)", r_iso,
                  r_dir);
    return {false, buf};
  }

  const auto pf = analyze(f, dir);
  CoefficientPyramid q;
  q.plan = dir;
  for (const auto& band : pf.bands) q.bands.push_back(random_samples(band.size(), 98));
  const auto back = synthesize(q);
  std::complex<double> lhs{}, rhs{};
  for (std::size_t b = 0; b < q.bands.size(); ++b)
    for (std::size_t i = 0; i < q.bands[b].size(); ++i)
      lhs += pf.bands[b][i] * std::conj(q.bands[b][i]);
  for (std::size_t i = 0; i < f.size(); ++i) rhs += f[i] * std::conj(back[i]);
  const double adj = std::abs(lhs - rhs);
  if (adj >= 1e-11) {
    std::snprintf(buf, sizeof buf, "adjoint identity off by %.3g", adj);
    return {false, buf};
  }
  std::snprintf(buf, sizeof buf,
                "N=256: round-trip %.3g (isotropic) / %.3g (directional), adjoint gap %.3g",
                r_iso, r_dir, adj);
  return {true, buf};
}

Outcome norm_sandwich() {
  for (const auto& [name, entries] : test_matrices()) {
    const DilationMatrix dm = analyze_dilation(entries);
    const AdaptedNorm norm = build_adapted_norm(dm, default_norm_epsilon(dm));
    const int d = dm.dim;
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(std::size_t(d), 0.0), ax(std::size_t(d), 0.0);
    for (int trial = 0; trial < 10000; ++trial) {
      for (auto& v : x) v = u(rng);
      dm.m.apply(x.data(), ax.data());
      const double nx = norm(x.data());
      const double nax = norm(ax.data());
      if (norm.exact_ratio) {
        if (std::fabs(nax - norm.lower_factor * nx) > 1e-14 * (nax + nx)) {
          std::snprintf(buf, sizeof buf, "%s: conformal action off by %.3g", name,
                        std::fabs(nax - norm.lower_factor * nx));
          return {false, buf};
        }
      }
      if (nax < norm.lower_factor * nx * (1.0 - 1e-12) ||
          nax > norm.upper_factor * nx * (1.0 + 1e-12)) {
        std::snprintf(buf, sizeof buf, "%s: |Mx| = %.17g outside [%.17g, %.17g]", name, nax,
                      norm.lower_factor * nx, norm.upper_factor * nx);
        return {false, buf};
      }
    }
  }
  return {true, "sandwich holds on 10^4 points per matrix; conformal actions exact to 1e-14"};
}

Outcome adjacent_level_consistency() {
  const Pair p = constructed_pair(Mat::scalar(2, 2.0));
  const auto grid = FrequencyGrid::standard_torus(2, 512);
  const ConditionReport r = mra_consistency_residual({p.phi}, {p.psi}, {p.phi},
                                                     p.phi.pair->dilation, grid, 1e-12);
  std::snprintf(buf, sizeof buf, "adjacent-level residual %.3g", r.max_residual);
  return {r.passed, buf};
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"single-scale square identity across dilations", square_identity_across_dilations},
      {"multi-scale tightness and the damped-wavelet mutant", tightness_and_mutant},
      {"coefficient sums against aliased integrals", coefficient_oracle},
      {"energy saturation at the support-predicted octave", energy_saturation},
      {"refinement, diagonal+alias, and dyadic polyphase identities", filter_bank_identities},
      {"truncated product certificate and symbol recovery", product_certificate},
      {"wedge tiling residuals and member counts", wedge_tiling_and_counts},
      {"transform round-trip and adjoint identity", transform_round_trip},
      {"adapted-norm sandwich on random points", norm_sandwich},
      {"adjacent-level consistency of the constructed system", adjacent_level_consistency},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::printf("[%s] %2d %s: %s\n", o.ok ? "PASS" : "FAIL", index, c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  if (failed) std::printf("%d of 10 criteria failed\n", failed);
  return failed ? 1 : 0;
}
