#include "framelet/generators.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "framelet/windows.hpp"

namespace framelet {
namespace {

// Per-call scratch for mapped frequency points; stays on the stack for the
// dimensions this library targets.
struct Scratch {
  double stack[8];
  std::vector<double> heap;
  double* get(int dim) {
    if (dim <= 8) return stack;
    heap.assign(static_cast<std::size_t>(dim), 0.0);
    return heap.data();
  }
};

const FrequencyPair& pair_of(const Generator& g, const char* who) {
  if (!g.pair) fail(Errc::BadConfig, std::string(who) + " needs a generator with shared pair state");
  return *g.pair;
}

}  // namespace

double FrequencyPair::profile(double r) const {
  if (r <= c) return 1.0;
  const double outer = lambda * c;
  if (r >= outer) return 0.0;
  return smooth_step((outer - r) / (outer - c));
}

Generator construct_phi(const DilationMatrix& m, double lambda0, double norm_epsilon) {
  if (!m.expansive) fail(Errc::NotExpansive, "scaling generator needs an expansive dilation");
  if (!(lambda0 > 0.0 && lambda0 < 1.0))
    fail(Errc::DegenerateLambda0, "lambda0 must lie strictly between 0 and 1");
  auto pair = std::make_shared<FrequencyPair>();
  pair->dilation = m;
  pair->norm = build_adapted_norm(m.mt, norm_epsilon);
  if (!(pair->norm.lower_factor > 1.0))
    fail(Errc::NotExpansive, "adapted norm did not certify a contraction for (M^T)^{-1}");
  pair->lambda0 = lambda0;
  pair->lambda = pair->norm.lower_factor;
  pair->c = choose_support_radius(m, lambda0, pair->norm);

  Generator g;
  g.kind = GeneratorKind::scaling;
  g.dim = m.dim;
  g.support_inner = pair->c;
  g.support_outer = pair->lambda * pair->c;
  g.bounding_radius = pair->norm.euclid_radius(g.support_outer);
  g.eval = [pair](const double* xi) { return pair->profile(pair->norm(xi)); };
  g.pair = pair;
  return g;
}

Generator construct_phi(const DilationMatrix& m, double lambda0) {
  return construct_phi(m, lambda0, default_norm_epsilon(m));
}

Generator construct_psi(const Generator& phi) {
  const FrequencyPair& state = pair_of(phi, "wavelet construction");
  auto pair = phi.pair;
  const auto parent = phi.eval;

  Generator g;
  g.kind = GeneratorKind::wavelet;
  g.dim = phi.dim;
  g.support_inner = state.c;
  g.support_outer = state.norm.upper_factor * state.lambda * state.c;
  g.bounding_radius = state.norm.euclid_radius(g.support_outer);
  g.eval = [pair, parent](const double* xi) -> double {
    Scratch s;
    double* y = s.get(pair->dilation.dim);
    pair->dilation.n.apply(xi, y);
    const double wide = parent(y);
    const double narrow = parent(xi);
    const double radicand = wide * wide - narrow * narrow;
    if (radicand <= 0.0) {
      if (radicand < -1e-15)
        fail(Errc::NegativeRadicand, "scaling symbol grows across a contraction step");
      return 0.0;
    }
    // sqrt(wide^2) == wide, computed without the squaring round-trip: deep in
    // the tail wide^2 is subnormal and the round-trip would cost ~8 bits.
    if (narrow == 0.0) return wide;
    return std::sqrt(radicand);
  };
  g.pair = pair;

  // Probe the support box; evaluation itself raises NegativeRadicand on a
  // broken parent, so the construction fails eagerly rather than mid-scan.
  std::mt19937_64 rng(0x5EEDULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double box = g.bounding_radius * 1.05;
  std::vector<double> xi(static_cast<std::size_t>(g.dim));
  for (int i = 0; i < 100000; ++i) {
    for (int a = 0; a < g.dim; ++a) xi[static_cast<std::size_t>(a)] = box * u(rng);
    (void)g.eval(xi.data());
  }
  return g;
}

ConditionReport calderon_residual(const Generator& phi, const Generator& psi,
                                  const FrequencyGrid& grid, int level_from,
                                  int level_to, double tolerance) {
  const FrequencyPair& state = pair_of(phi, "telescoping residual");
  if (level_from >= level_to) fail(Errc::BadConfig, "telescoping needs level_from < level_to");
  if (grid.dim() != phi.dim || psi.dim != phi.dim)
    fail(Errc::SizeMismatch, "grid and generators must share a dimension");

  std::vector<Mat> contract;
  contract.reserve(static_cast<std::size_t>(level_to - level_from + 1));
  for (int j = level_from; j <= level_to; ++j) contract.push_back(mat_power(state.dilation.n, j));

  const std::size_t steps = contract.size();
  Residual r = scan_grid(grid, [&](const double* xi) {
    Scratch s;
    double* y = s.get(phi.dim);
    contract.front().apply(xi, y);
    const double head = phi.eval(y);
    double acc = head * head;
    for (std::size_t k = 0; k + 1 < steps; ++k) {
      contract[k].apply(xi, y);
      const double w = psi.eval(y);
      acc += w * w;
    }
    contract.back().apply(xi, y);
    const double tail = phi.eval(y);
    return std::fabs(acc - tail * tail);
  });

  char id[64];
  std::snprintf(id, sizeof(id), "calderon:j0=%d:j1=%d", level_from, level_to);
  return r.report(id, tolerance);
}

ConditionReport calderon_residual(const Generator& phi, const Generator& psi,
                                  const FrequencyGrid& grid, double tolerance) {
  return calderon_residual(phi, psi, grid, 0, 1, tolerance);
}

double lowpass_limit_residual(const Generator& phi, const FrequencyGrid& grid, int level) {
  const FrequencyPair& state = pair_of(phi, "lowpass limit residual");
  if (grid.dim() != phi.dim) fail(Errc::SizeMismatch, "grid and generator must share a dimension");
  const Mat p = mat_power(state.dilation.n, level);
  Residual r = scan_grid(grid, [&](const double* xi) {
    Scratch s;
    double* y = s.get(phi.dim);
    p.apply(xi, y);
    const double v = phi.eval(y);
    return std::fabs(1.0 - v * v);
  });
  return r.max;
}

int saturation_level(const Generator& phi, double euclid_radius) {
  const FrequencyPair& state = pair_of(phi, "saturation level");
  const double reach = state.norm.adapted_bound(euclid_radius);
  if (reach <= state.c) return 0;
  int j = static_cast<int>(std::ceil(std::log(reach / state.c) / std::log(state.lambda)));
  if (j < 0) j = 0;
  while (j > 0 && reach * std::pow(state.lambda, -(j - 1)) <= state.c) --j;
  while (reach * std::pow(state.lambda, -j) > state.c) {
    ++j;
    if (j > 1024) fail(Errc::NoConvergence, "saturation level did not stabilize");
  }
  return j;
}

}  // namespace framelet
