#include "framelet/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "framelet/parallel.hpp"
#include "framelet/windows.hpp"

namespace framelet {
namespace {

constexpr int kMaxMaskDim = 8;

double reduce_to_cell(double x) {
  return x - 2.0 * M_PI * std::floor((x + M_PI) / (2.0 * M_PI));
}

void check_mask_dim(int dim) {
  if (dim < 1 || dim > kMaxMaskDim)
    fail(Errc::SizeMismatch, "mask dimension must lie in 1..8");
}

const FrequencyPair& pair_of(const Generator& g, const char* who) {
  if (!g.pair) fail(Errc::BadConfig, std::string(who) + " needs library-built generators");
  return *g.pair;
}

// Largest Euclidean point norm attained on a box grid: coordinates extremize
// independently.
double grid_corner_radius(const FrequencyGrid& grid) {
  double sum = 0.0;
  for (const auto& ax : grid.axes()) {
    const double last = ax.origin + ax.step * static_cast<double>(ax.count - 1);
    const double reach = std::max(std::fabs(ax.origin), std::fabs(last));
    sum += reach * reach;
  }
  return std::sqrt(sum);
}

void check_oep_grid(const FrequencyGrid& grid) {
  for (const auto& ax : grid.axes())
    if (ax.count < 64)
      fail(Errc::GridTooCoarse, "filter-bank identities need at least 64 points per axis");
}

}  // namespace

std::complex<double> Mask::operator()(const double* xi) const {
  double red[kMaxMaskDim];
  for (int a = 0; a < dim; ++a) red[a] = reduce_to_cell(xi[a]);
  std::complex<double> v = base(red);
  if (!mod_k.empty()) {
    double y[kMaxMaskDim];
    mt.apply(red, y);
    double phase = 0.0;
    for (int a = 0; a < dim; ++a) phase += mod_k[static_cast<std::size_t>(a)] * y[a];
    v *= std::polar(1.0, -phase);
  }
  return v;
}

Mask constant_mask(int dim, const Mat& mt, std::complex<double> value, std::string label) {
  check_mask_dim(dim);
  Mask m;
  m.dim = dim;
  m.mt = mt;
  m.base = [value](const double*) { return value; };
  m.label = std::move(label);
  return m;
}

Mask modulated(const Mask& mask, const std::vector<double>& k) {
  if (static_cast<int>(k.size()) != mask.dim)
    fail(Errc::SizeMismatch, "modulation index length must match the mask dimension");
  for (double v : k)
    if (std::fabs(v - std::round(v)) > 1e-9)
      fail(Errc::NotInteger, "modulation index must be integral");
  Mask out = mask;
  out.mod_k = k;
  out.label += ":modulated";
  return out;
}

FilterBank derive_masks(const Generator& phi, const Generator& psi, double lambda0,
                        double eps0) {
  const FrequencyPair& state = pair_of(phi, "mask derivation");
  check_mask_dim(phi.dim);
  if (psi.dim != phi.dim) fail(Errc::SizeMismatch, "generator dimensions differ");
  if (!state.dilation.is_integer)
    fail(Errc::NotInteger, "mask derivation needs an integer dilation");
  if (!state.dilation.expansive)
    fail(Errc::NotExpansive, "mask derivation needs an expansive dilation");
  if (phi.bounding_radius > lambda0 * M_PI * (1.0 + 1e-12))
    fail(Errc::BadConfig, "cutoff plateau does not cover the scaling support");

  const TensorCutoff h(phi.dim, lambda0, eps0);
  const Mat mt = state.dilation.mt;
  const int dim = phi.dim;
  const auto phi_eval = phi.eval;
  const auto psi_eval = psi.eval;

  FilterBank bank;
  bank.dilation = state.dilation;

  bank.lowpass.dim = dim;
  bank.lowpass.mt = mt;
  bank.lowpass.label = "lowpass";
  bank.lowpass.base = [phi_eval, mt, dim](const double* xi) {
    double y[kMaxMaskDim];
    mt.apply(xi, y);
    return std::complex<double>(phi_eval(y), 0.0);
  };

  Mask b;
  b.dim = dim;
  b.mt = mt;
  b.label = "highpass";
  b.base = [phi_eval, psi_eval, h, mt, dim](const double* xi) {
    double y[kMaxMaskDim];
    mt.apply(xi, y);
    const double wavelet = psi_eval(y);
    const double den = phi_eval(xi);
    const double cut = h(std::span<const double>(xi, static_cast<std::size_t>(dim)));
    if (den > 0.0) return std::complex<double>(cut * (wavelet / den), 0.0);
    return std::complex<double>(cut, 0.0);
  };
  bank.highpass.push_back(std::move(b));
  bank.theta = constant_mask(dim, mt, {1.0, 0.0}, "theta:one");
  return bank;
}

FilterBank derive_masks(const Generator& phi, const Generator& psi, double lambda0) {
  return derive_masks(phi, psi, lambda0, (1.0 - lambda0) / 2.0);
}

FilterBank derive_directional_masks(const DirectionalFamily& family, double lambda0,
                                    double eps0) {
  if (!family.phi.eval || !family.psi.eval)
    fail(Errc::BadConfig, "directional masks need a family built from a radial pair");
  FilterBank bank = derive_masks(family.phi, family.psi, lambda0, eps0);
  const Mask b0 = bank.highpass.front();
  bank.highpass.clear();
  for (int l = 0; l < family.count; ++l) {
    const auto window = family.partition.windows[static_cast<std::size_t>(l)];
    Mask bl;
    bl.dim = b0.dim;
    bl.mt = b0.mt;
    char name[32];
    std::snprintf(name, sizeof(name), "highpass:%d", l);
    bl.label = name;
    const auto base0 = b0.base;
    const int dim = b0.dim;
    bl.base = [base0, window, dim](const double* xi) {
      const std::complex<double> v = base0(xi);
      if (v == std::complex<double>(0.0, 0.0)) return v;
      double norm2 = 0.0;
      for (int a = 0; a < dim; ++a) norm2 += xi[a] * xi[a];
      if (norm2 == 0.0) return std::complex<double>(0.0, 0.0);
      double u[kMaxMaskDim];
      const double inv = 1.0 / std::sqrt(norm2);
      for (int a = 0; a < dim; ++a) u[a] = xi[a] * inv;
      return v * window(u);
    };
    bank.highpass.push_back(std::move(bl));
  }
  bank.level = family.level;
  bank.stationary = false;
  return bank;
}

FilterBank derive_directional_masks(const DirectionalFamily& family, double lambda0) {
  return derive_directional_masks(family, lambda0, (1.0 - lambda0) / 2.0);
}

FilterBank haar_bank() {
  const DilationMatrix m = analyze_dilation(Mat::scalar(1, 2.0));
  FilterBank bank;
  bank.dilation = m;
  bank.lowpass.dim = 1;
  bank.lowpass.mt = m.mt;
  bank.lowpass.label = "haar:lowpass";
  bank.lowpass.base = [](const double* xi) {
    return 0.5 * (1.0 + std::polar(1.0, -xi[0]));
  };
  Mask b;
  b.dim = 1;
  b.mt = m.mt;
  b.label = "haar:highpass";
  b.base = [](const double* xi) { return 0.5 * (1.0 - std::polar(1.0, -xi[0])); };
  bank.highpass.push_back(std::move(b));
  bank.theta = constant_mask(1, m.mt, {1.0, 0.0}, "theta:one");
  return bank;
}

ConditionReport refinement_residual(const Mask& mask, const Generator& parent,
                                    const Generator& child, const FrequencyGrid& grid,
                                    double tolerance) {
  if (grid.dim() != mask.dim || parent.dim != mask.dim || child.dim != mask.dim)
    fail(Errc::SizeMismatch, "mask, generators and grid must share a dimension");
  const Mat mt = mask.mt;
  Residual r = scan_grid(grid, [&](const double* xi) {
    double y[kMaxMaskDim];
    mt.apply(xi, y);
    const std::complex<double> lhs(child.eval(y), 0.0);
    const std::complex<double> rhs = mask(xi) * parent.eval(xi);
    return std::abs(lhs - rhs);
  });
  return r.report("refinement:" + mask.label, tolerance);
}

std::vector<std::vector<std::complex<double>>> polyphase_matrix(const FilterBank& bank,
                                                                const double* xi) {
  const CosetSet cosets = coset_representatives(bank.dilation);
  const std::size_t cols = cosets.omega.size();
  const std::size_t rows = 1 + bank.highpass.size();
  const int dim = bank.lowpass.dim;
  std::vector<std::vector<std::complex<double>>> p(rows);
  double shifted[kMaxMaskDim];
  for (std::size_t c = 0; c < cols; ++c) {
    for (int a = 0; a < dim; ++a)
      shifted[a] = xi[a] + 2.0 * M_PI * cosets.omega[c][static_cast<std::size_t>(a)];
    p[0].push_back(bank.lowpass(shifted));
    for (std::size_t h = 0; h < bank.highpass.size(); ++h)
      p[h + 1].push_back(bank.highpass[h](shifted));
  }
  return p;
}

double polyphase_unitarity_residual(const FilterBank& bank, std::size_t samples) {
  const int dim = bank.lowpass.dim;
  std::mt19937_64 rng(0x5EEDULL);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  double worst = 0.0;
  std::vector<double> xi(static_cast<std::size_t>(dim));
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& c : xi) c = u(rng);
    const auto p = polyphase_matrix(bank, xi.data());
    const std::size_t cols = p.front().size();
    for (std::size_t i = 0; i < cols; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& row : p) acc += std::conj(row[i]) * row[j];
        const std::complex<double> want(i == j ? 1.0 : 0.0, 0.0);
        worst = std::max(worst, std::abs(acc - want));
      }
    }
  }
  return worst;
}

bool SupportIndicator::contains(const double* xi) const {
  if (everywhere) return true;
  const int dim = g.dim;
  // Enumerate 2 pi k shifts that can land inside the support ball.
  long long lo[kMaxMaskDim];
  long long hi[kMaxMaskDim];
  for (int a = 0; a < dim; ++a) {
    lo[a] = static_cast<long long>(std::ceil((-g.bounding_radius - xi[a]) / (2.0 * M_PI)));
    hi[a] = static_cast<long long>(std::floor((g.bounding_radius - xi[a]) / (2.0 * M_PI)));
    if (lo[a] > hi[a]) return false;
  }
  double sum = 0.0;
  long long k[kMaxMaskDim];
  for (int a = 0; a < dim; ++a) k[a] = lo[a];
  double point[kMaxMaskDim];
  while (true) {
    for (int a = 0; a < dim; ++a)
      point[a] = xi[a] + 2.0 * M_PI * static_cast<double>(k[a]);
    sum += std::fabs(g.eval(point));
    if (sum > threshold) return true;
    int axis = dim - 1;
    while (axis >= 0) {
      if (++k[axis] <= hi[axis]) break;
      k[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) return false;
  }
}

SupportIndicator support_indicator(const Generator& g, double threshold) {
  if (!g.eval) fail(Errc::BadConfig, "support indicator needs a generator");
  check_mask_dim(g.dim);
  SupportIndicator s;
  s.g = g;
  s.threshold = threshold;
  return s;
}

SupportIndicator all_frequencies() {
  SupportIndicator s;
  s.everywhere = true;
  return s;
}

bool OepReport::passed() const {
  if (!diagonal.passed) return false;
  for (const auto& a : alias)
    if (!a.passed) return false;
  return true;
}

double OepReport::max_residual() const {
  double m = diagonal.max_residual;
  for (const auto& a : alias) m = std::max(m, a.max_residual);
  return m;
}

OepReport oep_residuals(const FilterBank& bank, const FilterBank& bank_t,
                        const Mask& theta_next, const SupportIndicator& sigma,
                        const SupportIndicator& sigma_t, const FrequencyGrid& grid,
                        double tolerance) {
  check_oep_grid(grid);
  const int dim = bank.lowpass.dim;
  if (grid.dim() != dim || theta_next.dim != dim)
    fail(Errc::SizeMismatch, "bank, multiplier and grid must share a dimension");
  if (bank.highpass.size() != bank_t.highpass.size())
    fail(Errc::SizeMismatch, "dual banks must carry the same highpass count");

  const Mat mt = bank.dilation.mt;
  OepReport out;

  Residual diag = scan_grid(grid, [&](const double* xi) {
    if (!sigma.contains(xi) || !sigma_t.contains(xi)) return 0.0;
    double y[kMaxMaskDim];
    mt.apply(xi, y);
    std::complex<double> acc = bank.theta(y) * bank.lowpass(xi) * std::conj(bank_t.lowpass(xi));
    for (std::size_t l = 0; l < bank.highpass.size(); ++l)
      acc += bank.highpass[l](xi) * std::conj(bank_t.highpass[l](xi));
    return std::abs(acc - theta_next(xi));
  });
  out.diagonal = diag.report("oep:diagonal", tolerance);

  const CosetSet cosets = coset_representatives(bank.dilation);
  for (std::size_t w = 0; w < cosets.omega.size(); ++w) {
    bool zero = true;
    for (double v : cosets.omega[w]) zero = zero && v == 0.0;
    if (zero) continue;
    const std::vector<double>& omega = cosets.omega[w];
    Residual al = scan_grid(grid, [&](const double* xi) {
      double shifted[kMaxMaskDim];
      for (int a = 0; a < dim; ++a)
        shifted[a] = xi[a] + 2.0 * M_PI * omega[static_cast<std::size_t>(a)];
      if (!sigma.contains(xi) || !sigma_t.contains(shifted)) return 0.0;
      double y[kMaxMaskDim];
      mt.apply(xi, y);
      std::complex<double> acc =
          bank.theta(y) * bank.lowpass(xi) * std::conj(bank_t.lowpass(shifted));
      for (std::size_t l = 0; l < bank.highpass.size(); ++l)
        acc += bank.highpass[l](xi) * std::conj(bank_t.highpass[l](shifted));
      return std::abs(acc);
    });
    char id[48];
    std::snprintf(id, sizeof(id), "oep:alias:w=%zu", w);
    out.alias.push_back(al.report(id, tolerance));
  }
  return out;
}

OepReport oep_residuals(const FilterBank& bank, const Mask& theta_next,
                        const SupportIndicator& sigma, const FrequencyGrid& grid,
                        double tolerance) {
  return oep_residuals(bank, bank, theta_next, sigma, sigma, grid, tolerance);
}

double MaskBudget::at(int n) const {
  if (n < 1) fail(Errc::IndexOutOfRange, "budget entries start at n = 1");
  const int h = static_cast<int>(head.size());
  if (n <= h) return head[static_cast<std::size_t>(n - 1)];
  if (head.empty()) fail(Errc::BadConfig, "budget needs at least one explicit entry");
  if (tail_ratio < 0.0) fail(Errc::BadConfig, "budget tail ratio must be nonnegative");
  return head.back() * std::pow(tail_ratio, static_cast<double>(n - h));
}

double MaskBudget::total() const {
  if (head.empty()) fail(Errc::BadConfig, "budget needs at least one explicit entry");
  if (tail_ratio < 0.0) fail(Errc::BadConfig, "budget tail ratio must be nonnegative");
  double s = 0.0;
  for (double v : head) {
    if (v < 0.0) fail(Errc::BadConfig, "budget entries must be nonnegative");
    s += v;
  }
  if (head.back() == 0.0) return s;
  if (tail_ratio >= 1.0)
    fail(Errc::DivergentMaskBudget, "geometric tail with ratio >= 1 does not sum");
  return s + head.back() * tail_ratio / (1.0 - tail_ratio);
}

double MaskBudget::tail_after(int t) const {
  (void)total();  // runs the shared validity checks
  if (t < 0) t = 0;
  const int h = static_cast<int>(head.size());
  double s = 0.0;
  for (int n = t + 1; n <= h; ++n) s += head[static_cast<std::size_t>(n - 1)];
  if (head.back() == 0.0) return s;
  if (t < h) return s + head.back() * tail_ratio / (1.0 - tail_ratio);
  return head.back() * std::pow(tail_ratio, static_cast<double>(t - h + 1)) /
         (1.0 - tail_ratio);
}

ProductResult nonstationary_product(const std::function<Mask(int)>& mask_at,
                                    const std::function<Mat(int)>& contraction_at,
                                    const FrequencyGrid& grid, const MaskBudget& budget,
                                    double tolerance, int force_factors) {
  if (!(tolerance > 0.0)) fail(Errc::BadConfig, "product tolerance must be positive");
  const double c_total = budget.total();
  const double radius = grid_corner_radius(grid);
  const double reach = std::pow(radius, budget.eps_exponent);
  const double envelope = std::exp(2.0 * c_total * reach) * reach;

  int factors = 0;
  if (force_factors >= 0) {
    factors = force_factors;
  } else {
    while (envelope * budget.tail_after(factors) > tolerance) {
      ++factors;
      if (factors > 10000)
        fail(Errc::NoConvergence, "budget tail does not clear the tolerance");
    }
  }

  std::vector<Mask> masks;
  std::vector<Mat> maps;
  masks.reserve(static_cast<std::size_t>(factors) + 1);
  maps.reserve(static_cast<std::size_t>(factors) + 1);
  for (int n = 1; n <= factors + 1; ++n) {
    masks.push_back(mask_at(n));
    maps.push_back(contraction_at(n));
    check_mask_dim(masks.back().dim);
    if (masks.back().dim != grid.dim() || maps.back().dim() != grid.dim())
      fail(Errc::SizeMismatch, "mask factors must match the grid dimension");
  }

  ProductResult out;
  out.factors = factors;
  out.certificate = envelope * budget.tail_after(factors);
  const std::size_t total = grid.total_points();
  out.values.assign(total, std::complex<double>(1.0, 0.0));

  const std::size_t block = std::size_t{1} << 14;
  std::vector<double> block_refeq(block_count(total, block), 0.0);
  for_blocks(total, block, [&](std::size_t bi, std::size_t begin, std::size_t end) {
    std::vector<double> xi(static_cast<std::size_t>(grid.dim()));
    double y[kMaxMaskDim];
    double worst = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point(i, xi.data());
      std::complex<double> v(1.0, 0.0);
      for (int n = 0; n < factors; ++n) {
        maps[static_cast<std::size_t>(n)].apply(xi.data(), y);
        v *= masks[static_cast<std::size_t>(n)](y);
      }
      out.values[i] = v;
      maps[static_cast<std::size_t>(factors)].apply(xi.data(), y);
      const double step =
          std::abs(v) *
          std::abs(masks[static_cast<std::size_t>(factors)](y) - std::complex<double>(1.0, 0.0));
      worst = std::max(worst, step);
    }
    block_refeq[bi] = worst;
  });
  for (double v : block_refeq) out.refeq_residual = std::max(out.refeq_residual, v);
  return out;
}

MaskBudget stationary_mask_budget(const Generator& phi, const FrequencyGrid& grid) {
  const FrequencyPair& state = pair_of(phi, "stationary budget");
  if (grid.dim() != phi.dim) fail(Errc::SizeMismatch, "grid and generator must share a dimension");
  const double radius = grid_corner_radius(grid);
  const double contracted =
      state.norm.euclid_radius(state.norm.adapted_bound(radius) / state.lambda);
  if (contracted > M_PI * (1.0 + 1e-12))
    fail(Errc::BadConfig, "grid box wraps after one contraction; the budget bound needs a smaller box");

  MaskBudget b;
  const double k_step = smooth_step_max_slope();
  const double k_norm = state.norm.adapted_bound(1.0);
  b.head = {k_step * k_norm / ((state.lambda - 1.0) * state.c)};
  b.tail_ratio = 1.0 / state.lambda;
  b.eps_exponent = 1.0;
  return b;
}

std::vector<double> theta_limit_residual(const std::function<Mask(int)>& theta_at,
                                         const DilationMatrix& m, const FrequencyGrid& grid,
                                         int j_max) {
  if (j_max < 0) fail(Errc::BadConfig, "j_max must be nonnegative");
  std::vector<double> res;
  res.reserve(static_cast<std::size_t>(j_max));
  for (int i = 0; i < j_max; ++i) {
    const Mask theta = theta_at(i + 1);
    check_mask_dim(theta.dim);
    if (theta.dim != grid.dim()) fail(Errc::SizeMismatch, "multiplier and grid dimensions differ");
    const Mat contraction = mat_power(m.n, i);
    Residual r = scan_grid(grid, [&](const double* xi) {
      double y[kMaxMaskDim];
      contraction.apply(xi, y);
      return std::abs(theta(y) - std::complex<double>(1.0, 0.0));
    });
    res.push_back(r.max);
  }
  return res;
}

}  // namespace framelet
