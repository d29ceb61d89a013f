#include "framelet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "framelet/directional.hpp"
#include "framelet/fft.hpp"
#include "framelet/parallel.hpp"
#include "framelet/windows.hpp"

namespace framelet {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double two_pi_pow(int dim) { return std::pow(kTwoPi, dim); }

// Odometer over the integer box [lo, hi]^d, last axis fastest.
bool next_index(std::vector<long long>& k, long long lo, long long hi) {
  for (int a = int(k.size()) - 1; a >= 0; --a) {
    if (k[std::size_t(a)] < hi) {
      ++k[std::size_t(a)];
      return true;
    }
    k[std::size_t(a)] = lo;
  }
  return false;
}

// Rounds y to an integer vector; false when any entry is farther than the
// snap tolerance (the dilations in use produce exact dyadic entries, so a
// true non-integer misses by a wide margin).
bool snap_integer(const double* y, int dim, std::vector<long long>* out) {
  out->resize(std::size_t(dim));
  for (int a = 0; a < dim; ++a) {
    const double r = std::nearbyint(y[a]);
    if (std::fabs(y[a] - r) > 1e-9 * std::max(1.0, std::fabs(y[a]))) return false;
    (*out)[std::size_t(a)] = (long long)r;
  }
  return true;
}

std::string index_label(const std::vector<long long>& k) {
  std::string s = "[";
  for (std::size_t a = 0; a < k.size(); ++a) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", k[a]);
    if (a) s += ' ';
    s += buf;
  }
  return s + "]";
}

std::string point_label(const std::vector<double>& p) {
  std::string s = "[";
  for (std::size_t a = 0; a < p.size(); ++a) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p[a]);
    if (a) s += ' ';
    s += buf;
  }
  return s + "]";
}

std::vector<GridAxis> box_axes(const std::vector<double>& lo, const std::vector<double>& hi,
                               const std::vector<std::size_t>& counts) {
  std::vector<GridAxis> axes(lo.size());
  for (std::size_t a = 0; a < lo.size(); ++a)
    axes[a] = {lo[a], (hi[a] - lo[a]) / double(counts[a]), counts[a]};
  return axes;
}

// Deterministic quadrature: per-block partial sums merged in block order,
// times the cell weight. Half-open sampling, so integrands vanishing at the
// box boundary are integrated to spectral accuracy.
std::complex<double> complex_quadrature(
    const FrequencyGrid& grid, const std::function<std::complex<double>(const double*)>& fn) {
  constexpr std::size_t kBlock = 1 << 13;
  const std::size_t total = grid.total_points();
  std::vector<std::complex<double>> partial(block_count(total, kBlock));
  for_blocks(total, kBlock, [&](std::size_t b, std::size_t begin, std::size_t end) {
    double xi[8];
    std::complex<double> acc{};
    for (std::size_t i = begin; i < end; ++i) {
      grid.point(i, xi);
      acc += fn(xi);
    }
    partial[b] = acc;
  });
  std::complex<double> sum{};
  for (const auto& p : partial) sum += p;
  return sum * grid.cell_weight();
}

double real_quadrature(const FrequencyGrid& grid, const std::function<double(const double*)>& fn) {
  constexpr std::size_t kBlock = 1 << 13;
  const std::size_t total = grid.total_points();
  std::vector<double> partial(block_count(total, kBlock));
  for_blocks(total, kBlock, [&](std::size_t b, std::size_t begin, std::size_t end) {
    double xi[8];
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point(i, xi);
      acc += fn(xi);
    }
    partial[b] = acc;
  });
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum * grid.cell_weight();
}

// integral of |f|^2 over its support box with per_axis nodes per axis.
double probe_energy(const TestFunction& f, std::size_t per_axis) {
  FrequencyGrid grid(box_axes(f.lo, f.hi, std::vector<std::size_t>(std::size_t(f.dim), per_axis)));
  return real_quadrature(grid, [&](const double* xi) { return std::norm(f(xi)); });
}

}  // namespace

std::complex<double> TestFunction::operator()(const double* xi) const {
  for (int a = 0; a < dim; ++a)
    if (xi[a] <= lo[std::size_t(a)] || xi[a] >= hi[std::size_t(a)]) return {};
  return eval(xi);
}

double TestFunction::bounding_radius() const {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double m = std::max(std::fabs(lo[std::size_t(a)]), std::fabs(hi[std::size_t(a)]));
    r2 += m * m;
  }
  return std::sqrt(r2);
}

TestFunction modulated_bump(const std::vector<double>& center,
                            const std::vector<double>& half_width,
                            const std::vector<double>& modulation) {
  const int d = int(center.size());
  if (half_width.size() != std::size_t(d) || modulation.size() != std::size_t(d))
    fail(Errc::LengthMismatch, "modulated_bump: parameter vectors disagree on dimension");
  for (double h : half_width)
    if (!(h > 0.0)) fail(Errc::BadConfig, "modulated_bump: half widths must be positive");
  TestFunction f;
  f.dim = d;
  f.lo.resize(std::size_t(d));
  f.hi.resize(std::size_t(d));
  for (int a = 0; a < d; ++a) {
    f.lo[std::size_t(a)] = center[std::size_t(a)] - half_width[std::size_t(a)];
    f.hi[std::size_t(a)] = center[std::size_t(a)] + half_width[std::size_t(a)];
  }
  f.eval = [d, center, half_width, modulation](const double* xi) -> std::complex<double> {
    // Gaussian core under a unit-bump cutoff per axis. The Gaussian carries
    // the translate coefficients below the cutoff's own spectral floor, which
    // keeps truncated coefficient sums accurate at moderate k boxes.
    double cut = 1.0;
    double q = 0.0;
    double phase = 0.0;
    for (int a = 0; a < d; ++a) {
      const double t = (xi[a] - center[std::size_t(a)]) / half_width[std::size_t(a)];
      cut *= bump(1.0, t);
      q += t * t;
      phase += modulation[std::size_t(a)] * xi[a];
    }
    if (cut == 0.0) return {};
    constexpr double sigma = 0.35;  // of the half width
    return std::polar(cut * std::exp(-q / (2.0 * sigma * sigma)), phase);
  };
  return f;
}

std::vector<TestFunction> oracle_test_functions() {
  return {
      modulated_bump({0.0, 0.0}, {2.0, 2.0}, {0.0, 0.0}),
      modulated_bump({0.7, -0.4}, {1.6, 1.6}, {1.0, -2.0}),
      modulated_bump({-0.5, 0.3}, {2.2, 1.2}, {0.0, 3.0}),
      modulated_bump({0.2, 0.2}, {1.0, 1.5}, {4.0, 1.0}),
      modulated_bump({0.0, 0.0}, {2.8, 2.2}, {-2.0, 2.0}),
  };
}

std::vector<Generator> FrequencySystem::wavelets_at(int level) const {
  if (!wavelets) return {};
  return wavelets(level);
}

FrequencySystem stationary_system(const Generator& phi, const Generator& psi) {
  if (!phi.pair) fail(Errc::BadConfig, "stationary system needs a constructed scaling generator");
  FrequencySystem sys;
  sys.dilation = phi.pair->dilation;
  sys.scalings = {phi};
  sys.wavelets = [psi](int) { return std::vector<Generator>{psi}; };
  sys.stationary = true;
  sys.termination_level = [phi](double r) { return saturation_level(phi, r); };
  return sys;
}

FrequencySystem directional_system(int m, double rho, double eps_base) {
  const DilationMatrix line = analyze_dilation(Mat::scalar(1, 2.0));
  const Generator radial_phi = construct_phi(line, 0.8);
  const Generator radial_psi = construct_psi(radial_phi);
  DirectionalFamily base = build_directional_family_2d(m, rho, 0, eps_base, radial_phi, radial_psi);
  const Generator phi = base.phi;

  auto cache = std::make_shared<std::map<int, std::vector<Generator>>>();
  auto guard = std::make_shared<std::mutex>();
  (*cache)[0] = std::move(base.members);

  FrequencySystem sys;
  sys.dilation = phi.pair->dilation;
  sys.scalings = {phi};
  sys.stationary = false;
  // Octaves below zero reuse the level-0 angular resolution; the square
  // partition splits the same wavelet either way.
  sys.wavelets = [m, rho, eps_base, radial_phi, radial_psi, cache, guard](int level) {
    const int key = std::max(level, 0);
    std::lock_guard<std::mutex> lock(*guard);
    auto it = cache->find(key);
    if (it == cache->end()) {
      DirectionalFamily fam =
          build_directional_family_2d(m, rho, key, eps_base, radial_phi, radial_psi);
      it = cache->emplace(key, std::move(fam.members)).first;
    }
    return it->second;
  };
  sys.termination_level = [phi](double r) { return saturation_level(phi, r); };
  return sys;
}

std::vector<std::complex<double>> bracket_correlation(const std::vector<Generator>& a,
                                                      const std::vector<Generator>& b,
                                                      const std::vector<double>& k,
                                                      const FrequencyGrid& grid) {
  if (a.size() != b.size())
    fail(Errc::LengthMismatch, "bracket correlation: generator sets disagree in length");
  const int d = grid.dim();
  if (k.size() != std::size_t(d))
    fail(Errc::LengthMismatch, "bracket correlation: shift dimension mismatch");
  for (const auto& g : a)
    if (g.dim != d) fail(Errc::LengthMismatch, "bracket correlation: generator dimension mismatch");
  for (const auto& g : b)
    if (g.dim != d) fail(Errc::LengthMismatch, "bracket correlation: generator dimension mismatch");

  std::vector<std::complex<double>> out(grid.total_points());
  std::vector<long long> ki;
  if (!snap_integer(k.data(), d, &ki)) return out;  // non-integer shift: zero by definition

  const std::size_t total = grid.total_points();
  for_blocks(total, std::size_t(1) << 13, [&](std::size_t, std::size_t begin, std::size_t end) {
    double xi[8], shifted[8];
    for (std::size_t i = begin; i < end; ++i) {
      grid.point(i, xi);
      for (int a2 = 0; a2 < d; ++a2) shifted[a2] = xi[a2] + kTwoPi * double(ki[std::size_t(a2)]);
      double acc = 0.0;
      for (std::size_t l = 0; l < a.size(); ++l) acc += a[l](xi) * b[l](shifted);
      out[i] = acc;
    }
  });
  return out;
}

namespace {

// DFT bins of the torus periodization of f(U^{-1} .) conj(gen(.)), scaled by
// the cell weight. The translate coefficient for integer k is
// (-1)^(sum k_a) * bins[k mod shape]; the sign cancels in every bilinear
// pairing and in squared magnitudes, so it is never materialized.
struct CoefficientArray {
  std::vector<std::size_t> shape;
  std::vector<std::complex<double>> bins;
};

CoefficientArray coefficient_bins(const TestFunction& f, const Generator& gen, const Mat& uinv,
                                  const std::vector<std::size_t>& shape) {
  const int d = gen.dim;
  std::size_t total = 1;
  double cell = 1.0;
  for (std::size_t n : shape) {
    total *= n;
    cell *= kTwoPi / double(n);
  }
  CoefficientArray out;
  out.shape = shape;
  out.bins.assign(total, {});
  const long long nmax =
      (long long)(std::floor((gen.bounding_radius + M_PI) / kTwoPi + 1e-12));

  for_blocks(total, std::size_t(1) << 12, [&](std::size_t, std::size_t begin, std::size_t end) {
    double xi[8], zeta[8], arg[8];
    std::vector<long long> n(static_cast<std::size_t>(d));
    for (std::size_t i = begin; i < end; ++i) {
      std::size_t rem = i;
      for (int a = d - 1; a >= 0; --a) {
        const std::size_t count = shape[std::size_t(a)];
        xi[a] = -M_PI + kTwoPi * double(rem % count) / double(count);
        rem /= count;
      }
      std::complex<double> h{};
      std::fill(n.begin(), n.end(), -nmax);
      do {
        for (int a = 0; a < d; ++a) zeta[a] = xi[a] + kTwoPi * double(n[std::size_t(a)]);
        const double gv = gen(zeta);
        if (gv == 0.0) continue;
        uinv.apply(zeta, arg);
        const std::complex<double> fv = f(arg);
        if (fv != std::complex<double>{}) h += fv * gv;
      } while (next_index(n, -nmax, nmax));
      out.bins[i] = h;
    }
  });
  dft(out.bins, shape, +1);
  for (auto& b : out.bins) b *= cell;
  return out;
}

std::complex<double> bin_at(const CoefficientArray& c, const std::vector<long long>& k) {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < c.shape.size(); ++a) {
    const long long g = (long long)c.shape[a];
    flat = flat * c.shape[a] + std::size_t(((k[a] % g) + g) % g);
  }
  return c.bins[flat];
}

// Coefficient mass on bins whose signed alias index leaves the k box.
double tail_mass(const CoefficientArray& c, int k_max) {
  const int d = int(c.shape.size());
  double tail = 0.0;
  for (std::size_t i = 0; i < c.bins.size(); ++i) {
    std::size_t rem = i;
    bool outside = false;
    for (int a = d - 1; a >= 0; --a) {
      const long long g = (long long)c.shape[std::size_t(a)];
      const long long ia = (long long)(rem % c.shape[std::size_t(a)]);
      rem /= c.shape[std::size_t(a)];
      const long long signed_k = 2 * ia < g ? ia : ia - g;
      if (signed_k > k_max || signed_k < -k_max) outside = true;
    }
    if (outside) tail += std::norm(c.bins[i]);
  }
  return tail;
}

std::complex<double> box_pairing(const CoefficientArray& cf, const CoefficientArray& cg,
                                 int k_max) {
  std::complex<double> sum{};
  std::vector<long long> k(cf.shape.size(), -k_max);
  do {
    sum += bin_at(cf, k) * std::conj(bin_at(cg, k));
  } while (next_index(k, -k_max, k_max));
  return sum;
}

std::vector<std::size_t> grid_shape(const FrequencyGrid& grid) {
  std::vector<std::size_t> shape;
  for (const auto& ax : grid.axes()) shape.push_back(ax.count);
  return shape;
}

void check_k_box(const std::vector<std::size_t>& shape, int k_max) {
  if (k_max < 0) fail(Errc::BadConfig, "coefficient box bound must be nonnegative");
  std::size_t gmin = std::numeric_limits<std::size_t>::max();
  for (std::size_t n : shape) gmin = std::min(gmin, n);
  // Eight samples per period of the fastest retained translate coefficient.
  if (std::size_t(k_max) > gmin / 8)
    fail(Errc::GridTooCoarse, "grid undersamples the requested translate range");
}

}  // namespace

OracleResult bracket_product_oracle(const TestFunction& f, const TestFunction& g,
                                    const Generator& psi, const Generator& psi_tilde,
                                    const Mat& u, const FrequencyGrid& grid, int k_max) {
  const int d = grid.dim();
  if (f.dim != d || g.dim != d || psi.dim != d || psi_tilde.dim != d || u.dim() != d)
    fail(Errc::LengthMismatch, "oracle: dimensions disagree");
  const double det = std::fabs(u.det());
  if (!(det > 0.0)) fail(Errc::SingularMatrix, "oracle: matrix is singular");
  const std::vector<std::size_t> shape = grid_shape(grid);
  check_k_box(shape, k_max);

  const Mat uinv = u.inverse();
  const double inv_det = 1.0 / det;

  // Coefficient path: periodize, transform, pair over the k box.
  const CoefficientArray cf = coefficient_bins(f, psi, uinv, shape);
  const CoefficientArray cg = coefficient_bins(g, psi_tilde, uinv, shape);
  OracleResult out;
  out.lhs = inv_det * box_pairing(cf, cg, k_max);
  out.truncation_bound = inv_det * std::sqrt(tail_mass(cf, k_max) * tail_mass(cg, k_max));

  // Integral path: finite alias sum with per-shift support pruning.
  const long long kb =
      (long long)(std::floor((psi.bounding_radius + psi_tilde.bounding_radius) / kTwoPi + 1e-12));
  std::complex<double> rhs{};
  int alias = 0;
  std::vector<long long> k(std::size_t(d), -kb);
  do {
    double kd[8], shift[8];
    for (int a = 0; a < d; ++a) kd[a] = double(k[std::size_t(a)]);
    uinv.apply(kd, shift);
    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    bool empty = false;
    for (int a = 0; a < d; ++a) {
      lo[std::size_t(a)] = std::max(f.lo[std::size_t(a)], g.lo[std::size_t(a)] - kTwoPi * shift[a]);
      hi[std::size_t(a)] = std::min(f.hi[std::size_t(a)], g.hi[std::size_t(a)] - kTwoPi * shift[a]);
      if (!(lo[std::size_t(a)] < hi[std::size_t(a)])) empty = true;
    }
    if (empty) continue;
    ++alias;
    FrequencyGrid box(box_axes(lo, hi, shape));
    rhs += complex_quadrature(box, [&](const double* xi) -> std::complex<double> {
      double gx[8], ux[8], uxk[8];
      for (int a = 0; a < d; ++a) gx[a] = xi[a] + kTwoPi * shift[a];
      const std::complex<double> fv = f(xi);
      if (fv == std::complex<double>{}) return {};
      const std::complex<double> gv = g(gx);
      if (gv == std::complex<double>{}) return {};
      u.apply(xi, ux);
      const double pv = psi(ux);
      if (pv == 0.0) return {};
      for (int a = 0; a < d; ++a) uxk[a] = ux[a] + kTwoPi * double(k[std::size_t(a)]);
      return fv * std::conj(gv) * pv * psi_tilde(uxk);
    });
  } while (next_index(k, -kb, kb));

  out.rhs = two_pi_pow(d) * rhs;
  out.alias_terms = alias;
  out.diff = std::abs(out.lhs - out.rhs);
  return out;
}

std::vector<ConditionReport> bracket_oracle_suite(const Generator& psi, std::size_t per_axis,
                                                  int k_max, double tolerance) {
  struct Entry {
    const char* label;
    Mat u;
  };
  const Entry entries[] = {
      {"I", Mat::identity(2)},
      {"2I", Mat::scalar(2, 2.0)},
      {"quincunx", Mat::from_rows({{1.0, 1.0}, {1.0, -1.0}})},
  };
  const FrequencyGrid grid = FrequencyGrid::standard_torus(2, per_axis);
  const std::vector<TestFunction> probes = oracle_test_functions();
  std::vector<ConditionReport> reports;
  for (const Entry& e : entries) {
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const OracleResult r =
          bracket_product_oracle(probes[p], probes[p], psi, psi, e.u, grid, k_max);
      Residual res;
      res.add(r.diff);
      char id[64];
      std::snprintf(id, sizeof id, "oracle:U=%s:probe=%zu", e.label, p);
      reports.push_back(res.report(id, tolerance));
    }
  }
  return reports;
}

PartialSumResult partial_sum(const TestFunction& f, const TestFunction& g,
                             const FrequencySystem& sys, int coarse, int finest,
                             const FrequencyGrid& grid, int k_max) {
  const int d = grid.dim();
  if (f.dim != d || g.dim != d || sys.dilation.dim != d)
    fail(Errc::LengthMismatch, "partial sum: dimensions disagree");
  if (finest < coarse) fail(Errc::BadConfig, "partial sum: finest level is below the coarsest");
  const std::vector<std::size_t> shape = grid_shape(grid);
  check_k_box(shape, k_max);

  struct Level {
    int j = 0;
    Mat u;      // N^j
    Mat uinv;   // (M^T)^j
    double inv_det = 0.0;
    std::vector<Generator> members;
  };
  std::vector<Level> levels;
  {
    Level lc;
    lc.j = coarse;
    lc.members = sys.scalings;
    levels.push_back(std::move(lc));
  }
  for (int j = coarse; j < finest; ++j) {
    Level lw;
    lw.j = j;
    lw.members = sys.wavelets_at(j);
    levels.push_back(std::move(lw));
  }
  for (Level& l : levels) {
    l.u = mat_power(sys.dilation.n, l.j);
    l.uinv = mat_power(sys.dilation.mt, l.j);
    l.inv_det = std::pow(sys.dilation.det_abs, l.j);
  }

  // Coefficient path.
  std::complex<double> coeff{};
  for (const Level& l : levels)
    for (const Generator& gen : l.members) {
      const CoefficientArray cf = coefficient_bins(f, gen, l.uinv, shape);
      const CoefficientArray cg = coefficient_bins(g, gen, l.uinv, shape);
      coeff += l.inv_det * box_pairing(cf, cg, k_max);
    }

  // Integral path over the certified shift set (zero shift included).
  const double radius = (f.bounding_radius() + g.bounding_radius()) / kTwoPi + 1e-9;
  const LatticeSample lattice = certify_lattice_conditions(
      sys.dilation, coarse, radius, std::max(coarse, finest - 1));

  std::complex<double> value{};
  for (const std::vector<double>& kappa : lattice.points) {
    struct Term {
      const Level* level = nullptr;
      std::vector<double> shift;  // 2 pi N^j kappa, exactly integer multiples
    };
    std::vector<Term> terms;
    for (const Level& l : levels) {
      if (l.members.empty()) continue;
      double mapped[8];
      l.u.apply(kappa.data(), mapped);
      std::vector<long long> ki;
      if (!snap_integer(mapped, d, &ki)) continue;
      Term t;
      t.level = &l;
      t.shift.resize(std::size_t(d));
      for (int a = 0; a < d; ++a) t.shift[std::size_t(a)] = kTwoPi * double(ki[std::size_t(a)]);
      terms.push_back(std::move(t));
    }
    if (terms.empty()) continue;

    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    bool empty = false;
    for (int a = 0; a < d; ++a) {
      lo[std::size_t(a)] =
          std::max(f.lo[std::size_t(a)], g.lo[std::size_t(a)] - kTwoPi * kappa[std::size_t(a)]);
      hi[std::size_t(a)] =
          std::min(f.hi[std::size_t(a)], g.hi[std::size_t(a)] - kTwoPi * kappa[std::size_t(a)]);
      if (!(lo[std::size_t(a)] < hi[std::size_t(a)])) empty = true;
    }
    if (empty) continue;

    FrequencyGrid box(box_axes(lo, hi, shape));
    value += complex_quadrature(box, [&](const double* xi) -> std::complex<double> {
      const std::complex<double> fv = f(xi);
      if (fv == std::complex<double>{}) return {};
      double gx[8], z[8], w[8];
      for (int a = 0; a < d; ++a) gx[a] = xi[a] + kTwoPi * kappa[std::size_t(a)];
      const std::complex<double> gv = g(gx);
      if (gv == std::complex<double>{}) return {};
      double acc = 0.0;
      for (const Term& t : terms) {
        t.level->u.apply(xi, z);
        for (int a = 0; a < d; ++a) w[a] = z[a] + t.shift[std::size_t(a)];
        for (const Generator& gen : t.level->members) acc += gen(z) * gen(w);
      }
      return fv * std::conj(gv) * acc;
    });
  }
  value *= two_pi_pow(d);

  PartialSumResult out;
  out.value = value;
  out.cross_check = std::abs(value - coeff);
  return out;
}

namespace {

double grid_reach(const FrequencyGrid& grid) {
  double reach = std::numeric_limits<double>::infinity();
  for (const auto& ax : grid.axes()) {
    const double upper = ax.origin + ax.step * double(ax.count);
    reach = std::min(reach, std::min(-ax.origin, upper));
  }
  return reach;
}

void check_support_fits(const std::vector<const Generator*>& gens, const FrequencyGrid& grid) {
  const double reach = grid_reach(grid);
  for (const Generator* g : gens)
    if (g->bounding_radius > reach + 1e-12)
      fail(Errc::SupportOverflow, "generator support leaves the verification grid");
}

double pair_sum(const std::vector<Generator>& a, const std::vector<Generator>& b, const double* x,
                const double* y) {
  double acc = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) acc += a[l](x) * b[l](y);
  return acc;
}

void require_matched(const std::vector<Generator>& a, const std::vector<Generator>& b,
                     const char* what) {
  if (a.size() != b.size()) fail(Errc::LengthMismatch, what);
}

}  // namespace

std::vector<ConditionReport> dual_frame_condition_residuals(
    const FrequencySystem& sys, const FrequencySystem& sys_tilde, const FrequencyGrid& grid,
    const std::vector<int>& levels, DualMode mode, double tolerance) {
  const int d = grid.dim();
  if (sys.dilation.dim != d || sys_tilde.dilation.dim != d)
    fail(Errc::LengthMismatch, "dual frame check: dimensions disagree");
  require_matched(sys.scalings, sys_tilde.scalings,
                  "dual frame check: coarse families disagree in length");

  std::vector<ConditionReport> reports;
  const Mat& n = sys.dilation.n;

  if (mode == DualMode::tight_simple) {
    if (levels.empty()) fail(Errc::BadConfig, "dual frame check: no levels requested");
    // Support separation: every translate class meets only its own support.
    Residual sep;
    std::vector<const Generator*> used;
    for (const Generator& g : sys.scalings) used.push_back(&g);
    std::map<int, std::pair<std::vector<Generator>, std::vector<Generator>>> fam;
    for (int j : levels) {
      fam[j] = {sys.wavelets_at(j), sys_tilde.wavelets_at(j)};
      require_matched(fam[j].first, fam[j].second,
                      "dual frame check: wavelet families disagree in length");
      for (const Generator& g : fam[j].first) used.push_back(&g);
    }
    for (const Generator* g : used) sep.add(std::max(0.0, g->bounding_radius - M_PI));
    reports.push_back(sep.report("support-separation", tolerance));
    check_support_fits(used, grid);

    for (int j : levels) {
      const Mat p1 = mat_power(n, j);
      const Mat p2 = mat_power(n, j + 1);
      const auto& members = fam[j];
      const Residual r = scan_grid(grid, [&](const double* xi) {
        double z1[8], z2[8];
        p1.apply(xi, z1);
        p2.apply(xi, z2);
        double acc = pair_sum(sys.scalings, sys_tilde.scalings, z1, z1);
        acc += pair_sum(members.first, members.second, z1, z1);
        acc -= pair_sum(sys.scalings, sys_tilde.scalings, z2, z2);
        return std::fabs(acc);
      });
      char id[48];
      std::snprintf(id, sizeof id, "energy-split:j=%d", j);
      reports.push_back(r.report(id, tolerance));
    }
    return reports;
  }

  if (mode == DualMode::stationary) {
    const std::vector<Generator> w = sys.wavelets_at(0);
    const std::vector<Generator> wt = sys_tilde.wavelets_at(0);
    require_matched(w, wt, "dual frame check: wavelet families disagree in length");
    std::vector<const Generator*> used;
    double rmax = 0.0;
    for (const Generator& g : sys.scalings) used.push_back(&g);
    for (const Generator& g : w) used.push_back(&g);
    for (const Generator* g : used) rmax = std::max(rmax, g->bounding_radius);
    check_support_fits(used, grid);

    const long long kb = (long long)(std::ceil(rmax / M_PI));
    std::vector<long long> k(std::size_t(d), -kb);
    do {
      double kd[8], mapped[8];
      for (int a = 0; a < d; ++a) kd[a] = double(k[std::size_t(a)]);
      n.apply(kd, mapped);
      std::vector<long long> nk;
      const bool refined = snap_integer(mapped, d, &nk);
      const Residual r = scan_grid(grid, [&](const double* xi) {
        double xs[8], z[8], zs[8];
        for (int a = 0; a < d; ++a) xs[a] = xi[a] + kTwoPi * double(k[std::size_t(a)]);
        double acc = pair_sum(sys.scalings, sys_tilde.scalings, xi, xs);
        acc += pair_sum(w, wt, xi, xs);
        if (refined) {
          n.apply(xi, z);
          for (int a = 0; a < d; ++a) zs[a] = z[a] + kTwoPi * double(nk[std::size_t(a)]);
          acc -= pair_sum(sys.scalings, sys_tilde.scalings, z, zs);
        }
        return std::fabs(acc);
      });
      reports.push_back(r.report("recursion:k=" + index_label(k), tolerance));
    } while (next_index(k, -kb, kb));
    return reports;
  }

  // Nonstationary: alias rows over the certified shift set, then the
  // zero-shift saturation profile at the requested levels.
  if (levels.empty()) fail(Errc::BadConfig, "dual frame check: no levels requested");
  std::vector<int> sorted = levels;
  std::sort(sorted.begin(), sorted.end());
  const int j_lo = sorted.front();
  const int j_hi = sorted.back();

  std::map<int, std::pair<std::vector<Generator>, std::vector<Generator>>> fam;
  std::vector<const Generator*> used;
  double rmax = 0.0;
  for (const Generator& g : sys.scalings) used.push_back(&g);
  for (int j = j_lo; j <= j_hi; ++j) {
    fam[j] = {sys.wavelets_at(j), sys_tilde.wavelets_at(j)};
    require_matched(fam[j].first, fam[j].second,
                    "dual frame check: wavelet families disagree in length");
    for (const Generator& g : fam[j].first) used.push_back(&g);
  }
  for (const Generator* g : used) rmax = std::max(rmax, g->bounding_radius);
  check_support_fits(used, grid);

  std::map<int, Mat> npow;
  for (int j = j_lo; j <= j_hi + 1; ++j) npow[j] = mat_power(n, j);

  const LatticeSample lattice =
      certify_lattice_conditions(sys.dilation, j_lo, rmax / M_PI + 1.0, j_hi);
  for (const std::vector<double>& kappa : lattice.points) {
    double norm2 = 0.0;
    for (double c : kappa) norm2 += c * c;
    if (norm2 == 0.0) continue;

    struct Term {
      const Mat* u = nullptr;
      std::vector<double> shift;
      const std::pair<std::vector<Generator>, std::vector<Generator>>* members = nullptr;
      bool coarse = false;
    };
    std::vector<Term> terms;
    auto add_term = [&](int j, bool coarse_level) {
      double mapped[8];
      npow[j].apply(kappa.data(), mapped);
      std::vector<long long> ki;
      if (!snap_integer(mapped, d, &ki)) return;
      Term t;
      t.u = &npow[j];
      t.coarse = coarse_level;
      if (!coarse_level) t.members = &fam[j];
      t.shift.resize(std::size_t(d));
      for (int a = 0; a < d; ++a) t.shift[std::size_t(a)] = kTwoPi * double(ki[std::size_t(a)]);
      terms.push_back(std::move(t));
    };
    add_term(j_lo, true);
    for (int j = j_lo; j <= j_hi; ++j) add_term(j, false);

    Residual r;
    if (terms.empty()) {
      r.add(0.0);
    } else {
      r = scan_grid(grid, [&](const double* xi) {
        double z[8], zs[8];
        double acc = 0.0;
        for (const Term& t : terms) {
          t.u->apply(xi, z);
          for (int a = 0; a < d; ++a) zs[a] = z[a] + t.shift[std::size_t(a)];
          acc += t.coarse ? pair_sum(sys.scalings, sys_tilde.scalings, z, zs)
                          : pair_sum(t.members->first, t.members->second, z, zs);
        }
        return std::fabs(acc);
      });
    }
    reports.push_back(r.report("alias:k=" + point_label(kappa), tolerance));
  }

  for (int jp : sorted) {
    const Residual r = scan_grid(grid, [&](const double* xi) {
      double z[8];
      npow[j_lo].apply(xi, z);
      double acc = pair_sum(sys.scalings, sys_tilde.scalings, z, z);
      for (int j = j_lo; j < jp; ++j) {
        npow[j].apply(xi, z);
        acc += pair_sum(fam[j].first, fam[j].second, z, z);
      }
      return std::fabs(acc - 1.0);
    });
    char id[48];
    std::snprintf(id, sizeof id, "saturation:level=%d", jp);
    reports.push_back(r.report(id, tolerance));
  }
  return reports;
}

ConditionReport mra_consistency_residual(const std::vector<Generator>& phi_level,
                                         const std::vector<Generator>& psi_level,
                                         const std::vector<Generator>& phi_next,
                                         const DilationMatrix& m, const FrequencyGrid& grid,
                                         double tolerance) {
  const int d = grid.dim();
  if (m.dim != d) fail(Errc::LengthMismatch, "adjacent-level check: dimensions disagree");
  std::vector<const Generator*> used;
  double rmax = 0.0;
  for (const Generator& g : phi_level) used.push_back(&g);
  for (const Generator& g : psi_level) used.push_back(&g);
  for (const Generator& g : phi_next) used.push_back(&g);
  for (const Generator* g : used) {
    if (g->dim != d) fail(Errc::LengthMismatch, "adjacent-level check: generator dimension");
    rmax = std::max(rmax, g->bounding_radius);
  }
  check_support_fits(used, grid);

  const long long kb = (long long)(std::ceil(rmax / M_PI));
  Residual total;
  std::vector<long long> k(std::size_t(d), -kb);
  do {
    double kd[8], mapped[8];
    for (int a = 0; a < d; ++a) kd[a] = double(k[std::size_t(a)]);
    m.n.apply(kd, mapped);
    std::vector<long long> nk;
    const bool refined = snap_integer(mapped, d, &nk);
    const Residual r = scan_grid(grid, [&](const double* xi) {
      double xs[8], z[8], zs[8];
      for (int a = 0; a < d; ++a) xs[a] = xi[a] + kTwoPi * double(k[std::size_t(a)]);
      double acc = pair_sum(phi_level, phi_level, xi, xs);
      acc += pair_sum(psi_level, psi_level, xi, xs);
      if (refined && !phi_next.empty()) {
        m.n.apply(xi, z);
        for (int a = 0; a < d; ++a) zs[a] = z[a] + kTwoPi * double(nk[std::size_t(a)]);
        acc -= pair_sum(phi_next, phi_next, z, zs);
      }
      return std::fabs(acc);
    });
    total.merge(r);
  } while (next_index(k, -kb, kb));
  return total.report("quasi-mra:adjacent", tolerance);
}

namespace {

// Exact-translate-sum energy of one generator at one octave: the torus
// integral of the squared periodization, through the same Parseval identity
// the coefficient path discretizes, but with no transform and no truncation.
double member_energy(const TestFunction& f, const Generator& gen, const Mat& uinv,
                     double inv_det, std::size_t per_axis) {
  const int d = gen.dim;
  const FrequencyGrid torus = FrequencyGrid::standard_torus(d, per_axis);
  const long long nmax =
      (long long)(std::floor((gen.bounding_radius + M_PI) / kTwoPi + 1e-12));
  const double sum = real_quadrature(torus, [&](const double* xi) {
    double zeta[8], arg[8];
    std::vector<long long> nn(std::size_t(d), -nmax);
    std::complex<double> h{};
    do {
      for (int a = 0; a < d; ++a) zeta[a] = xi[a] + kTwoPi * double(nn[std::size_t(a)]);
      const double gv = gen(zeta);
      if (gv == 0.0) continue;
      uinv.apply(zeta, arg);
      const std::complex<double> fv = f(arg);
      if (fv != std::complex<double>{}) h += fv * gv;
    } while (next_index(nn, -nmax, nmax));
    return std::norm(h);
  });
  return inv_det * two_pi_pow(d) * sum;
}

struct Accumulated {
  double total = 0.0;
  int terminal = 0;
};

Accumulated accumulate_energy(const TestFunction& f, const FrequencySystem& sys, int coarse,
                              std::size_t per_axis, double threshold, int level_cap) {
  Accumulated acc;
  if (!sys.scalings.empty()) {
    const Mat uinv = mat_power(sys.dilation.mt, coarse);
    const double inv_det = std::pow(sys.dilation.det_abs, coarse);
    for (const Generator& gen : sys.scalings)
      acc.total += member_energy(f, gen, uinv, inv_det, per_axis);
  }
  for (int j = coarse;; ++j) {
    if (j - coarse >= level_cap)
      fail(Errc::NoConvergence, "energy increments never fell below the tolerance");
    const std::vector<Generator> members = sys.wavelets_at(j);
    double inc = 0.0;
    if (!members.empty()) {
      const Mat uinv = mat_power(sys.dilation.mt, j);
      const double inv_det = std::pow(sys.dilation.det_abs, j);
      for (const Generator& gen : members)
        inc += member_energy(f, gen, uinv, inv_det, per_axis);
    }
    acc.total += inc;
    if (inc <= threshold) {
      acc.terminal = j;
      break;
    }
  }
  return acc;
}

}  // namespace

ParsevalResult parseval_energy_test(const TestFunction& f, const FrequencySystem& sys,
                                    int coarse, std::size_t per_axis, double tol,
                                    int level_cap) {
  ParsevalResult out;
  const double energy = probe_energy(f, per_axis);
  out.reference = two_pi_pow(f.dim) * energy;
  out.terminal_level = coarse;
  if (energy == 0.0) return out;  // ratio 1 by convention, zero on both sides

  const Accumulated acc =
      accumulate_energy(f, sys, coarse, per_axis, tol * out.reference, level_cap);
  out.total = acc.total;
  out.terminal_level = acc.terminal;
  out.ratio = acc.total / out.reference;
  return out;
}

int predicted_termination_level(const TestFunction& f, const FrequencySystem& sys) {
  if (!sys.termination_level)
    fail(Errc::BadConfig, "system does not carry support arithmetic");
  return sys.termination_level(f.bounding_radius());
}

double bessel_bound_estimate(const FrequencySystem& sys, int coarse, int ensemble_size,
                             std::size_t per_axis) {
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> center(-0.8, 0.8);
  std::uniform_real_distribution<double> half(0.6, 1.4);
  std::uniform_real_distribution<double> modulation(-3.0, 3.0);
  const int d = sys.dilation.dim > 0 ? sys.dilation.dim : 2;

  double best = 0.0;
  for (int s = 0; s < ensemble_size; ++s) {
    std::vector<double> c(static_cast<std::size_t>(d)), h(static_cast<std::size_t>(d)), md(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) c[std::size_t(a)] = center(rng);
    for (int a = 0; a < d; ++a) h[std::size_t(a)] = half(rng);
    for (int a = 0; a < d; ++a) md[std::size_t(a)] = modulation(rng);
    const TestFunction f = modulated_bump(c, h, md);
    const double energy = probe_energy(f, per_axis);
    if (energy == 0.0) continue;
    const Accumulated acc =
        accumulate_energy(f, sys, coarse, per_axis, 1e-10 * two_pi_pow(d) * energy, 64);
    best = std::max(best, acc.total / energy);
  }
  return best;
}

}  // namespace framelet
