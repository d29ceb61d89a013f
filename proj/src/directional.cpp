#include "framelet/directional.hpp"

#include <cmath>
#include <random>

#include "framelet/windows.hpp"

namespace framelet {
namespace {

// Maps xi through the origin onto the closed upper half-plane so antipodal
// points share one angle evaluation exactly; the polar windows are even, so
// the value is unchanged.
double canonical_angle(double x, double y) {
  if (y < 0.0 || (y == 0.0 && x < 0.0)) {
    x = -x;
    y = -y;
  }
  return std::atan2(y, x);
}

}  // namespace

int angular_resolution_exponent(double rho, int level) {
  if (!(rho >= 0.0 && rho < 1.0)) fail(Errc::BadRho, "rho must lie in [0, 1)");
  if (level < 0) fail(Errc::BadConfig, "level must be nonnegative");
  return static_cast<int>(std::floor(rho * static_cast<double>(level) + 1e-9));
}

AngularPartition trivial_partition(int dim) {
  if (dim < 1) fail(Errc::BadConfig, "partition dimension must be positive");
  AngularPartition p;
  p.dim = dim;
  p.count = 1;
  p.eps = 0.0;
  p.windows.push_back([](const double*) { return 1.0; });
  p.center_angles.push_back(0.0);
  return p;
}

AngularPartition polar_partition_2d(int count, double eps) {
  if (count < 1) fail(Errc::BadConfig, "partition needs at least one window");
  if (count == 1) return trivial_partition(2);
  const AngularWindow alpha(count, eps);
  AngularPartition p;
  p.dim = 2;
  p.count = count;
  p.eps = eps;
  const double sector = M_PI / static_cast<double>(count);
  for (int l = 0; l < count; ++l) {
    const double shift = sector * static_cast<double>(l);
    p.windows.push_back([alpha, shift](const double* u) {
      const double theta = canonical_angle(u[0], u[1]);
      // alpha(x) + alpha(x + pi) with at most one term live (the support
      // half-width stays below pi/2 for count >= 2): fold x into
      // [-pi/2, pi/2] modulo pi and evaluate the live term directly.
      const double x = theta + shift;
      const double d = x - M_PI * std::floor(x / M_PI + 0.5);
      return alpha(d);
    });
    p.center_angles.push_back(-shift);
  }
  return p;
}

double partition_tiling_residual(const AngularPartition& p, std::size_t samples) {
  if (p.windows.empty()) fail(Errc::BadConfig, "partition has no windows");
  if (samples == 0) fail(Errc::BadConfig, "partition check needs sample points");
  std::vector<double> u(static_cast<std::size_t>(p.dim));
  std::mt19937_64 rng(0x5EEDULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (p.dim == 2) {
      const double theta = -M_PI + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(samples);
      u[0] = std::cos(theta);
      u[1] = std::sin(theta);
    } else {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (auto& c : u) {
          c = gauss(rng);
          norm2 += c * c;
        }
      } while (norm2 < 1e-12);
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& c : u) c *= inv;
    }
    double acc = 0.0;
    for (const auto& w : p.windows) {
      const double v = w(u.data());
      acc += v * v;
    }
    worst = std::max(worst, std::fabs(acc - 1.0));
  }
  return worst;
}

DirectionalFamily angular_split(const Generator& psi, const AngularPartition& partition) {
  if (psi.dim != partition.dim) fail(Errc::SizeMismatch, "wavelet and partition dimensions differ");
  if (psi.dim < 1 || psi.dim > 8) fail(Errc::SizeMismatch, "directional splits support 1..8 dimensions");
  if (partition.windows.empty()) fail(Errc::BadConfig, "partition has no windows");
  const double residual = partition_tiling_residual(partition, 1u << 14);
  if (residual > 1e-10)
    fail(Errc::PartitionResidualTooLarge,
         "directional windows do not square-sum to one over the sphere");

  DirectionalFamily fam;
  fam.count = partition.count;
  fam.psi = psi;
  fam.partition = partition;
  const auto radial = psi.eval;
  const int dim = psi.dim;
  for (const auto& window : partition.windows) {
    Generator g;
    g.kind = GeneratorKind::directional;
    g.dim = dim;
    g.support_inner = psi.support_inner;
    g.support_outer = psi.support_outer;
    g.bounding_radius = psi.bounding_radius;
    g.pair = psi.pair;
    g.eval = [radial, window, dim](const double* xi) -> double {
      const double v = radial(xi);
      if (v == 0.0) return 0.0;
      double u[8];
      double norm2 = 0.0;
      for (int a = 0; a < dim; ++a) norm2 += xi[a] * xi[a];
      if (norm2 == 0.0) return 0.0;
      const double inv = 1.0 / std::sqrt(norm2);
      for (int a = 0; a < dim; ++a) u[a] = xi[a] * inv;
      return v * window(u);
    };
    fam.members.push_back(std::move(g));
  }
  return fam;
}

DirectionalFamily build_directional_family_2d(int m, double rho, int level, double eps_base,
                                              const Generator& radial_phi,
                                              const Generator& radial_psi) {
  if (m < 1) fail(Errc::BadConfig, "directional density m must be at least 1");
  if (radial_phi.dim != 1 || radial_psi.dim != 1 || !radial_phi.pair)
    fail(Errc::BadConfig, "the polar construction starts from a one-dimensional radial pair");
  const DilationMatrix& rd = radial_phi.pair->dilation;
  if (std::fabs(rd.m.at(0, 0) - 2.0) > 1e-12)
    fail(Errc::BadConfig, "the radial pair must use the dyadic dilation");
  const int q = angular_resolution_exponent(rho, level);
  if (q > 24) fail(Errc::SizeMismatch, "angular count overflows at this level");
  const int count = m << q;
  const double eps =
      eps_base > 0.0 ? eps_base / static_cast<double>(1 << q)
                     : M_PI / (4.0 * static_cast<double>(count));

  // The plane pair for 2*I_2 shares the radial plateau radius: both dilations
  // drive the support bound through the same factor 4 = |(M^T)^2| probe.
  const DilationMatrix plane = analyze_dilation(Mat::scalar(2, 2.0));
  Generator phi2 = construct_phi(plane, radial_phi.pair->lambda0);
  Generator psi2 = construct_psi(phi2);

  AngularPartition partition =
      count == 1 ? trivial_partition(2) : polar_partition_2d(count, eps);
  DirectionalFamily fam = angular_split(psi2, partition);
  fam.level = level;
  fam.m = m;
  fam.rho = rho;
  fam.eps = count == 1 ? 0.0 : eps;
  fam.phi = std::move(phi2);
  return fam;
}

SupportDescriptor support_descriptor(const DirectionalFamily& f, int member, int scale_level) {
  if (member < 0 || member >= f.count) fail(Errc::IndexOutOfRange, "no such family member");
  if (!f.psi.eval) fail(Errc::BadConfig, "family has no wavelet state");
  SupportDescriptor d;
  const double scale = std::ldexp(1.0, scale_level);
  d.r_lo = f.psi.support_inner * scale;
  d.r_hi = f.psi.support_outer * scale;
  if (f.count == 1) {
    d.center_angle = 0.0;
    d.theta_half_width = M_PI;
  } else {
    d.center_angle = f.partition.center_angles[static_cast<std::size_t>(member)];
    d.theta_half_width = M_PI / (2.0 * static_cast<double>(f.count)) + f.eps;
  }
  const double width = 2.0 * d.r_hi * std::sin(std::min(d.theta_half_width, M_PI / 2.0));
  const double length = d.r_hi - d.r_lo;
  d.parabolic_ratio = width / std::pow(length, 1.0 - f.rho);
  return d;
}

}  // namespace framelet
