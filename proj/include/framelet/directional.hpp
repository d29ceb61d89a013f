#pragma once

#include <functional>
#include <vector>

#include "framelet/generators.hpp"

namespace framelet {

// floor(rho * level) with a one-nanoradian snap: rho arrives as the nearest
// double to a short decimal or rational, so rho*level can land a few ulps
// below the integer the exact value reaches. BadRho unless 0 <= rho < 1.
int angular_resolution_exponent(double rho, int level);

// A squared partition of unity over directions: sum of windows(u)^2 == 1 for
// every unit vector u. Window ell of the polar scheme pairs the two wedges
// around center_angle[ell] and its antipode, so every window is even.
struct AngularPartition {
  int dim = 2;
  int count = 0;
  double eps = 0.0;  // angular transition half-width (0 for the trivial split)
  std::vector<std::function<double(const double*)>> windows;
  std::vector<double> center_angles;
};

AngularPartition trivial_partition(int dim);
AngularPartition polar_partition_2d(int count, double eps);

// Max over sampled unit directions of |sum windows^2 - 1|.
double partition_tiling_residual(const AngularPartition& p, std::size_t samples);

struct DirectionalFamily {
  int level = 0;
  int m = 1;
  double rho = 0.0;
  int count = 1;     // number of members at this level
  double eps = 0.0;  // angular transition used at this level
  Generator phi;     // isotropic scaling generator (when built from a radial pair)
  Generator psi;     // isotropic wavelet the members split
  std::vector<Generator> members;
  AngularPartition partition;
};

// Splits a wavelet generator by direction: member ell is
// psi(xi) * window_ell(xi/|xi|). Validates the partition on a dense sphere
// sample first and reports PartitionResidualTooLarge above 1e-10, so the
// squared member sum reproduces psi^2 to the same accuracy.
DirectionalFamily angular_split(const Generator& psi, const AngularPartition& partition);

// Level-j polar family for the dilation 2*I_2 from a dyadic radial pair
// (dim-1 generators for M = [2]): count = m * 2^floor(rho*level) members,
// window transition eps_base / 2^floor(rho*level) (eps_base <= 0 picks
// pi/(4m)). Member ell concentrates along center angle -ell*pi/count union
// its antipode; member values rotate into each other through pi/count.
DirectionalFamily build_directional_family_2d(int m, double rho, int level, double eps_base,
                                              const Generator& radial_phi,
                                              const Generator& radial_psi);

// Frequency support of one member after scale_level applications of M^T
// (radii scale by 2^scale_level): the annular wedge r in [r_lo, r_hi],
// angular distance to center_angle at most theta_half_width modulo pi (the
// support is symmetric through the origin). parabolic_ratio reports
// width / length^(1-rho) for the wedge (width = angular arc at r_hi, length
// = radial extent).
struct SupportDescriptor {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double center_angle = 0.0;
  double theta_half_width = 0.0;
  double parabolic_ratio = 0.0;
};

SupportDescriptor support_descriptor(const DirectionalFamily& f, int member, int scale_level);

}  // namespace framelet
