#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "framelet/directional.hpp"

using namespace framelet;

namespace {

struct RadialPair {
  Generator phi;
  Generator psi;
};

RadialPair dyadic_radial_pair() {
  const auto line = analyze_dilation(Mat::scalar(1, 2.0));
  Generator phi = construct_phi(line, 0.8);
  Generator psi = construct_psi(phi);
  return {std::move(phi), std::move(psi)};
}

// Exact floor(p/q * j) in integers, as the count oracle.
int rational_floor(long long p, long long q, long long j) {
  return static_cast<int>((p * j) / q);
}

double angle_distance_mod_pi(double a, double b) {
  double d = std::fmod(a - b, M_PI);
  if (d < -M_PI / 2.0) d += M_PI;
  if (d > M_PI / 2.0) d -= M_PI;
  return std::fabs(d);
}

}  // namespace

TEST_CASE("resolution exponent matches the rational oracle") {
  struct Rho {
    double value;
    long long p, q;
  };
  const Rho rhos[] = {{0.0, 0, 1}, {1.0 / 3.0, 1, 3}, {0.5, 1, 2}};
  for (const auto& rho : rhos) {
    for (int j = 0; j <= 6; ++j) {
      CAPTURE(rho.value);
      CAPTURE(j);
      CHECK(angular_resolution_exponent(rho.value, j) == rational_floor(rho.p, rho.q, j));
    }
  }
  CHECK_THROWS_AS(angular_resolution_exponent(-0.1, 1), Error);
  CHECK_THROWS_AS(angular_resolution_exponent(1.0, 1), Error);
  try {
    angular_resolution_exponent(2.0, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadRho);
  }
}

TEST_CASE("member counts across the parameter sweep") {
  const auto pair = dyadic_radial_pair();
  struct Rho {
    double value;
    long long p, q;
  };
  const Rho rhos[] = {{0.0, 0, 1}, {1.0 / 3.0, 1, 3}, {0.5, 1, 2}};
  for (int m : {1, 2, 3, 4, 5, 6, 7, 8}) {
    for (const auto& rho : rhos) {
      for (int j = 0; j <= 6; ++j) {
        const int expected = m << rational_floor(rho.p, rho.q, j);
        const auto fam = build_directional_family_2d(m, rho.value, j, 0.0, pair.phi, pair.psi);
        CAPTURE(m);
        CAPTURE(rho.value);
        CAPTURE(j);
        CHECK(fam.count == expected);
        CHECK(static_cast<int>(fam.members.size()) == expected);
      }
    }
  }
}

TEST_CASE("polar partitions square-sum to one") {
  for (int count : {2, 3, 4, 8, 16}) {
    const auto p = polar_partition_2d(count, M_PI / (4.0 * count));
    CAPTURE(count);
    CHECK(partition_tiling_residual(p, 1u << 14) < 1e-12);
  }
  CHECK(partition_tiling_residual(trivial_partition(2), 1024) == 0.0);
  CHECK_THROWS_AS(polar_partition_2d(4, M_PI), Error);      // transition too wide
  CHECK_THROWS_AS(polar_partition_2d(4, 0.0), Error);       // no transition at all
  CHECK_THROWS_AS(polar_partition_2d(0, M_PI / 16.0), Error);
}

TEST_CASE("trivial split reproduces the wavelet pointwise") {
  const auto pair = dyadic_radial_pair();
  const auto fam = build_directional_family_2d(1, 0.0, 5, 0.0, pair.phi, pair.psi);
  REQUIRE(fam.count == 1);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 10000; ++i) {
    const double xi[2] = {u(rng), u(rng)};
    CHECK(fam.members[0].eval(xi) == fam.psi.eval(xi));
  }
  const double origin[2] = {0.0, 0.0};
  CHECK(fam.members[0].eval(origin) == 0.0);
}

TEST_CASE("four equal sectors tile the wavelet energy") {
  const auto pair = dyadic_radial_pair();
  const auto fam = build_directional_family_2d(4, 0.0, 0, 0.0, pair.phi, pair.psi);
  REQUIRE(fam.count == 4);
  const auto grid = FrequencyGrid::standard_torus(2, 512);
  const Residual r = scan_grid(grid, [&](const double* xi) {
    double acc = 0.0;
    for (const auto& g : fam.members) {
      const double v = g.eval(xi);
      acc += v * v;
    }
    const double w = fam.psi.eval(xi);
    return std::fabs(acc - w * w);
  });
  CHECK(r.max < 1e-12);
}

TEST_CASE("member energies tile across levels and densities") {
  const auto pair = dyadic_radial_pair();
  const auto grid = FrequencyGrid::standard_torus(2, 512);
  struct Case {
    int m;
    double rho;
    int j;
    int expect;
  };
  const Case cases[] = {
      {4, 0.5, 3, 8}, {4, 0.5, 4, 16}, {1, 1.0 / 3.0, 6, 4}, {3, 0.5, 2, 6},
  };
  for (const auto& c : cases) {
    const auto fam = build_directional_family_2d(c.m, c.rho, c.j, 0.0, pair.phi, pair.psi);
    CAPTURE(c.m);
    CAPTURE(c.j);
    REQUIRE(fam.count == c.expect);
    const Residual r = scan_grid(grid, [&](const double* xi) {
      double acc = 0.0;
      for (const auto& g : fam.members) {
        const double v = g.eval(xi);
        acc += v * v;
      }
      const double w = fam.psi.eval(xi);
      return std::fabs(acc - w * w);
    });
    CAPTURE(r.max);
    CHECK(r.max < 1e-12);
  }
}

TEST_CASE("scale split holds with the members in place of the wavelet") {
  const auto pair = dyadic_radial_pair();
  const auto grid = FrequencyGrid::standard_torus(2, 512);
  for (int j = 0; j <= 4; ++j) {
    const auto fam = build_directional_family_2d(4, 0.5, j, 0.0, pair.phi, pair.psi);
    const Mat n = fam.phi.pair->dilation.n;
    const Residual r = scan_grid(grid, [&](const double* xi) {
      double y[2];
      n.apply(xi, y);
      double acc = fam.phi.eval(xi) * fam.phi.eval(xi);
      for (const auto& g : fam.members) {
        const double v = g.eval(xi);
        acc += v * v;
      }
      const double wide = fam.phi.eval(y);
      return std::fabs(acc - wide * wide);
    });
    CAPTURE(j);
    CAPTURE(r.max);
    CHECK(r.max < 1e-12);
  }
}

TEST_CASE("members rotate into the first member") {
  const auto pair = dyadic_radial_pair();
  const auto fam = build_directional_family_2d(4, 0.5, 3, 0.0, pair.phi, pair.psi);
  REQUIRE(fam.count == 8);
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  // Rotate in extended precision so the check measures the members, not the
  // rounding of the rotation itself.
  const long double pi_l = std::numbers::pi_v<long double>;
  for (int l = 0; l < fam.count; ++l) {
    const long double a = pi_l * static_cast<long double>(l) / static_cast<long double>(fam.count);
    const long double ca = std::cos(a);
    const long double sa = std::sin(a);
    for (int i = 0; i < 10000 / fam.count; ++i) {
      const double xi[2] = {u(rng), u(rng)};
      const double rot[2] = {static_cast<double>(ca * xi[0] - sa * xi[1]),
                             static_cast<double>(sa * xi[0] + ca * xi[1])};
      const double lhs = fam.members[static_cast<std::size_t>(l)].eval(xi);
      const double rhs = fam.members[0].eval(rot);
      CHECK(std::fabs(lhs - rhs) < 1e-14);
    }
  }
}

TEST_CASE("members vanish identically near the origin") {
  const auto pair = dyadic_radial_pair();
  const auto fam = build_directional_family_2d(2, 0.5, 2, 0.0, pair.phi, pair.psi);
  const double r1 = fam.psi.support_inner;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> rad(0.0, r1 * (1.0 - 1e-12));
  for (int i = 0; i < 20000; ++i) {
    const double t = ang(rng);
    const double r = rad(rng);
    const double xi[2] = {r * std::cos(t), r * std::sin(t)};
    for (const auto& g : fam.members) CHECK(g.eval(xi) == 0.0);
  }
}

TEST_CASE("support descriptors scale and contain the members") {
  const auto pair = dyadic_radial_pair();

  // rho = 0: the half-angle does not move with the level.
  const auto f0 = build_directional_family_2d(4, 0.0, 0, 0.0, pair.phi, pair.psi);
  const auto f5 = build_directional_family_2d(4, 0.0, 5, 0.0, pair.phi, pair.psi);
  CHECK(support_descriptor(f0, 0, 0).theta_half_width ==
        support_descriptor(f5, 0, 0).theta_half_width);

  // rho = 1/2: stepping j by 2 quadruples the length scale (via j_scale) while
  // the member count only doubles.
  const auto g2 = build_directional_family_2d(4, 0.5, 2, 0.0, pair.phi, pair.psi);
  const auto g4 = build_directional_family_2d(4, 0.5, 4, 0.0, pair.phi, pair.psi);
  CHECK(g4.count == 2 * g2.count);
  const auto d2 = support_descriptor(g2, 0, 2);
  const auto d4 = support_descriptor(g4, 0, 4);
  CHECK(d4.r_hi == doctest::Approx(4.0 * d2.r_hi).epsilon(1e-15));
  CHECK(d4.theta_half_width == doctest::Approx(0.5 * d2.theta_half_width).epsilon(1e-15));

  const auto fam = build_directional_family_2d(4, 0.5, 3, 0.0, pair.phi, pair.psi);
  CHECK_THROWS_AS(support_descriptor(fam, -1, 0), Error);
  CHECK_THROWS_AS(support_descriptor(fam, fam.count, 0), Error);

  // Every grid point where a member is nonzero sits inside its declared
  // annular wedge (union with the antipodal wedge).
  const auto grid = FrequencyGrid::standard_torus(2, 512);
  for (int l : {0, 3, 5}) {
    const auto d = support_descriptor(fam, l, 0);
    const auto& g = fam.members[static_cast<std::size_t>(l)];
    std::vector<double> xi(2);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < grid.total_points(); ++i) {
      grid.point(i, xi.data());
      if (g.eval(xi.data()) == 0.0) continue;
      ++inside;
      const double r = std::hypot(xi[0], xi[1]);
      CHECK(r >= d.r_lo * (1.0 - 1e-12));
      CHECK(r <= d.r_hi * (1.0 + 1e-12));
      const double theta = std::atan2(xi[1], xi[0]);
      CHECK(angle_distance_mod_pi(theta, d.center_angle) <= d.theta_half_width + 1e-12);
    }
    CHECK(inside > 100);
  }
}

TEST_CASE("splitting validates the partition and the inputs") {
  const auto pair = dyadic_radial_pair();
  CHECK_THROWS_AS(build_directional_family_2d(0, 0.5, 1, 0.0, pair.phi, pair.psi), Error);
  CHECK_THROWS_AS(build_directional_family_2d(2, -0.5, 1, 0.0, pair.phi, pair.psi), Error);
  // eps_base too wide for the window admissibility bound.
  try {
    build_directional_family_2d(2, 0.0, 0, M_PI, pair.phi, pair.psi);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadEps);
  }
  // A window stack that fails to square-sum to one is rejected.
  const auto plane = analyze_dilation(Mat::scalar(2, 2.0));
  const Generator phi2 = construct_phi(plane, 0.8);
  const Generator psi2 = construct_psi(phi2);
  AngularPartition broken;
  broken.dim = 2;
  broken.count = 1;
  broken.windows.push_back([](const double*) { return 0.9; });
  broken.center_angles.push_back(0.0);
  try {
    angular_split(psi2, broken);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PartitionResidualTooLarge);
  }
}

TEST_CASE("user-supplied sphere partitions split higher dimensions") {
  const auto space = analyze_dilation(Mat::scalar(3, 2.0));
  const Generator phi = construct_phi(space, 0.8);
  const Generator psi = construct_psi(phi);

  AngularPartition p;
  p.dim = 3;
  p.count = 2;
  p.windows.push_back([](const double* u) { return u[2] * u[2]; });
  p.windows.push_back([](const double* u) {
    const double z2 = u[2] * u[2];
    return std::sqrt(std::max(0.0, 1.0 - z2 * z2));
  });
  p.center_angles = {0.0, 0.0};
  CHECK(partition_tiling_residual(p, 100000) < 1e-12);

  const auto fam = angular_split(psi, p);
  REQUIRE(fam.count == 2);
  const auto grid = FrequencyGrid::standard_torus(3, 64);
  const Residual r = scan_grid(grid, [&](const double* xi) {
    double acc = 0.0;
    for (const auto& g : fam.members) {
      const double v = g.eval(xi);
      acc += v * v;
    }
    const double w = psi.eval(xi);
    return std::fabs(acc - w * w);
  });
  CHECK(r.max < 1e-12);
}
