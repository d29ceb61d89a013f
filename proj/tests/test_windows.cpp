#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "framelet/windows.hpp"

using namespace framelet;

TEST_CASE("smooth step plateaus are bit-exact") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(2.0) == 1.0);
  CHECK(smooth_step(1.0 + 1e-14) == 1.0);
}

TEST_CASE("smooth step midpoint and range") {
  CHECK(smooth_step(0.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  for (int i = 0; i <= 100; ++i) {
    const double v = smooth_step(i / 100.0);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("smooth step monotone, strictly so where exp(-1/t) is representable") {
  double prev = smooth_step(0.0);
  for (int i = 0; i <= 1000; ++i) {
    const double cur = smooth_step(double(i) / 1000.0);
    CHECK(cur >= prev);
    prev = cur;
  }
  // The tails pin to exact 0/1 once exp(-1/t) underflows (t < ~1/745) or
  // 1 - value^2 drops below 2^-53 (t > ~0.95); in between the step must be
  // strictly monotone.
  prev = smooth_step(2.0 / 1000.0);
  for (int i = 3; i <= 940; ++i) {
    const double cur = smooth_step(double(i) / 1000.0);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("smooth step complementary squares sum to one") {
  double worst = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    const double t = double(i) / 4096.0;
    const double a = smooth_step(t);
    const double b = smooth_step(1.0 - t);
    worst = std::max(worst, std::fabs(a * a + b * b - 1.0));
  }
  CHECK(worst < 1e-15);
}

TEST_CASE("smooth step slope bound dominates finite differences") {
  const double bound = smooth_step_max_slope();
  CHECK(bound > 1.0);
  CHECK(bound < 10.0);
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double t0 = double(i) / n;
    const double t1 = double(i + 1) / n;
    CHECK(std::fabs(smooth_step(t1) - smooth_step(t0)) * n <= bound);
  }
}

TEST_CASE("bump plateau, support, and evenness") {
  CHECK(bump(1.0, 0.0) == 1.0);
  CHECK(bump(1.0, 0.49) == 1.0);
  CHECK(bump(1.0, 1.0) == 0.0);
  CHECK(bump(1.0, -1.0) == 0.0);
  CHECK(bump(1.0, 1.5) == 0.0);
  const double v = bump(1.0, 0.75);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK(bump(1.0, 0.75) == bump(1.0, -0.75));
  for (int i = 0; i <= 1000; ++i) {
    const double t = -1.25 + 2.5 * double(i) / 1000.0;
    CHECK(bump(2.0, t) == bump(2.0, -t));
  }
  CHECK_THROWS_AS(bump(0.0, 0.1), Error);
  CHECK_THROWS_AS(bump(-1.0, 0.1), Error);
}

TEST_CASE("tensor cutoff plateau and support") {
  TensorCutoff h(2, 0.8, 0.1);
  const double in[2] = {0.0, 0.0};
  CHECK(h(std::span<const double>(in, 2)) == 1.0);
  const double edge[2] = {0.8 * M_PI, -0.8 * M_PI};
  CHECK(h(std::span<const double>(edge, 2)) == 1.0);
  const double out[2] = {0.95 * M_PI, 0.0};
  CHECK(h(std::span<const double>(out, 2)) == 0.0);
  const double mid[2] = {0.85 * M_PI, 0.0};
  const double v = h(std::span<const double>(mid, 2));
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  const double mid2[2] = {0.85 * M_PI, 0.85 * M_PI};
  CHECK(h(std::span<const double>(mid2, 2)) == doctest::Approx(v * v).epsilon(1e-14));
}

TEST_CASE("tensor cutoff rejects bad parameters") {
  CHECK_THROWS_AS(TensorCutoff(2, 1.2, 0.1), Error);
  CHECK_THROWS_AS(TensorCutoff(2, -0.1, 0.1), Error);
  CHECK_THROWS_AS(TensorCutoff(2, 0.8, 0.3), Error);
  CHECK_THROWS_AS(TensorCutoff(2, 0.8, -0.1), Error);
  CHECK_THROWS_AS(TensorCutoff(2, 0.8, 0.2), Error);
  CHECK_THROWS_AS(TensorCutoff(0, 0.8, 0.1), Error);
}

TEST_CASE("angular window plateau, support, and default margin") {
  AngularWindow a1(1, M_PI_4);
  CHECK(a1(0.0) == 1.0);
  CHECK(AngularWindow::default_eps(4) == doctest::Approx(M_PI / 16.0).epsilon(1e-15));
  AngularWindow a4 = AngularWindow::with_default_eps(4);
  CHECK(a4(0.0) == 1.0);
  CHECK(a4(M_PI_2) == 0.0);
  CHECK(a4(a4.plateau_half_width() * 0.999) == 1.0);
  CHECK(a4(a4.support_half_width() * 1.001) == 0.0);
  CHECK_THROWS_AS(AngularWindow(4, 0.5), Error);
  CHECK_THROWS_AS(AngularWindow(4, 0.0), Error);
  CHECK_THROWS_AS(AngularWindow(4, -0.1), Error);
}

TEST_CASE("angular window mid-overlap symmetry point") {
  AngularWindow a(2, M_PI_4);
  const double v = a(M_PI_4);
  CHECK(v * v == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("angular window rotates to a squared partition of the circle") {
  for (int n : {1, 2, 4}) {
    AngularWindow a = AngularWindow::with_default_eps(n);
    double worst = 0.0;
    const int grid = 1 << 14;
    for (int i = 0; i < grid; ++i) {
      const double theta = -M_PI + 2.0 * M_PI * double(i) / grid;
      double sum = 0.0;
      for (int l = 0; l < 2 * n; ++l) {
        const double v = a(theta + M_PI * double(l) / n);
        sum += v * v;
      }
      worst = std::max(worst, std::fabs(sum - 1.0));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("angular window with the widest margin still tiles") {
  AngularWindow a(4, M_PI / 16.0);
  double worst = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const double theta = -M_PI + 2.0 * M_PI * double(i) / 4096.0;
    double sum = 0.0;
    for (int l = 0; l < 8; ++l) {
      const double v = a(theta + M_PI * double(l) / 4.0);
      sum += v * v;
    }
    worst = std::max(worst, std::fabs(sum - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("angular window is 2pi periodic") {
  AngularWindow a = AngularWindow::with_default_eps(3);
  for (int i = 0; i <= 100; ++i) {
    const double theta = -M_PI + 2.0 * M_PI * double(i) / 100.0;
    CHECK(a(theta + 2.0 * M_PI) == doctest::Approx(a(theta)).epsilon(1e-13));
    CHECK(a(theta - 2.0 * M_PI) == doctest::Approx(a(theta)).epsilon(1e-13));
  }
}
