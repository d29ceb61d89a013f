#include "framelet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "framelet/parallel.hpp"

namespace framelet {

FrequencyGrid::FrequencyGrid(std::vector<GridAxis> axes) : axes_(std::move(axes)), total_(1) {
  if (axes_.empty()) fail(Errc::SizeMismatch, "grid needs at least one axis");
  for (const auto& ax : axes_) {
    if (ax.count < 2) fail(Errc::SizeMismatch, "grid axis needs at least 2 samples");
    if (!(ax.step > 0.0)) fail(Errc::SizeMismatch, "grid axis step must be positive");
    total_ *= ax.count;
  }
}

FrequencyGrid FrequencyGrid::centered_box(int dim, double half_width, std::size_t per_axis) {
  if (dim < 1) fail(Errc::SizeMismatch, "grid dimension must be >= 1");
  if (!(half_width > 0.0)) fail(Errc::SizeMismatch, "grid half width must be positive");
  std::vector<GridAxis> axes(static_cast<std::size_t>(dim));
  for (auto& ax : axes) {
    ax.origin = -half_width;
    ax.step = 2.0 * half_width / double(per_axis);
    ax.count = per_axis;
  }
  return FrequencyGrid(std::move(axes));
}

FrequencyGrid FrequencyGrid::standard_torus(int dim, std::size_t per_axis) {
  return centered_box(dim, M_PI, per_axis);
}

double FrequencyGrid::cell_weight() const {
  double w = 1.0;
  for (const auto& ax : axes_) w *= ax.step;
  return w;
}

void FrequencyGrid::point(std::size_t flat, double* out) const {
  for (std::size_t a = axes_.size(); a-- > 0;) {
    const auto& ax = axes_[a];
    out[a] = ax.origin + ax.step * double(flat % ax.count);
    flat /= ax.count;
  }
}

std::string ConditionReport::csv_row() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%zu,%.17g,%s", condition_id.c_str(),
                max_residual, mean_residual, points, tolerance, passed ? "true" : "false");
  return buf;
}

std::string condition_csv_header() {
  return "condition_id,max_residual,mean_residual,points,tolerance,passed";
}

void Residual::add(double r) {
  r = std::fabs(r);
  max = std::max(max, r);
  sum += r;
  ++points;
}

void Residual::merge(const Residual& other) {
  max = std::max(max, other.max);
  sum += other.sum;
  points += other.points;
}

ConditionReport Residual::report(std::string condition_id, double tolerance) const {
  ConditionReport rep;
  rep.condition_id = std::move(condition_id);
  rep.max_residual = max;
  rep.mean_residual = mean();
  rep.points = points;
  rep.tolerance = tolerance;
  rep.passed = max <= tolerance;
  return rep;
}

Residual scan_grid(const FrequencyGrid& grid, const std::function<double(const double*)>& fn) {
  constexpr std::size_t kBlock = 1 << 14;
  const std::size_t total = grid.total_points();
  std::vector<Residual> partial(block_count(total, kBlock));
  const int dim = grid.dim();
  for_blocks(total, kBlock, [&](std::size_t b, std::size_t begin, std::size_t end) {
    double xi[8];
    std::vector<double> xi_heap;
    double* p = xi;
    if (dim > 8) {
      xi_heap.resize(std::size_t(dim));
      p = xi_heap.data();
    }
    Residual acc;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point(i, p);
      acc.add(fn(p));
    }
    partial[b] = acc;
  });
  Residual out;
  for (const auto& r : partial) out.merge(r);
  return out;
}

}  // namespace framelet
