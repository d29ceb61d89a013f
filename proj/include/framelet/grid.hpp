#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "framelet/error.hpp"

namespace framelet {

struct GridAxis {
  double origin = 0.0;
  double step = 0.0;
  std::size_t count = 0;
};

// Uniform sampling of a d-dimensional frequency box, row-major (last axis
// fastest). Points are implicit: xi_a = origin_a + step_a * index_a.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::vector<GridAxis> axes);

  // [-half, half)^d with n samples per axis (half-open, endpoint excluded).
  static FrequencyGrid centered_box(int dim, double half_width, std::size_t per_axis);
  // The standard torus cell [-pi, pi)^d.
  static FrequencyGrid standard_torus(int dim, std::size_t per_axis);

  int dim() const { return int(axes_.size()); }
  const std::vector<GridAxis>& axes() const { return axes_; }
  std::size_t total_points() const { return total_; }
  // Quadrature weight of one cell: product of steps.
  double cell_weight() const;
  // Decode a flat index into coordinates (out must hold dim() doubles).
  void point(std::size_t flat, double* out) const;

 private:
  std::vector<GridAxis> axes_;
  std::size_t total_;
};

struct ConditionReport {
  std::string condition_id;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::size_t points = 0;
  double tolerance = 0.0;
  bool passed = false;
  std::string csv_row() const;
};

std::string condition_csv_header();

// Streaming residual statistics with a deterministic merge order.
struct Residual {
  double max = 0.0;
  double sum = 0.0;
  std::size_t points = 0;

  void add(double r);
  void merge(const Residual& other);
  double mean() const { return points ? sum / double(points) : 0.0; }
  ConditionReport report(std::string condition_id, double tolerance) const;
};

// Evaluates fn at every grid point and accumulates |fn(xi)|. Work is split
// into fixed-size index blocks merged in block order, so the result is
// byte-identical no matter how many threads run.
Residual scan_grid(const FrequencyGrid& grid, const std::function<double(const double*)>& fn);

}  // namespace framelet
