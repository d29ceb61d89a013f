#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "framelet/error.hpp"

namespace framelet {

// Dense row-major square matrix. Dimensions stay in the single digits, so the
// implementation favors clarity over blocking; inversion is partial-pivot
// elimination and throws SingularMatrix when a pivot collapses.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int dim);
  static Mat identity(int dim);
  static Mat scalar(int dim, double s);
  static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);

  int dim() const { return n_; }
  double& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

  // out = A x; x and out must not alias.
  void apply(const double* x, double* out) const;

  Mat operator*(const Mat& o) const;
  Mat transpose() const;
  Mat inverse() const;
  Mat pow(int k) const;
  double det() const;
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// A^k for any integer k; negative exponents go through the inverse.
Mat mat_power(const Mat& a, int k);

// Parses "a,b;c,d" row-major matrix text (";" between rows, "," between entries).
Mat parse_matrix(const std::string& text);
std::string format_matrix(const Mat& m);

}  // namespace framelet
