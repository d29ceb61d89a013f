#include "framelet/mat.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace framelet {

Mat::Mat(int dim) : n_(dim), a_(static_cast<size_t>(dim) * dim, 0.0) {
  if (dim < 1) fail(Errc::SizeMismatch, "matrix dimension must be positive");
}

Mat Mat::identity(int dim) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::scalar(int dim, double s) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = s;
  return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  int n = static_cast<int>(rows.size());
  Mat m(n);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) fail(Errc::SizeMismatch, "matrix rows must be square");
    int j = 0;
    for (double v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

void Mat::apply(const double* x, double* out) const {
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += at(i, j) * x[j];
    out[i] = s;
  }
}

Mat Mat::operator*(const Mat& o) const {
  if (n_ != o.n_) fail(Errc::SizeMismatch, "matrix product dimension mismatch");
  Mat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      double v = at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < n_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

Mat Mat::transpose() const {
  Mat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

namespace {

// Returns the permutation sign, or 0 if a pivot degenerates.
int eliminate(std::vector<double>& a, std::vector<double>& rhs, int n) {
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[static_cast<size_t>(r) * n + col]) >
          std::fabs(a[static_cast<size_t>(piv) * n + col]))
        piv = r;
    if (std::fabs(a[static_cast<size_t>(piv) * n + col]) < 1e-300) return 0;
    if (piv != col) {
      sign = -sign;
      for (int j = 0; j < n; ++j) {
        std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(col) * n + j]);
        std::swap(rhs[static_cast<size_t>(piv) * n + j], rhs[static_cast<size_t>(col) * n + j]);
      }
    }
    double d = a[static_cast<size_t>(col) * n + col];
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[static_cast<size_t>(r) * n + col] / d;
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
        rhs[static_cast<size_t>(r) * n + j] -= f * rhs[static_cast<size_t>(col) * n + j];
      }
    }
  }
  return sign;
}

}  // namespace

Mat Mat::inverse() const {
  std::vector<double> a = a_;
  Mat id = Mat::identity(n_);
  std::vector<double> rhs = id.data();
  if (eliminate(a, rhs, n_) == 0) fail(Errc::SingularMatrix, "matrix is numerically singular");
  Mat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      r.at(i, j) = rhs[static_cast<size_t>(i) * n_ + j] / a[static_cast<size_t>(i) * n_ + i];
  return r;
}

Mat Mat::pow(int k) const {
  if (k < 0) fail(Errc::IndexOutOfRange, "matrix power expects k >= 0");
  Mat r = Mat::identity(n_);
  for (int i = 0; i < k; ++i) r = r * (*this);
  return r;
}

Mat mat_power(const Mat& a, int k) {
  if (k >= 0) return a.pow(k);
  return a.inverse().pow(-k);
}

double Mat::det() const {
  std::vector<double> a = a_;
  double d = 1.0;
  int n = n_;
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[static_cast<size_t>(r) * n + col]) >
          std::fabs(a[static_cast<size_t>(piv) * n + col]))
        piv = r;
    double p = a[static_cast<size_t>(piv) * n + col];
    if (std::fabs(p) < 1e-300) return 0.0;
    if (piv != col) {
      sign = -sign;
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(col) * n + j]);
    }
    d *= p;
    for (int r = col + 1; r < n; ++r) {
      double f = a[static_cast<size_t>(r) * n + col] / p;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j)
        a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
    }
  }
  return sign * d;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

Mat parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<double> r;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        fail(Errc::BadConfig, "bad matrix entry '" + cell + "'");
      }
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
      if (pos != cell.size()) fail(Errc::BadConfig, "bad matrix entry '" + cell + "'");
      r.push_back(v);
    }
    if (!r.empty()) rows.push_back(std::move(r));
  }
  if (rows.empty()) fail(Errc::BadConfig, "empty matrix text");
  int n = static_cast<int>(rows.size());
  Mat m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      fail(Errc::BadConfig, "matrix text must be square (rows ';', entries ',')");
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::string format_matrix(const Mat& m) {
  std::string out;
  char buf[64];
  for (int i = 0; i < m.dim(); ++i) {
    if (i) out += ';';
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", m.at(i, j));
      out += buf;
    }
  }
  return out;
}

}  // namespace framelet
