#include "framelet/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace framelet {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXd to_eigen(const Mat& a) {
  return Eigen::Map<const RowMat>(a.data().data(), a.dim(), a.dim());
}

// Exact integer linear algebra for coset enumeration (entries stay tiny).
long long int_det(const std::vector<long long>& a, int d) {
  if (d == 1) return a[0];
  long long acc = 0;
  std::vector<long long> minor((d - 1) * (d - 1));
  for (int c = 0; c < d; ++c) {
    for (int i = 1; i < d; ++i)
      for (int j = 0, jj = 0; j < d; ++j)
        if (j != c) minor[(i - 1) * (d - 1) + jj++] = a[i * d + j];
    const long long cof = int_det(minor, d - 1);
    acc += ((c % 2) ? -1 : 1) * a[c] * cof;
  }
  return acc;
}

// adj(A) with adj(A) * A = det(A) * I.
std::vector<long long> int_adjugate(const std::vector<long long>& a, int d) {
  std::vector<long long> adj(d * d);
  if (d == 1) {
    adj[0] = 1;
    return adj;
  }
  std::vector<long long> minor((d - 1) * (d - 1));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      for (int r = 0, rr = 0; r < d; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < d; ++c)
          if (c != j) minor[rr * (d - 1) + cc++] = a[r * d + c];
        ++rr;
      }
      const long long cof = (((i + j) % 2) ? -1 : 1) * int_det(minor, d - 1);
      adj[j * d + i] = cof;
    }
  return adj;
}

std::vector<long long> round_to_int(const Mat& a) {
  std::vector<long long> out(std::size_t(a.dim()) * a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const double v = a.at(i, j);
      const double r = std::round(v);
      if (std::fabs(v - r) > 1e-12)
        fail(Errc::NotInteger, "matrix entry " + std::to_string(v) + " is not integral");
      out[std::size_t(i) * a.dim() + j] = (long long)(r);
    }
  return out;
}

// Runs fn(k) for every integer vector k with lo[i] <= k[i] <= hi[i].
template <class Fn>
void for_integer_box(const std::vector<long long>& lo, const std::vector<long long>& hi, Fn fn) {
  const int d = int(lo.size());
  std::vector<long long> k(lo);
  for (;;) {
    fn(k);
    int axis = d - 1;
    while (axis >= 0) {
      if (++k[axis] <= hi[axis]) break;
      k[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) return;
  }
}

}  // namespace

DilationMatrix analyze_dilation(const Mat& entries) {
  DilationMatrix dm;
  dm.m = entries;
  dm.dim = entries.dim();
  dm.mt = entries.transpose();

  const Eigen::MatrixXd e = to_eigen(entries);
  const double det = e.determinant();
  if (std::fabs(det) <= 1e-12) fail(Errc::SingularMatrix, "dilation matrix is singular");
  dm.det_abs = std::fabs(det);
  dm.n = dm.mt.inverse();

  const Eigen::VectorXcd ev = e.eigenvalues();
  dm.eigen_moduli.resize(std::size_t(dm.dim));
  for (int i = 0; i < dm.dim; ++i) dm.eigen_moduli[std::size_t(i)] = std::abs(ev(i));
  std::sort(dm.eigen_moduli.begin(), dm.eigen_moduli.end());
  dm.expansive = dm.eigen_moduli.front() > 1.0;

  dm.is_integer = true;
  for (int i = 0; i < dm.dim && dm.is_integer; ++i)
    for (int j = 0; j < dm.dim; ++j)
      if (std::fabs(entries.at(i, j) - std::round(entries.at(i, j))) > 1e-12) {
        dm.is_integer = false;
        break;
      }
  return dm;
}

double AdaptedNorm::operator()(const double* x) const {
  if (identity_h) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += x[i] * x[i];
    return std::sqrt(s);
  }
  double q = 0.0;
  for (int i = 0; i < dim; ++i) {
    double row = 0.0;
    for (int j = 0; j < dim; ++j) row += h[std::size_t(i) * dim + j] * x[j];
    q += x[i] * row;
  }
  return std::sqrt(std::max(q, 0.0));
}

double AdaptedNorm::operator()(std::span<const double> x) const {
  if (int(x.size()) != dim) fail(Errc::SizeMismatch, "norm argument has wrong dimension");
  return (*this)(x.data());
}

double AdaptedNorm::euclid_radius(double r) const { return r / std::sqrt(h_spectral_lo); }

double AdaptedNorm::adapted_bound(double euclid_len) const {
  return std::sqrt(h_spectral_hi) * euclid_len;
}

AdaptedNorm build_adapted_norm(const Mat& a, double epsilon) {
  if (!(epsilon > 0.0)) fail(Errc::BadConfig, "norm epsilon must be positive");
  const int d = a.dim();
  AdaptedNorm norm;
  norm.dim = d;
  norm.epsilon = epsilon;
  norm.h.assign(std::size_t(d) * d, 0.0);
  for (int i = 0; i < d; ++i) norm.h[std::size_t(i) * d + i] = 1.0;

  const Eigen::MatrixXd e = to_eigen(a);
  const Eigen::VectorXcd ev = e.eigenvalues();
  double mod_lo = std::abs(ev(0)), mod_hi = mod_lo;
  for (int i = 1; i < d; ++i) {
    mod_lo = std::min(mod_lo, std::abs(ev(i)));
    mod_hi = std::max(mod_hi, std::abs(ev(i)));
  }

  // Conformal shortcut: A^T A = r^2 I means the Euclidean norm itself is
  // adapted, with the exact ratio r.
  const Eigen::MatrixXd gram = e.transpose() * e;
  const double r2 = gram.trace() / d;
  bool conformal = true;
  for (int i = 0; i < d && conformal; ++i)
    for (int j = 0; j < d; ++j) {
      const double want = (i == j) ? r2 : 0.0;
      if (std::fabs(gram(i, j) - want) > 1e-12 * std::max(1.0, r2)) {
        conformal = false;
        break;
      }
    }
  if (conformal) {
    norm.exact_ratio = true;
    norm.lower_factor = norm.upper_factor = std::sqrt(r2);
    return norm;
  }

  // Try a well-conditioned eigenbasis; its Gram matrix keeps full precision
  // only when cond(V)^2 stays well inside double range.
  Eigen::MatrixXcd g;
  bool have_g = false;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(e.cast<std::complex<double>>());
  if (es.info() == Eigen::Success) {
    const Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    const double smin = svd.singularValues()(d - 1);
    const double smax = svd.singularValues()(0);
    if (smin > 0.0 && smax / smin <= 1e6) {
      g = v.inverse();
      have_g = true;
    }
  }
  if (!have_g) {
    // Scaled Schur basis: A = Q T Q^H; diag scaling D shrinks the strictly
    // upper part of T below epsilon, so D^{-1} Q^H works as basis change.
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(e.cast<std::complex<double>>(), true);
    if (schur.info() != Eigen::Success) fail(Errc::SingularMatrix, "Schur factorization failed");
    const Eigen::MatrixXcd t = schur.matrixT();
    double upper2 = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) upper2 += std::norm(t(i, j));
    const double upper_norm = std::sqrt(upper2);
    const double delta = upper_norm <= 0.999 * epsilon ? 1.0 : 0.999 * epsilon / upper_norm;
    Eigen::VectorXcd dinv(d);
    double scale = 1.0;
    for (int i = 0; i < d; ++i) {
      dinv(i) = 1.0 / scale;
      scale *= delta;
    }
    g = dinv.asDiagonal() * schur.matrixU().adjoint();
  }

  const Eigen::MatrixXcd gram_c = g.adjoint() * g;
  Eigen::MatrixXd hsym = gram_c.real();
  hsym = 0.5 * (hsym + hsym.transpose()).eval();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) norm.h[std::size_t(i) * d + j] = hsym(i, j);
  norm.identity_h = false;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hs(hsym);
  norm.h_spectral_lo = hs.eigenvalues()(0);
  norm.h_spectral_hi = hs.eigenvalues()(d - 1);
  if (!(norm.h_spectral_lo > 0.0))
    fail(Errc::SingularMatrix, "adapted norm Gram matrix is not positive definite");

  norm.lower_factor = mod_lo - epsilon;
  norm.upper_factor = mod_hi + epsilon;
  return norm;
}

AdaptedNorm build_adapted_norm(const DilationMatrix& m, double epsilon) {
  return build_adapted_norm(m.m, epsilon);
}

double default_norm_epsilon(const DilationMatrix& m) {
  const double lo = m.eigen_moduli.front();
  return lo > 1.0 ? 0.5 * (lo - 1.0) : 0.1;
}

CosetSet coset_representatives(const DilationMatrix& m) {
  if (!m.is_integer) fail(Errc::NotInteger, "coset enumeration needs an integer dilation");
  const int d = m.dim;
  const std::vector<long long> mi = round_to_int(m.m);
  const long long det = int_det(mi, d);
  const long long adet = det < 0 ? -det : det;
  const long long sgn = det < 0 ? -1 : 1;
  const std::vector<long long> adj = int_adjugate(mi, d);

  // Transposed pieces for the omega lattice (M^T)^{-1} Z^d.
  std::vector<long long> mt(std::size_t(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) mt[std::size_t(i) * d + j] = mi[std::size_t(j) * d + i];
  const std::vector<long long> adj_t = int_adjugate(mt, d);

  auto corners_box = [&](const std::vector<long long>& mat, std::vector<long long>& lo,
                         std::vector<long long>& hi) {
    lo.assign(std::size_t(d), 0);
    hi.assign(std::size_t(d), 0);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      for (int i = 0; i < d; ++i) {
        long long v = 0;
        for (int j = 0; j < d; ++j)
          if (mask & (1u << j)) v += mat[std::size_t(i) * d + j];
        lo[std::size_t(i)] = std::min(lo[std::size_t(i)], v - 1);
        hi[std::size_t(i)] = std::max(hi[std::size_t(i)], v + 1);
      }
    }
  };

  CosetSet out;
  std::vector<long long> lo, hi;

  corners_box(mi, lo, hi);
  for_integer_box(lo, hi, [&](const std::vector<long long>& k) {
    // k represents a coset iff M^{-1} k lands in [0,1)^d; exactly:
    // 0 <= sgn * (adj k)_i < |det|.
    for (int i = 0; i < d; ++i) {
      long long z = 0;
      for (int j = 0; j < d; ++j) z += adj[std::size_t(i) * d + j] * k[std::size_t(j)];
      z *= sgn;
      if (z < 0 || z >= adet) return;
    }
    out.gamma.push_back(k);
  });

  corners_box(mt, lo, hi);
  for_integer_box(lo, hi, [&](const std::vector<long long>& k) {
    std::vector<double> w(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      long long z = 0;
      for (int j = 0; j < d; ++j) z += adj_t[std::size_t(i) * d + j] * k[std::size_t(j)];
      z *= sgn;
      if (z < 0 || z >= adet) return;
      w[std::size_t(i)] = double(z) / double(adet);
    }
    out.omega.push_back(std::move(w));
  });

  std::sort(out.gamma.begin(), out.gamma.end());
  std::sort(out.omega.begin(), out.omega.end());
  if ((long long)(out.gamma.size()) != adet || (long long)(out.omega.size()) != adet)
    fail(Errc::SizeMismatch, "coset enumeration produced a wrong count");
  return out;
}

LatticeSample certify_lattice_conditions(const DilationMatrix& m, int coarsest_level,
                                         double radius, int j_max) {
  if (!m.expansive) fail(Errc::NotExpansive, "lattice certification needs an expansive dilation");
  if (!(radius > 0.0)) fail(Errc::BadConfig, "lattice radius must be positive");
  if (j_max < coarsest_level) fail(Errc::BadConfig, "j_max must be at least the coarsest level");
  const int d = m.dim;

  LatticeSample out;
  for (int j = coarsest_level; j <= j_max; ++j) {
    const Mat b = mat_power(m.mt, j);
    const Mat binv = b.inverse();
    std::vector<long long> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      double row = 0.0;
      for (int c = 0; c < d; ++c) row += binv.at(i, c) * binv.at(i, c);
      const long long bound = (long long)(std::floor(std::sqrt(row) * radius)) + 1;
      lo[std::size_t(i)] = -bound;
      hi[std::size_t(i)] = bound;
    }
    std::vector<double> p(static_cast<std::size_t>(d)), kd(static_cast<std::size_t>(d));
    for_integer_box(lo, hi, [&](const std::vector<long long>& k) {
      for (int i = 0; i < d; ++i) kd[std::size_t(i)] = double(k[std::size_t(i)]);
      b.apply(kd.data(), p.data());
      double len2 = 0.0;
      for (int i = 0; i < d; ++i) len2 += p[std::size_t(i)] * p[std::size_t(i)];
      if (len2 <= radius * radius * (1.0 + 1e-12)) out.points.push_back(p);
    });
  }

  std::sort(out.points.begin(), out.points.end());
  auto close = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (int i = 0; i < d; ++i)
      if (std::fabs(a[std::size_t(i)] - b[std::size_t(i)]) > 1e-9) return false;
    return true;
  };
  out.points.erase(std::unique(out.points.begin(), out.points.end(), close), out.points.end());

  double min_sep2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.points.size(); ++i)
    for (std::size_t j = i + 1; j < out.points.size(); ++j) {
      double s2 = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = out.points[i][std::size_t(c)] - out.points[j][std::size_t(c)];
        s2 += diff * diff;
      }
      min_sep2 = std::min(min_sep2, s2);
    }
  out.min_separation = out.points.size() > 1 ? std::sqrt(min_sep2) : 0.0;

  const AdaptedNorm norm = build_adapted_norm(m.mt, default_norm_epsilon(m));
  if (norm.lower_factor > 1.0) {
    out.contraction_certified = true;
    out.contraction_factor = 1.0 / norm.lower_factor;
  }
  return out;
}

double choose_support_radius(const DilationMatrix& m, double lambda0, const AdaptedNorm& norm) {
  if (!(lambda0 > 0.0 && lambda0 < 1.0))
    fail(Errc::DegenerateLambda0, "lambda0 must lie in (0,1)");
  if (!m.expansive) fail(Errc::NotExpansive, "support radius needs an expansive dilation");
  if (!(norm.lower_factor > 1.0))
    fail(Errc::NotExpansive, "adapted norm does not certify expansion (shrink epsilon)");
  if (norm.dim != m.dim) fail(Errc::SizeMismatch, "norm dimension does not match dilation");

  const int d = m.dim;
  const Mat mt2 = m.mt * m.mt;
  std::vector<double> u(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
  double s_max = 0.0;

  auto probe = [&]() {
    const double r = norm(u.data());
    for (int i = 0; i < d; ++i) x[std::size_t(i)] = u[std::size_t(i)] / r;
    m.mt.apply(x.data(), y.data());
    for (int i = 0; i < d; ++i) s_max = std::max(s_max, std::fabs(y[std::size_t(i)]));
    mt2.apply(x.data(), y.data());
    for (int i = 0; i < d; ++i) s_max = std::max(s_max, std::fabs(y[std::size_t(i)]));
  };

  if (d == 1) {
    u[0] = 1.0;
    probe();
    u[0] = -1.0;
    probe();
  } else if (d == 2) {
    const std::size_t count = 20000;  // multiple of 4 so the axes are hit exactly
    for (std::size_t t = 0; t < count; ++t) {
      const double theta = 2.0 * M_PI * double(t) / double(count);
      u[0] = std::cos(theta);
      u[1] = std::sin(theta);
      probe();
    }
  } else {
    std::mt19937_64 rng(0x5EED);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t count = std::size_t(10000) * std::size_t(d);
    for (std::size_t t = 0; t < count; ++t) {
      double len2 = 0.0;
      for (int i = 0; i < d; ++i) {
        u[std::size_t(i)] = gauss(rng);
        len2 += u[std::size_t(i)] * u[std::size_t(i)];
      }
      if (len2 < 1e-12) continue;
      probe();
    }
    // Always include the coordinate axes.
    for (int axis = 0; axis < d; ++axis) {
      std::fill(u.begin(), u.end(), 0.0);
      u[std::size_t(axis)] = 1.0;
      probe();
      u[std::size_t(axis)] = -1.0;
      probe();
    }
  }

  return 0.99 * lambda0 * M_PI / s_max;
}

}  // namespace framelet
