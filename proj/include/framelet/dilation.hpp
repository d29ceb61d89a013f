#pragma once

#include <span>
#include <vector>

#include "framelet/mat.hpp"

namespace framelet {

// A dilation matrix M together with cached analysis data. The frequency-side
// contraction is n = (M^T)^{-1}.
struct DilationMatrix {
  Mat m;
  Mat mt;
  Mat n;
  int dim = 0;
  double det_abs = 0.0;
  std::vector<double> eigen_moduli;  // ascending
  bool expansive = false;
  bool is_integer = false;
};

// Populates a DilationMatrix. Non-expansive inputs are flagged, not rejected.
DilationMatrix analyze_dilation(const Mat& entries);

// Vector norm |x| = sqrt(x^T H x) making a fixed matrix A act nearly
// isotropically: lower_factor * |x| <= |A x| <= upper_factor * |x|.
// When `exact_ratio` is set the two factors coincide and the inequality is an
// equality up to roundoff (conformal A, e.g. scaled rotations).
struct AdaptedNorm {
  int dim = 0;
  double epsilon = 0.0;
  bool exact_ratio = false;
  double lower_factor = 0.0;
  double upper_factor = 0.0;
  std::vector<double> h;  // dim x dim, row-major, symmetric positive definite
  bool identity_h = true;
  double h_spectral_lo = 1.0;  // smallest eigenvalue of H
  double h_spectral_hi = 1.0;  // largest eigenvalue of H

  double operator()(const double* x) const;
  double operator()(std::span<const double> x) const;

  // |x| <= r implies Euclidean length <= euclid_radius(r), and Euclidean
  // length R implies |x| <= adapted_bound(R). Both are exact for identity H.
  double euclid_radius(double r) const;
  double adapted_bound(double euclid_len) const;
};

// Builds the adapted norm for the action of `a` (Gram matrix of a basis
// change). Conformal matrices get H = I with exact equal factors; otherwise a
// well-conditioned eigenbasis or, failing that, a scaled Schur basis yields
// factors (min|lambda| - epsilon, max|lambda| + epsilon).
AdaptedNorm build_adapted_norm(const Mat& a, double epsilon);
AdaptedNorm build_adapted_norm(const DilationMatrix& m, double epsilon);
double default_norm_epsilon(const DilationMatrix& m);

// Coset data for integer M: gamma represents Z^d / (M Z^d); omega lists
// (M^T)^{-1} Z^d intersected with [0,1)^d. Both have |det M| elements.
struct CosetSet {
  std::vector<std::vector<long long>> gamma;
  std::vector<std::vector<double>> omega;
};

CosetSet coset_representatives(const DilationMatrix& m);

// Finite sample of the union of the lattices (M^T)^j Z^d, j in [J, j_max],
// within a Euclidean ball, with the smallest pairwise separation and a
// certificate that (M^T)^{-j} k contracts geometrically.
struct LatticeSample {
  std::vector<std::vector<double>> points;
  double min_separation = 0.0;
  bool contraction_certified = false;
  double contraction_factor = 0.0;  // certified decay ratio per level, < 1
};

LatticeSample certify_lattice_conditions(const DilationMatrix& m, int coarsest_level,
                                         double radius, int j_max);

// Largest c (with a 1% safety margin) such that, in the adapted norm of M^T,
//   B_c subset B_{lambda c} subset M^T B_c subset (-lambda0 pi, lambda0 pi)^d
// and (M^T)^2 B_c also fits in that cube. `norm` must be adapted to M^T.
double choose_support_radius(const DilationMatrix& m, double lambda0, const AdaptedNorm& norm);

}  // namespace framelet
