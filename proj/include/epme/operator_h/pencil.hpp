#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "epme/linalg/qpoly.hpp"
#include "epme/operator_h/spectral.hpp"

namespace epme::operator_h {

struct PencilEigenpair {
  std::complex<double> lambda;
  /// Set when λ is rational; the eigenvector is then found exactly.
  std::optional<mpq_class> exact_lambda;
  std::size_t multiplicity = 1;
  /// Unit vector with (A − λB)z = 0 and Bz ≠ 0.
  Eigen::VectorXcd vector;
  /// ‖(A − λB)z‖ / ‖z‖ in double precision.
  double residual = 0;
};

/// Finite spectrum of A − λB over Q.
///
/// The normal rank r is the largest rank of A − λB over n + 2 integer samples of λ (n the
/// size), which is exact because the rank falls below r at no more than n values. When
/// r = n the pencil is regular and its spectral polynomial is det(A − λB) made monic;
/// otherwise it is singular and the polynomial is the monic gcd of all r×r minors, whose
/// roots are exactly the λ where the rank falls below r.
struct PencilSolution {
  std::size_t size = 0;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  std::size_t normal_rank = 0;
  bool singular = false;
  linalg::QPoly spectral_polynomial;
  std::vector<PencilEigenpair> finite;
  /// Roots whose whole kernel lies in ker B, so no eigenvector with Bz ≠ 0 exists.
  std::size_t degenerate_roots = 0;
};

PencilSolution pencil_solve(const linalg::QMatrix& a, const linalg::QMatrix& b);

/// Finite generalized eigenvalues by the QZ algorithm; |β| ≤ tol·max|α, β| counts as infinite.
std::vector<std::complex<double>> qz_finite_eigenvalues(const Matrix6d& a, const Matrix6d& b, double tol = 1e-10);

/// 5u2u3v1v3 / (u3v1v3u2' + u3'u2v1v3 − v1'u2u3v3 − v3'u2u3v1), the printed pencil eigenvalue.
double lambda_formula(const PointState<double>& p);

/// The (H², H') pencil at a jet with u' = u, v' = −v, compared with the printed formula.
struct PencilSignReport {
  double formula = 0;
  /// Eigenvalue whose eigenvector is parallel to (u, −v); NaN if none is.
  double lambda_omega1 = 0;
  /// Eigenvalue whose eigenvector is parallel to (u, v), if any.
  std::optional<double> lambda_omega2;
  bool magnitude_matches = false;
  bool sign_matches = false;
  std::string note;
};

/// Fills the first derivatives of p with u' = u, v' = −v and solves the pencil there.
PencilSignReport pencil_sign_report(const PointState<mpq_class>& p);

/// ((H²)' H^p, H'' H^p) for p = 0..max_p at each point. p = 0 is the reduced pencil.
struct HigherPencilEntry {
  std::size_t point = 0;
  int power = 0;
  std::size_t normal_rank = 0;
  bool singular = false;
  linalg::QPoly spectral_polynomial;
  std::vector<std::complex<double>> eigenvalues;
  double max_residual = 0;
  /// Same normal rank and spectral polynomial as the p = 0 pencil at this point.
  bool matches_reduced = false;
};

struct HigherPencilReport {
  std::vector<HigherPencilEntry> entries;
  /// Every p agrees with p = 0 at every point.
  bool reduction_holds = false;
  /// Some pencil had a finite eigenpair with Bz ≠ 0.
  bool eigenpair_found = false;
};

/// Points need jets of order 2.
HigherPencilReport higher_pencil_scan(const std::vector<PointState<mpq_class>>& points, int max_p);

}  // namespace epme::operator_h
