#pragma once

#include <string>
#include <vector>

#include "epme/operator_h/displays.hpp"
#include "epme/operator_h/operators.hpp"

namespace epme::operator_h {

struct IdentityCheck {
  std::string id;
  std::string statement;
  bool passed = false;
  /// First offending entry on failure; a short note otherwise.
  std::string detail;
  /// Numeric checks: largest deviation seen over all points.
  double worst = 0;
};

/// Exact, entrywise by cross-multiplication:
///   H_omega1      H(u,-v) = (u,v)
///   H2_omega1     H²(u,-v) = 5(u,-v)
///   H_omega2      H(u,v) = (5u,-5v)
///   H2_omega2     H²(u,v) = 5(u,v)
///   H_times_H     H·H = printed H²
///   dH_dt         d/dt H = printed H' with errata applied
///   external_det  Jacobian of the external-product determinant = u2u3v1v3·H, and H = printed H
std::vector<IdentityCheck> verify_identity_suite(const OperatorBundle& b = symbolic_bundle());

/// On u' = u, v' = -v: H'(u,-v) = -4(u,-v) and (H' + H²)(u,-v) = (u,-v).
/// On u' = 5u, v' = -5v: H'(u,v) = 20(u,v) and (H' + H²)(u,v) = 25(u,v).
std::vector<IdentityCheck> verify_jet_identities(const OperatorBundle& b = symbolic_bundle());

struct ErratumCheck {
  Erratum erratum;
  bool printed_matches = false;
  bool corrected_matches = false;
};

std::vector<ErratumCheck> check_errata(const OperatorBundle& b = symbolic_bundle());

struct Tolerances {
  double eigenvalue = 1e-9;
  double determinant = 1e-9;
  double spectral = 1e-8;
  double residual = 1e-8;
};

/// Nine checks, each over every point (points need first-order jets):
///   H_eigenvalues, H2_eigenvalues, H2_eigenspaces, det_H, traces, singular_values,
///   frobenius, svd_closed_form, pencil_H2_Hprime.
std::vector<IdentityCheck> verify_numeric_suite(const std::vector<PointState<mpq_class>>& points,
                                                const Tolerances& tol = {});

}  // namespace epme::operator_h
