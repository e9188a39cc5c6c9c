#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "epme/pathwise/trajectory.hpp"

namespace epme::pathwise {

struct IntegrateOptions {
  std::size_t steps = 2000;
  /// 0 runs exactly `steps` steps. Otherwise the step count doubles until two successive
  /// runs agree to this relative tolerance at every shared node.
  double tolerance = 0;
  std::size_t max_steps = std::size_t{1} << 22;
};

struct PathSample {
  double t = 0;
  Vec6 w{};
  /// H w, the t-derivative of w.
  Vec6 dw{};
  /// Swept area, anchored at t_ref.
  double A = 0;
  /// Double sweep area 2A.
  double u = 0;
  /// t''_u w'_t, t'_u^2 H'_t w, t'_u^2 H^2 w.
  Vec6 T0{}, T1{}, T2{};
  double delta = 0;
};

struct PathSolution {
  std::vector<PathSample> samples;
  std::size_t steps = 0;
  double tolerance = 0;
  /// Largest relative change at the last refinement, 0 for a fixed-step run.
  double error_estimate = 0;
  /// The parameter where A = 0 (t = 0 clamped into the domain).
  double t_ref = 0;
};

/// Classical RK4 for w' = H(t) w from w(t0) = w0, H from the trajectory at every stage.
/// Throws PathError when a coordinate reaches zero or the step budget is exhausted.
PathSolution integrate(const Trajectory& traj, const Vec6& w0, const IntegrateOptions& opt = {});

/// dA = ½ sqrt(|w|²|w'|² − (w·w')²) dt by the trapezoid rule, A(t_ref) = area_offset.
void sweep_area(PathSolution& sol, double area_offset = 0);

/// The closed-form solution through w(t0) = (u,-v) or (u,v) on the exponential kinds.
Vec6 closed_form(const Trajectory& traj, double t);

struct CatenaryFit {
  bool defined = false;
  double c_norm = 0;
  double l_norm = 0;
  double csq = 0;
  double a = 0;
  double max_residual = 0;
  /// True when (csq, a) came from a least-squares fit rather than |c|, |l|.
  bool fitted = false;
};

/// s(u) = |w|²/2 against csq·cosh(u/csq + a). Exponential kinds use csq = |c||l| and
/// a = ln(|c|/|l|); other kinds fit (csq, a) by Gauss-Newton. Undefined when the sweep
/// area is empty.
CatenaryFit catenary_check(const PathSolution& sol, const Trajectory& traj);

enum class Classification { NonDissipativeCatenary, NonDissipativeLine, Dissipative };
std::string to_string(Classification c);

struct DissipationOptions {
  /// δ below this everywhere counts as non-dissipative.
  double tolerance = 1e-6;
  /// Sweep range below this counts as no sweep at all.
  double area_tolerance = 1e-12;
};

struct DissipationReport {
  Classification classification = Classification::Dissipative;
  /// ∫ δ dt.
  double D = 0;
  double max_delta = 0;
  /// max A − min A.
  double sweep_range = 0;
  /// Largest angle between T0 + T1 + T2 (that is, w''_u) and w.
  double max_collinearity_angle = 0;
};

/// Fills T0, T1, T2 and δ = (|P T0| + |P T1| + |P T2|) / |w|, P the projector orthogonal
/// to w, with t'_u = 1 / (2 dA/dt) and t''_u by differencing t'_u on the u grid.
/// Needs sweep_area first. Throws PathError when the sweep area is not strictly increasing.
DissipationReport dissipation(PathSolution& sol, const Trajectory& traj, const DissipationOptions& opt = {});

/// Largest relative residual |w' − H w| / |w| of w = scale(t) · ω(t) over `probes` points,
/// ω the closed-form family of the trajectory, w' by central differences.
double uniqueness_residual(const Trajectory& traj, const std::function<double(double)>& scale, std::size_t probes = 201);

struct ArclengthReport {
  /// max |ds/dL − d|w|/dl| over interior samples, L the weighted arc length ∫|w| dl.
  double max_gap = 0;
  /// ∫ π |w|² dl and ∫ 2π s dL.
  double volume = 0;
  double surface = 0;
  std::vector<std::pair<double, double>> l_w;
  std::vector<std::pair<double, double>> L_s;
};

ArclengthReport arclength_relation(const PathSolution& sol);

/// Rank of {w'_t, H'_t w, H² w} at one point, singular values above 1e-9 · σ_max.
int term_rank(const Trajectory& traj, double t, const Vec6& w);

}  // namespace epme::pathwise
