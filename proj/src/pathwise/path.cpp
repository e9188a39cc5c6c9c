#include "epme/pathwise/path.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "epme/operator_h/operators.hpp"

namespace epme::pathwise {

namespace {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using V6 = Eigen::Matrix<double, 6, 1>;

V6 to_v(const Vec6& a) { return Eigen::Map<const V6>(a.data()); }
Vec6 to_a(const V6& v) {
  Vec6 a;
  Eigen::Map<V6>(a.data()) = v;
  return a;
}

Mat6 to_mat(const linalg::DenseMatrix<double>& m) {
  Mat6 out;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) out(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return out;
}

const char* kNames[6] = {"u1", "u2", "u3", "v1", "v2", "v3"};

// H along the trajectory, refusing to step across a zero of any coordinate.
class OperatorAlongPath {
 public:
  explicit OperatorAlongPath(const Trajectory& traj) : traj_(traj) {
    const Vec6 x = traj.at(traj.t0()).x;
    for (std::size_t i = 0; i < 6; ++i) sign_[i] = std::signbit(x[i]);
  }

  Mat6 operator()(double t) const {
    const Jet j = traj_.at(t);
    for (std::size_t i = 0; i < 6; ++i)
      if (j.x[i] == 0 || std::signbit(j.x[i]) != sign_[i])
        throw PathError(std::string("coordinate ") + kNames[i] + " crosses zero near t = " + std::to_string(t));
    symbolic::PointState<double> p(0);
    for (int b = 0; b < 6; ++b) p.set({static_cast<symbolic::Base>(b), 0}, j.x[static_cast<std::size_t>(b)]);
    return to_mat(operator_h::evaluate_operators(p).H);
  }

 private:
  const Trajectory& traj_;
  std::array<bool, 6> sign_{};
};

PathSolution run(const Trajectory& traj, const Vec6& w0, std::size_t steps) {
  const OperatorAlongPath H(traj);
  const double h = (traj.t1() - traj.t0()) / static_cast<double>(steps);
  PathSolution sol;
  sol.steps = steps;
  sol.samples.resize(steps + 1);
  V6 w = to_v(w0);
  Mat6 hn = H(traj.t0());
  for (std::size_t k = 0;; ++k) {
    const double t = k == steps ? traj.t1() : traj.t0() + h * static_cast<double>(k);
    PathSample& s = sol.samples[k];
    s.t = t;
    s.w = to_a(w);
    s.dw = to_a(hn * w);
    if (k == steps) break;
    const Mat6 hm = H(t + h / 2), he = H(t + h);
    const V6 k1 = hn * w;
    const V6 k2 = hm * (w + h / 2 * k1);
    const V6 k3 = hm * (w + h / 2 * k2);
    const V6 k4 = he * (w + h * k3);
    w += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    hn = he;
  }
  return sol;
}

double area_rate(const Vec6& w, const Vec6& dw) {
  const V6 a = to_v(w), b = to_v(dw);
  return 0.5 * std::sqrt(std::max(0.0, a.squaredNorm() * b.squaredNorm() - a.dot(b) * a.dot(b)));
}

// Derivative of y with respect to x at every node: three-point, one-sided at the ends.
std::vector<double> derivative(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0);
  if (n < 3) {
    if (n == 2) d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = k == 0 ? 0 : (k == n - 1 ? n - 3 : k - 1);
    const std::size_t b = a + 1, c = a + 2;
    const double xa = x[a], xb = x[b], xc = x[c], xk = x[k];
    d[k] = y[a] * ((xk - xb) + (xk - xc)) / ((xa - xb) * (xa - xc)) +
           y[b] * ((xk - xa) + (xk - xc)) / ((xb - xa) * (xb - xc)) +
           y[c] * ((xk - xa) + (xk - xb)) / ((xc - xa) * (xc - xb));
  }
  return d;
}

double orthogonal_norm(const V6& v, const V6& unit) { return (v - v.dot(unit) * unit).norm(); }

}  // namespace

PathSolution integrate(const Trajectory& traj, const Vec6& w0, const IntegrateOptions& opt) {
  if (opt.steps == 0) throw std::invalid_argument("steps must be positive");
  if (to_v(w0).norm() == 0) throw std::invalid_argument("w0 must be nonzero");
  PathSolution coarse = run(traj, w0, opt.steps);
  coarse.t_ref = std::clamp(0.0, traj.t0(), traj.t1());
  if (opt.tolerance <= 0) return coarse;

  for (std::size_t steps = opt.steps * 2;; steps *= 2) {
    if (steps > opt.max_steps) throw PathError("step underflow: refinement did not reach the tolerance");
    PathSolution fine = run(traj, w0, steps);
    double err = 0;
    for (std::size_t k = 0; k < coarse.samples.size(); ++k) {
      const V6 a = to_v(coarse.samples[k].w), b = to_v(fine.samples[2 * k].w);
      err = std::max(err, (a - b).norm() / std::max(1.0, b.norm()));
    }
    fine.t_ref = coarse.t_ref;
    fine.tolerance = opt.tolerance;
    fine.error_estimate = err;
    if (err < opt.tolerance) return fine;
    coarse = std::move(fine);
  }
}

void sweep_area(PathSolution& sol, double area_offset) {
  auto& s = sol.samples;
  std::vector<double> cumulative(s.size(), 0);
  for (std::size_t k = 1; k < s.size(); ++k)
    cumulative[k] = cumulative[k - 1] + 0.5 * (s[k].t - s[k - 1].t) * (area_rate(s[k - 1].w, s[k - 1].dw) + area_rate(s[k].w, s[k].dw));
  // Cumulative area at t_ref, linear between the bracketing nodes.
  std::size_t k = 0;
  while (k + 1 < s.size() && s[k + 1].t <= sol.t_ref) ++k;
  double at_ref = cumulative[k];
  if (k + 1 < s.size() && s[k].t < sol.t_ref)
    at_ref += (cumulative[k + 1] - cumulative[k]) * (sol.t_ref - s[k].t) / (s[k + 1].t - s[k].t);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i].A = cumulative[i] - at_ref + area_offset;
    s[i].u = 2 * s[i].A;
  }
}

Vec6 closed_form(const Trajectory& traj, double t) {
  switch (traj.kind()) {
    case TrajectoryKind::ExponentialOmega1: return omega1_at(traj.at(t));
    case TrajectoryKind::ExponentialOmega2: return omega2_at(traj.at(t));
    default: throw std::invalid_argument("no closed form for a " + to_string(traj.kind()) + " trajectory");
  }
}

CatenaryFit catenary_check(const PathSolution& sol, const Trajectory& traj) {
  CatenaryFit fit;
  const auto& s = sol.samples;
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.A < b.A; });
  if (hi->A - lo->A <= 1e-12) return fit;
  fit.defined = true;

  std::vector<double> us, ss;
  for (const auto& p : s) {
    us.push_back(p.u);
    ss.push_back(0.5 * to_v(p.w).squaredNorm());
  }
  auto residual = [&](double csq, double a) {
    double m = 0;
    for (std::size_t k = 0; k < us.size(); ++k) m = std::max(m, std::abs(ss[k] - csq * std::cosh(us[k] / csq + a)));
    return m;
  };

  if (traj.kind() == TrajectoryKind::ExponentialOmega1 || traj.kind() == TrajectoryKind::ExponentialOmega2) {
    fit.c_norm = Eigen::Map<const Eigen::Vector3d>(traj.first().data()).norm();
    fit.l_norm = Eigen::Map<const Eigen::Vector3d>(traj.second().data()).norm();
    fit.csq = fit.c_norm * fit.l_norm;
    fit.a = std::log(fit.c_norm / fit.l_norm);
    fit.max_residual = residual(fit.csq, fit.a);
    return fit;
  }

  // Gauss-Newton on r_k = csq cosh(u_k / csq + a) − s_k from the vertex of the samples.
  const std::size_t vertex = static_cast<std::size_t>(std::min_element(ss.begin(), ss.end()) - ss.begin());
  double csq = ss[vertex], a = -us[vertex] / csq;
  auto sumsq = [&](double c, double b) {
    double acc = 0;
    for (std::size_t k = 0; k < us.size(); ++k) {
      const double r = c * std::cosh(us[k] / c + b) - ss[k];
      acc += r * r;
    }
    return acc;
  };
  double cost = sumsq(csq, a);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    for (std::size_t k = 0; k < us.size(); ++k) {
      const double z = us[k] / csq + a;
      const Eigen::Vector2d g(std::cosh(z) - us[k] / csq * std::sinh(z), csq * std::sinh(z));
      jtj += g * g.transpose();
      jtr += g * (csq * std::cosh(z) - ss[k]);
    }
    const Eigen::Vector2d step = jtj.ldlt().solve(-jtr);
    double scale = 1;
    while (scale > 1e-10) {
      const double c2 = csq + scale * step(0), a2 = a + scale * step(1);
      if (c2 > 0) {
        const double cost2 = sumsq(c2, a2);
        if (cost2 < cost) {
          csq = c2, a = a2, cost = cost2;
          break;
        }
      }
      scale /= 2;
    }
    if (scale <= 1e-10 || step.norm() < 1e-14 * (1 + std::abs(csq) + std::abs(a))) break;
  }
  fit.fitted = true;
  fit.csq = csq;
  fit.a = a;
  fit.c_norm = std::sqrt(csq) * std::exp(a / 2);
  fit.l_norm = std::sqrt(csq) * std::exp(-a / 2);
  fit.max_residual = residual(csq, a);
  return fit;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::NonDissipativeCatenary: return "NonDissipativeCatenary";
    case Classification::NonDissipativeLine: return "NonDissipativeLine";
    case Classification::Dissipative: return "Dissipative";
  }
  return "?";
}

DissipationReport dissipation(PathSolution& sol, const Trajectory& traj, const DissipationOptions& opt) {
  auto& s = sol.samples;
  DissipationReport rep;
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.A < b.A; });
  rep.sweep_range = hi->A - lo->A;
  if (rep.sweep_range <= opt.area_tolerance) {
    rep.classification = Classification::NonDissipativeLine;
    for (auto& p : s) p.T0 = p.T1 = p.T2 = Vec6{}, p.delta = 0;
    return rep;
  }

  std::vector<double> us, tp;
  for (const auto& p : s) {
    const double rate = area_rate(p.w, p.dw);
    if (!(rate > 0)) throw PathError("sweep area is not strictly increasing at t = " + std::to_string(p.t));
    us.push_back(p.u);
    tp.push_back(1 / (2 * rate));
  }
  const std::vector<double> tpp = derivative(us, tp);

  for (std::size_t k = 0; k < s.size(); ++k) {
    PathSample& p = s[k];
    const auto ops = operator_h::evaluate_operators(traj.at(p.t).point());
    const V6 w = to_v(p.w), unit = w.normalized();
    const V6 t0 = tpp[k] * to_v(p.dw);
    const V6 t1 = tp[k] * tp[k] * (to_mat(ops.H_prime) * w);
    const V6 t2 = tp[k] * tp[k] * (to_mat(ops.H_squared) * w);
    p.T0 = to_a(t0), p.T1 = to_a(t1), p.T2 = to_a(t2);
    p.delta = (orthogonal_norm(t0, unit) + orthogonal_norm(t1, unit) + orthogonal_norm(t2, unit)) / w.norm();
    rep.max_delta = std::max(rep.max_delta, p.delta);
    const V6 sum = t0 + t1 + t2;
    if (sum.norm() > 0) rep.max_collinearity_angle = std::max(rep.max_collinearity_angle, std::atan2(orthogonal_norm(sum, unit), std::abs(sum.dot(unit))));
    if (k > 0) rep.D += 0.5 * (p.t - s[k - 1].t) * (p.delta + s[k - 1].delta);
  }
  rep.classification = rep.max_delta < opt.tolerance ? Classification::NonDissipativeCatenary : Classification::Dissipative;
  return rep;
}

double uniqueness_residual(const Trajectory& traj, const std::function<double(double)>& scale, std::size_t probes) {
  const OperatorAlongPath H(traj);
  auto w = [&](double t) { return (scale(t) * to_v(closed_form(traj, t))).eval(); };
  const double span = traj.t1() - traj.t0(), h = 1e-5 * std::max(1.0, span);
  double worst = 0;
  for (std::size_t k = 0; k < probes; ++k) {
    const double t = traj.t0() + h + (span - 2 * h) * static_cast<double>(k) / static_cast<double>(probes - 1);
    const V6 dw = (w(t + h) - w(t - h)) / (2 * h);
    const V6 wt = w(t);
    worst = std::max(worst, (dw - H(t) * wt).norm() / wt.norm());
  }
  return worst;
}

ArclengthReport arclength_relation(const PathSolution& sol) {
  const auto& s = sol.samples;
  ArclengthReport rep;
  std::vector<double> l(s.size(), 0), L(s.size(), 0), r(s.size()), sv(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    r[k] = to_v(s[k].w).norm();
    sv[k] = 0.5 * r[k] * r[k];
    if (k == 0) continue;
    const double dt = s[k].t - s[k - 1].t;
    const double v0 = to_v(s[k - 1].dw).norm(), v1 = to_v(s[k].dw).norm();
    l[k] = l[k - 1] + 0.5 * dt * (v0 + v1);
    L[k] = L[k - 1] + 0.5 * dt * (r[k - 1] * v0 + r[k] * v1);
    rep.volume += 0.5 * dt * M_PI * (r[k - 1] * r[k - 1] * v0 + r[k] * r[k] * v1);
    rep.surface += 0.5 * dt * 2 * M_PI * (sv[k - 1] * r[k - 1] * v0 + sv[k] * r[k] * v1);
  }
  const auto ds_dL = derivative(L, sv), dw_dl = derivative(l, r);
  for (std::size_t k = 1; k + 1 < s.size(); ++k) rep.max_gap = std::max(rep.max_gap, std::abs(ds_dL[k] - dw_dl[k]));
  for (std::size_t k = 0; k < s.size(); ++k) {
    rep.l_w.emplace_back(l[k], r[k]);
    rep.L_s.emplace_back(L[k], sv[k]);
  }
  return rep;
}

int term_rank(const Trajectory& traj, double t, const Vec6& w) {
  const auto ops = operator_h::evaluate_operators(traj.at(t).point());
  const V6 v = to_v(w);
  Eigen::Matrix<double, 3, 6> m;
  m.row(0) = (to_mat(ops.H) * v).transpose();
  m.row(1) = (to_mat(ops.H_prime) * v).transpose();
  m.row(2) = (to_mat(ops.H_squared) * v).transpose();
  const auto sv = Eigen::JacobiSVD<Eigen::Matrix<double, 3, 6>>(m).singularValues();
  int rank = 0;
  for (int i = 0; i < 3; ++i) rank += sv(i) > 1e-9 * sv(0);
  return rank;
}

}  // namespace epme::pathwise
