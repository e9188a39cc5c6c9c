#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "epme/pathwise/path.hpp"
#include "epme/pathwise/section.hpp"
#include "epme/symbolic/sampling.hpp"

using namespace epme;
using namespace epme::pathwise;
using symbolic::PointState;

namespace {

const std::string kData = EPME_TEST_DATA_DIR;

double rel_gap(const Vec6& a, const Vec6& b) {
  double d = 0, n = 0;
  for (std::size_t i = 0; i < 6; ++i) d += (a[i] - b[i]) * (a[i] - b[i]), n += b[i] * b[i];
  return std::sqrt(d / n);
}

double norm(const Vec6& a) {
  double n = 0;
  for (double x : a) n += x * x;
  return std::sqrt(n);
}

// (c e^t, -l e^-t), written out independently of the library.
Vec6 omega1_exact(const Vec3& c, const Vec3& l, double t) {
  return {c[0] * std::exp(t), c[1] * std::exp(t), c[2] * std::exp(t),
          -l[0] * std::exp(-t), -l[1] * std::exp(-t), -l[2] * std::exp(-t)};
}

Vec6 omega2_exact(const Vec3& c, const Vec3& k, double t) {
  return {c[0] * std::exp(5 * t), c[1] * std::exp(5 * t), c[2] * std::exp(5 * t),
          k[0] * std::exp(-5 * t), k[1] * std::exp(-5 * t), k[2] * std::exp(-5 * t)};
}

double max_error_exp1(std::size_t steps) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, -1, 1);
  const auto sol = integrate(tr, omega1_exact({1, 1, 1}, {1, 1, 1}, -1), {steps});
  double worst = 0;
  for (const auto& s : sol.samples) worst = std::max(worst, rel_gap(s.w, omega1_exact({1, 1, 1}, {1, 1, 1}, s.t)));
  return worst;
}

// The exponential path as an opaque closure, so the catenary fit has to find (csq, a) itself.
Trajectory exp1_closure(const Vec3& c, const Vec3& l, double t0, double t1) {
  return Trajectory::closure(
      [c, l](double t) {
        Jet j;
        for (std::size_t i = 0; i < 3; ++i) {
          j.x[i] = j.dx[i] = j.ddx[i] = c[i] * std::exp(t);
          j.x[i + 3] = j.ddx[i + 3] = l[i] * std::exp(-t);
          j.dx[i + 3] = -l[i] * std::exp(-t);
        }
        return j;
      },
      t0, t1);
}

// Cofactor expansion along the first column, independent of the LU used by the library.
double laplace_det(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  double det = 0;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::vector<double>> minor;
    for (std::size_t i = 0; i < n; ++i)
      if (i != r) minor.emplace_back(m[i].begin() + 1, m[i].end());
    det += (r % 2 ? -1 : 1) * m[r][0] * laplace_det(minor);
  }
  return det;
}

double laplace_det(const Matrix66& e) {
  std::vector<std::vector<double>> m(6, std::vector<double>(6));
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = e(r, c);
  return laplace_det(m);
}

// H from the entry rule s_i (δ_ij + m_j x_i / x_j).
Matrix66 h_at(const PointState<double>& p) {
  const auto x = p.coordinates();
  const double s[6] = {1, 1, 1, -1, -1, -1}, m[6] = {0, 1, 1, 1, 0, 1};
  Matrix66 h;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      h(static_cast<int>(i), static_cast<int>(j)) = s[i] * ((i == j) + m[j] * x[i] / x[j]);
  return h;
}

}  // namespace

TEST(Integrate, Omega1UnitCoefficientsReachClosedForm) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, 0, 1);
  const auto sol = integrate(tr, {1, 1, 1, -1, -1, -1});
  const double e = std::exp(1.0);
  EXPECT_LT(rel_gap(sol.samples.back().w, {e, e, e, -1 / e, -1 / e, -1 / e}), 1e-10);
}

TEST(Integrate, Omega2UnitCoefficientsReachClosedForm) {
  const auto tr = Trajectory::exponential_omega2({1, 1, 1}, {1, 1, 1}, 0, 0.2);
  const auto sol = integrate(tr, {1, 1, 1, 1, 1, 1});
  const double e = std::exp(1.0);
  EXPECT_LT(rel_gap(sol.samples.back().w, {e, e, e, 1 / e, 1 / e, 1 / e}), 1e-10);
}

TEST(Integrate, MatchesClosedFormOverSymmetricDomain) { EXPECT_LT(max_error_exp1(2000), 1e-7); }

TEST(Integrate, GenericCoefficientsMatchClosedForm) {
  const Vec3 c{0.4, 2.5, -1.2}, l{3.1, -0.6, 0.9};
  const auto tr = Trajectory::exponential_omega1(c, l, -1, 1);
  const auto sol = integrate(tr, omega1_exact(c, l, -1));
  for (const auto& s : sol.samples) ASSERT_LT(rel_gap(s.w, omega1_exact(c, l, s.t)), 1e-7) << s.t;
  EXPECT_LT(rel_gap(closed_form(tr, 0.3), omega1_exact(c, l, 0.3)), 1e-15);
}

TEST(Integrate, FourthOrderConvergence) {
  const double ratio = max_error_exp1(80) / max_error_exp1(160);
  EXPECT_GE(ratio, 12);
  EXPECT_LE(ratio, 20);
}

TEST(Integrate, Linearity) {
  const auto tr = perturbed_omega1(0.1, 0, 1);
  const Vec6 a{1, 0.5, -0.3, 0.2, 1.1, -0.7}, b{-0.4, 0.9, 1.3, -1.2, 0.1, 0.6};
  Vec6 mix;
  for (std::size_t i = 0; i < 6; ++i) mix[i] = 2 * a[i] - 3 * b[i];
  const auto sa = integrate(tr, a), sb = integrate(tr, b), sm = integrate(tr, mix);
  for (std::size_t k = 0; k < sm.samples.size(); k += 100) {
    Vec6 want;
    for (std::size_t i = 0; i < 6; ++i) want[i] = 2 * sa.samples[k].w[i] - 3 * sb.samples[k].w[i];
    EXPECT_LT(rel_gap(sm.samples[k].w, want), 1e-12);
  }
}

TEST(Integrate, ScaledInitialVectorScalesSolution) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, 0, 1);
  const auto sol = integrate(tr, {2, 2, 2, -2, -2, -2});
  Vec6 want = omega1_exact({1, 1, 1}, {1, 1, 1}, 1);
  for (double& x : want) x *= 2;
  EXPECT_LT(rel_gap(sol.samples.back().w, want), 1e-10);
}

TEST(Integrate, RefinementMeetsTolerance) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, 0, 1);
  const auto sol = integrate(tr, {1, 1, 1, -1, -1, -1}, {.steps = 4, .tolerance = 1e-10});
  EXPECT_GT(sol.steps, 4u);
  EXPECT_LT(sol.error_estimate, 1e-10);
  EXPECT_LT(rel_gap(sol.samples.back().w, omega1_exact({1, 1, 1}, {1, 1, 1}, 1)), 1e-9);
}

TEST(Integrate, StepBudgetExhaustedThrows) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, 0, 1);
  EXPECT_THROW(integrate(tr, {1, 1, 1, -1, -1, -1}, {.steps = 4, .tolerance = 1e-30, .max_steps = 64}), PathError);
}

TEST(Integrate, RejectsZeroInitialVector) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, 0, 1);
  EXPECT_THROW(integrate(tr, Vec6{}), std::invalid_argument);
}

TEST(Integrate, CoordinateZeroCrossingThrows) {
  const auto tr = load_trajectory_csv_file(kData + "/fixtures/zero_crossing.csv");
  try {
    integrate(tr, {1, 1, 1, 1, 1, 1});
    FAIL() << "expected PathError";
  } catch (const PathError& e) {
    EXPECT_NE(std::string(e.what()).find("v3"), std::string::npos) << e.what();
  }
}

TEST(SweepArea, Omega1UnitCoefficientsGiveThreeT) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, -1, 1);
  auto sol = integrate(tr, omega1_exact({1, 1, 1}, {1, 1, 1}, -1));
  sweep_area(sol);
  for (const auto& s : sol.samples) {
    ASSERT_NEAR(s.A, 3 * s.t, 1e-7);
    ASSERT_EQ(s.u, 2 * s.A);
  }
}

TEST(SweepArea, Omega1GenericRateIsCL) {
  const Vec3 c{0.4, 2.5, -1.2}, l{3.1, -0.6, 0.9};
  const double cl = std::sqrt(0.16 + 6.25 + 1.44) * std::sqrt(9.61 + 0.36 + 0.81);
  const auto tr = Trajectory::exponential_omega1(c, l, 0.5, 1.5);
  auto sol = integrate(tr, omega1_exact(c, l, 0.5));
  sweep_area(sol);
  // t = 0 lies outside the domain, so the anchor moves to t0.
  EXPECT_EQ(sol.t_ref, 0.5);
  for (const auto& s : sol.samples) ASSERT_NEAR(s.A, cl * (s.t - 0.5), 1e-7);
}

TEST(SweepArea, Omega2UnitCoefficientsGiveFifteenT) {
  const auto tr = Trajectory::exponential_omega2({1, 1, 1}, {1, 1, 1}, -0.2, 0.2);
  auto sol = integrate(tr, omega2_exact({1, 1, 1}, {1, 1, 1}, -0.2));
  sweep_area(sol);
  for (const auto& s : sol.samples) ASSERT_NEAR(s.A, 15 * s.t, 1e-7);
}

TEST(SweepArea, OffsetShiftsAnchor) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, -1, 1);
  auto sol = integrate(tr, omega1_exact({1, 1, 1}, {1, 1, 1}, -1));
  sweep_area(sol, 2.5);
  EXPECT_NEAR(sol.samples[1000].A, 2.5, 1e-12);
}

TEST(SweepArea, RadialPathHasNoArea) {
  const auto tr = load_trajectory_csv_file(kData + "/fixtures/radial.csv");
  ASSERT_TRUE(tr.initial_vector.has_value());
  auto sol = integrate(tr, *tr.initial_vector);
  sweep_area(sol);
  for (const auto& s : sol.samples) ASSERT_EQ(s.A, 0);
  EXPECT_FALSE(catenary_check(sol, tr).defined);
}

TEST(Catenary, UnitCoefficients) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, -1, 1);
  auto sol = integrate(tr, omega1_exact({1, 1, 1}, {1, 1, 1}, -1));
  sweep_area(sol);
  const auto fit = catenary_check(sol, tr);
  ASSERT_TRUE(fit.defined);
  EXPECT_FALSE(fit.fitted);
  EXPECT_NEAR(fit.csq, 3, 1e-15);
  EXPECT_EQ(fit.a, 0);
  EXPECT_LT(fit.max_residual, 1e-8);
  // Independent evaluation over u ∈ [-6, 6].
  for (const auto& s : sol.samples) ASSERT_NEAR(0.5 * norm(s.w) * norm(s.w), 3 * std::cosh(s.u / 3), 1e-8);
}

TEST(Catenary, RecoversLogRatio) {
  const double a = 0.7;
  const Vec3 c{std::exp(a / 2) * 0.6, std::exp(a / 2) * -0.8, std::exp(a / 2) * 0.5};
  const Vec3 l{std::exp(-a / 2) * 0.6, std::exp(-a / 2) * -0.8, std::exp(-a / 2) * 0.5};
  const auto tr = Trajectory::exponential_omega1(c, l, -1, 1);
  auto sol = integrate(tr, omega1_exact(c, l, -1));
  sweep_area(sol);
  const auto fit = catenary_check(sol, tr);
  EXPECT_NEAR(fit.a, a, 1e-8);
  EXPECT_LT(fit.max_residual, 1e-8);
}

TEST(Catenary, FitOnOpaquePathFindsScaleAndShift) {
  const Vec3 c{2, 2, 2}, l{1, 1, 1};
  const auto tr = exp1_closure(c, l, -1, 1);
  auto sol = integrate(tr, omega1_exact(c, l, -1));
  sweep_area(sol);
  const auto fit = catenary_check(sol, tr);
  EXPECT_TRUE(fit.fitted);
  EXPECT_NEAR(fit.csq, 6, 1e-6);
  EXPECT_NEAR(fit.a, std::log(2.0), 1e-6);
  EXPECT_LT(fit.max_residual, 1e-6);
}

TEST(Catenary, PerturbedPathLeavesResidual) {
  const auto tr = perturbed_omega1(0.1, 0, 1);
  auto sol = integrate(tr, omega1_at(tr.at(0)));
  sweep_area(sol);
  EXPECT_GT(catenary_check(sol, tr).max_residual, 1e-4);
}

TEST(Dissipation, Omega1IsNonDissipative) {
  const Vec3 c{0.4, 2.5, -1.2}, l{3.1, -0.6, 0.9};
  for (const auto& [cc, ll] : {std::pair{Vec3{1, 1, 1}, Vec3{1, 1, 1}}, std::pair{c, l}}) {
    const auto tr = Trajectory::exponential_omega1(cc, ll, -1, 1);
    auto sol = integrate(tr, omega1_exact(cc, ll, -1));
    sweep_area(sol);
    const auto rep = dissipation(sol, tr);
    EXPECT_EQ(rep.classification, Classification::NonDissipativeCatenary);
    EXPECT_LT(rep.max_delta, 1e-6);
    EXPECT_LT(rep.max_collinearity_angle, 1e-6);
    // t(u) is linear, so t''_u vanishes up to differencing noise.
    for (const auto& s : sol.samples) ASSERT_LT(norm(s.T0), 1e-8);
  }
}

TEST(Dissipation, Omega2IsNonDissipative) {
  const auto tr = Trajectory::exponential_omega2({1, 1, 1}, {1, 1, 1}, -0.2, 0.2);
  auto sol = integrate(tr, omega2_exact({1, 1, 1}, {1, 1, 1}, -0.2));
  sweep_area(sol);
  const auto rep = dissipation(sol, tr);
  EXPECT_EQ(rep.classification, Classification::NonDissipativeCatenary);
  EXPECT_LT(rep.max_delta, 1e-6);
}

TEST(Dissipation, PerturbedFixtureMatchesGolden) {
  const auto tr = load_trajectory_csv_file(kData + "/fixtures/perturbed.csv");
  auto sol = integrate(tr, omega1_at(tr.at(0)));
  sweep_area(sol);
  const auto rep = dissipation(sol, tr);
  double golden = 0;
  std::ifstream(kData + "/golden/perturbed_D.txt") >> golden;
  ASSERT_GT(golden, 0);
  EXPECT_EQ(rep.classification, Classification::Dissipative);
  EXPECT_GT(rep.D, 1e-3);
  EXPECT_NEAR(rep.D, golden, 1e-9 * golden);
}

TEST(Dissipation, SampledFixtureAgreesWithAnalyticPath) {
  const auto sampled = load_trajectory_csv_file(kData + "/fixtures/perturbed.csv");
  const auto analytic = perturbed_omega1(0.1, 0, 1);
  auto a = integrate(sampled, omega1_at(sampled.at(0)));
  auto b = integrate(analytic, omega1_at(analytic.at(0)));
  sweep_area(a);
  sweep_area(b);
  EXPECT_NEAR(dissipation(a, sampled).D, dissipation(b, analytic).D, 1e-8);
}

TEST(Dissipation, RadialFixtureIsGoldschmidt) {
  const auto tr = load_trajectory_csv_file(kData + "/fixtures/radial.csv");
  auto sol = integrate(tr, *tr.initial_vector);
  sweep_area(sol);
  const auto rep = dissipation(sol, tr);
  EXPECT_EQ(rep.classification, Classification::NonDissipativeLine);
  EXPECT_EQ(to_string(rep.classification), "NonDissipativeLine");
  EXPECT_EQ(rep.D, 0);
}

TEST(Dissipation, StalledSweepThrows) {
  // Radial for the first half, then transverse: dA/dt vanishes on a subinterval with a
  // nonzero total range.
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, 0, 1);
  auto sol = integrate(tr, {1, 1, 1, -1, -1, -1});
  sweep_area(sol);
  sol.samples[10].dw = sol.samples[10].w;
  EXPECT_THROW(dissipation(sol, tr), PathError);
}

TEST(Uniqueness, OnlyConstantScalingSurvives) {
  const auto tr = Trajectory::exponential_omega1({1, 2, 3}, {0.5, 1, 1.5}, 0, 1);
  EXPECT_LT(uniqueness_residual(tr, [](double) { return 3.0; }), 1e-8);
  EXPECT_GT(uniqueness_residual(tr, [](double t) { return 1 + t; }), 1e-3);
  EXPECT_GT(uniqueness_residual(tr, [](double t) { return std::exp(t); }), 1e-3);
  const auto tr5 = Trajectory::exponential_omega2({1, 2, 3}, {0.5, 1, 1.5}, 0, 0.2);
  EXPECT_LT(uniqueness_residual(tr5, [](double) { return -2.0; }), 1e-8);
  EXPECT_GT(uniqueness_residual(tr5, [](double t) { return 1 + t; }), 1e-3);
}

TEST(Arclength, RelationHoldsOnCatenaryAndPerturbedPaths) {
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, -1, 1);
  const auto sol = integrate(tr, omega1_exact({1, 1, 1}, {1, 1, 1}, -1));
  const auto rep = arclength_relation(sol);
  EXPECT_LT(rep.max_gap, 1e-6);
  ASSERT_EQ(rep.l_w.size(), sol.samples.size());
  EXPECT_GT(rep.volume, 0);
  EXPECT_GT(rep.surface, 0);

  const auto tp = perturbed_omega1(0.1, 0, 1);
  EXPECT_LT(arclength_relation(integrate(tp, omega1_at(tp.at(0)))).max_gap, 1e-6);
}

TEST(Arclength, SurfaceIsNotVolume) {
  // ∫ π|w|² dl and ∫ 2π s dL = ∫ π|w|³ dl differ by a factor of |w| under the integral.
  const auto tr = Trajectory::exponential_omega1({1, 1, 1}, {1, 1, 1}, -1, 1);
  const auto rep = arclength_relation(integrate(tr, omega1_exact({1, 1, 1}, {1, 1, 1}, -1)));
  EXPECT_GT(std::abs(rep.surface - rep.volume), 1);
}

TEST(Arclength, ConstantNormPathHasZeroSlopes) {
  PathSolution sol;
  for (int k = 0; k <= 200; ++k) {
    const double t = k / 200.0;
    PathSample s;
    s.t = t;
    s.w = {std::cos(t), std::sin(t), 0, 0, 0, 0};
    s.dw = {-std::sin(t), std::cos(t), 0, 0, 0, 0};
    sol.samples.push_back(s);
  }
  EXPECT_LT(arclength_relation(sol).max_gap, 1e-12);
}

TEST(TermRank, GenericPathsGiveRankThree) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1, 1);
  const auto tr = perturbed_omega1(0.1, 0, 1);
  for (int k = 0; k < 20; ++k) {
    Vec6 w;
    for (double& x : w) x = d(rng);
    EXPECT_EQ(term_rank(tr, 0.05 * k, w), 3);
  }
}

TEST(TermRank, CatenaryVectorCollapses) {
  // On the exponential family H' w and H² w are multiples of w = ω1, and w'_t = (u, v).
  const auto tr = Trajectory::exponential_omega1({1, 2, 3}, {2, 1, 1}, 0, 1);
  EXPECT_EQ(term_rank(tr, 0.5, closed_form(tr, 0.5)), 2);
}

TEST(Trajectory, LoaderReportsLineNumbers) {
  try {
    load_trajectory_csv_file(kData + "/fixtures/malformed.csv");
    FAIL() << "expected TrajectoryError";
  } catch (const TrajectoryError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  const auto fails_at = [](const std::string& text) {
    std::istringstream in(text);
    try {
      load_trajectory_csv(in);
    } catch (const TrajectoryError& e) {
      return e.line();
    }
    return std::size_t{999};
  };
  EXPECT_EQ(fails_at("t,u1,u2,u3,v1,v2\n0,1,1,1,1,1\n"), 1u);
  EXPECT_EQ(fails_at("t,u1,u2,u3,v1,v2,v3\n0,1,1,1,1,1,1\n0,1,1,1,1,1,1\n"), 3u);
  EXPECT_EQ(fails_at("t,u1,u2,u3,v1,v2,v3\n0,1,1,1,1,1,1\n1,1,0,1,1,1,1\n"), 3u);
  EXPECT_EQ(fails_at("t,u1,u2,u3,v1,v2,v3\n0,1,1,1,1,1,1\n1,1,1,1,1,1\n"), 3u);
  EXPECT_EQ(fails_at("# c\n# w0 = 1,2\nt,u1,u2,u3,v1,v2,v3\n0,1,1,1,1,1,1\n1,1,1,1,1,1,1\n"), 2u);
}

TEST(Trajectory, SampledDerivativesFromDifferences) {
  std::vector<double> ts;
  std::vector<Vec6> xs;
  for (int k = 0; k <= 400; ++k) {
    const double t = k / 400.0;
    ts.push_back(t);
    xs.push_back(omega1_exact({1, 2, 3}, {-1, -2, -3}, t));
  }
  const auto tr = Trajectory::sampled(ts, xs);
  const Jet j = tr.at(0.3337);
  const Vec6 x = omega1_exact({1, 2, 3}, {-1, -2, -3}, 0.3337);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(j.x[i], x[i], 1e-9);
    EXPECT_NEAR(j.dx[i], i < 3 ? x[i] : -x[i], 1e-5);
    EXPECT_NEAR(j.ddx[i], x[i], 1e-3);
  }
}

TEST(Trajectory, ClosureRejectsVanishingCoordinate) {
  EXPECT_THROW(Trajectory::closure(
                   [](double t) {
                     Jet j;
                     j.x = {1, 1, 1, 1, 1, t - 0.5};
                     return j;
                   },
                   0, 1),
               TrajectoryError);
  EXPECT_THROW(Trajectory::exponential_omega1({1, 0, 1}, {1, 1, 1}, 0, 1), TrajectoryError);
}

TEST(Section, AllOnesValues) {
  const auto p = symbolic::to_double(symbolic::ones_point());
  const auto g = section_geometry(p, {1, 2, 3, 4, 5}, 1, 1, 2);
  EXPECT_EQ(g.rank_N, 5);
  EXPECT_NEAR(g.detE, -64, 1e-12);
  EXPECT_NEAR(laplace_det(g.E), -64, 1e-12);
  EXPECT_EQ(g.detE_closed_form, -64);
  EXPECT_LT(std::abs(g.detE_theta), 1e-12 * g.hadamard_theta);
  const Vec6 want{2, 2, 2, -2, -2, -2};
  EXPECT_LT(rel_gap(g.delta_theta, want), 1e-15);
}

TEST(Section, RandomPoints) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int k = 0; k < 100; ++k) {
    const auto p = symbolic::to_double(symbolic::random_point(rng));
    const std::array<double, 5> varpi{d(rng), d(rng), d(rng), d(rng), d(rng)};
    const double g1 = d(rng), g2 = d(rng), theta = d(rng);
    const auto g = section_geometry(p, varpi, g1, g2, theta);
    ASSERT_EQ(g.rank_N, 5);
    // |e| = |p| with p = H e from the entry rule.
    Eigen::Matrix<double, 6, 1> e = Eigen::Map<const Eigen::Matrix<double, 6, 1>>(g.e.data());
    EXPECT_NEAR((h_at(p) * e).norm(), e.norm(), 1e-10 * e.norm());
    EXPECT_LT(g.norm_gap, 1e-10);
    const double oracle = laplace_det(g.E);
    EXPECT_NEAR(g.detE_closed_form, oracle, 1e-9 * std::abs(oracle));
    EXPECT_NEAR(g.detE, oracle, 1e-9 * std::abs(oracle));
    EXPECT_LT(std::abs(g.detE_theta), 1e-12 * g.hadamard_theta);
    EXPECT_LT(g.eigen_residual, 1e-8);
  }
}

TEST(Section, RejectsDegenerateInput) {
  const auto p = symbolic::to_double(symbolic::ones_point());
  EXPECT_THROW(section_geometry(p, {0, 0, 0, 0, 0}, 1, 1), std::invalid_argument);
  EXPECT_THROW(section_geometry(p, {1, 0, 0, 0, 0}, 0, 1), std::invalid_argument);
  auto q = p;
  q.set(symbolic::v(2), 0);
  EXPECT_THROW(section_geometry(q, {1, 0, 0, 0, 0}, 1, 1), std::invalid_argument);
}
