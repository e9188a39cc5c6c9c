#pragma once

#include <array>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epme/symbolic/point_state.hpp"

namespace epme::pathwise {

using Vec3 = std::array<double, 3>;
using Vec6 = std::array<double, 6>;

/// Failure while following a path: a coordinate reaches zero, the step budget runs out,
/// or the sweep area stops increasing.
class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed trajectory input. line() is 1-based, 0 when not tied to a line.
class TrajectoryError : public std::invalid_argument {
 public:
  TrajectoryError(const std::string& what, std::size_t line = 0)
      : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// (u1, u2, u3, v1, v2, v3) and its first two t-derivatives.
struct Jet {
  Vec6 x{};
  Vec6 dx{};
  Vec6 ddx{};

  symbolic::PointState<double> point() const;
};

enum class TrajectoryKind { ExponentialOmega1, ExponentialOmega2, Sampled, Closure };

std::string to_string(TrajectoryKind kind);

class Trajectory {
 public:
  /// u = c e^t, v = l e^-t.
  static Trajectory exponential_omega1(const Vec3& c, const Vec3& l, double t0, double t1);
  /// u = C e^5t, v = K e^-5t.
  static Trajectory exponential_omega2(const Vec3& C, const Vec3& K, double t0, double t1);
  static Trajectory closure(std::function<Jet(double)> f, double t0, double t1);
  /// Samples at strictly increasing t. Missing derivative columns are filled by centred
  /// second-order differences (one-sided at the ends); values between samples come from
  /// cubic Hermite interpolation.
  static Trajectory sampled(std::vector<double> t, std::vector<Vec6> x, std::vector<Vec6> dx = {},
                            std::vector<Vec6> ddx = {});

  TrajectoryKind kind() const { return kind_; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  /// c and l (or C and K) for the exponential kinds.
  const Vec3& first() const { return first_; }
  const Vec3& second() const { return second_; }

  Jet at(double t) const;

  /// Initial vector named by the source (CSV directive), if any.
  std::optional<Vec6> initial_vector;

 private:
  Trajectory() = default;
  void check_nonzero(std::size_t probes) const;

  TrajectoryKind kind_ = TrajectoryKind::Closure;
  double t0_ = 0;
  double t1_ = 0;
  Vec3 first_{};
  Vec3 second_{};
  std::function<Jet(double)> f_;
  std::vector<double> ts_;
  std::vector<Vec6> xs_, dxs_, ddxs_;
};

/// Header `t,u1,u2,u3,v1,v2,v3[,du1..dv3[,ddu1..ddv3]]`. Lines starting with '#' are
/// comments, except `# w0 = a,b,c,d,e,f`, which sets initial_vector.
Trajectory load_trajectory_csv(std::istream& in);
Trajectory load_trajectory_csv_file(const std::string& path);

/// u = e^t (1 + amplitude sin t)(1,1,1), v = e^-t (1,1,1).
Trajectory perturbed_omega1(double amplitude, double t0, double t1);

/// (u, -v) and (u, v) at a jet.
Vec6 omega1_at(const Jet& j);
Vec6 omega2_at(const Jet& j);

}  // namespace epme::pathwise
