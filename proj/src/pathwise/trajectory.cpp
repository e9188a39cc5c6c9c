#include "epme/pathwise/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace epme::pathwise {

symbolic::PointState<double> Jet::point() const {
  symbolic::PointState<double> p(2);
  for (int b = 0; b < 6; ++b) {
    const auto base = static_cast<symbolic::Base>(b);
    const auto i = static_cast<std::size_t>(b);
    p.set({base, 0}, x[i]).set({base, 1}, dx[i]).set({base, 2}, ddx[i]);
  }
  return p;
}

std::string to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::ExponentialOmega1: return "ExponentialOmega1";
    case TrajectoryKind::ExponentialOmega2: return "ExponentialOmega2";
    case TrajectoryKind::Sampled: return "Sampled";
    case TrajectoryKind::Closure: return "Closure";
  }
  return "?";
}

namespace {

Jet exponential_jet(const Vec3& a, const Vec3& b, double rate, double t) {
  Jet j;
  const double ep = std::exp(rate * t), em = std::exp(-rate * t);
  for (std::size_t i = 0; i < 3; ++i) {
    j.x[i] = a[i] * ep;
    j.dx[i] = rate * j.x[i];
    j.ddx[i] = rate * j.dx[i];
    j.x[i + 3] = b[i] * em;
    j.dx[i + 3] = -rate * j.x[i + 3];
    j.ddx[i + 3] = -rate * j.dx[i + 3];
  }
  return j;
}

void check_params(const Vec3& a, const Vec3& b, double t0, double t1) {
  if (!(t0 < t1)) throw TrajectoryError("empty domain");
  for (std::size_t i = 0; i < 3; ++i)
    if (a[i] == 0 || b[i] == 0) throw TrajectoryError("exponential amplitudes must be nonzero");
}

// Centred second-order differences, one-sided second-order at the ends.
std::vector<Vec6> differentiate(const std::vector<double>& t, const std::vector<Vec6>& x) {
  const std::size_t n = t.size();
  std::vector<Vec6> d(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < 6; ++i) {
      if (n == 2) {
        d[k][i] = (x[1][i] - x[0][i]) / (t[1] - t[0]);
        continue;
      }
      std::size_t a, b, c;  // three nodes, derivative at the one equal to k
      if (k == 0) a = 0, b = 1, c = 2;
      else if (k == n - 1) a = n - 3, b = n - 2, c = n - 1;
      else a = k - 1, b = k, c = k + 1;
      // Derivative of the quadratic through (a, b, c), evaluated at t[k].
      const double ta = t[a], tb = t[b], tc = t[c], tk = t[k];
      d[k][i] = x[a][i] * ((tk - tb) + (tk - tc)) / ((ta - tb) * (ta - tc)) +
                x[b][i] * ((tk - ta) + (tk - tc)) / ((tb - ta) * (tb - tc)) +
                x[c][i] * ((tk - ta) + (tk - tb)) / ((tc - ta) * (tc - tb));
    }
  return d;
}

}  // namespace

Trajectory Trajectory::exponential_omega1(const Vec3& c, const Vec3& l, double t0, double t1) {
  check_params(c, l, t0, t1);
  Trajectory tr;
  tr.kind_ = TrajectoryKind::ExponentialOmega1;
  tr.t0_ = t0;
  tr.t1_ = t1;
  tr.first_ = c;
  tr.second_ = l;
  tr.f_ = [c, l](double t) { return exponential_jet(c, l, 1, t); };
  return tr;
}

Trajectory Trajectory::exponential_omega2(const Vec3& C, const Vec3& K, double t0, double t1) {
  check_params(C, K, t0, t1);
  Trajectory tr;
  tr.kind_ = TrajectoryKind::ExponentialOmega2;
  tr.t0_ = t0;
  tr.t1_ = t1;
  tr.first_ = C;
  tr.second_ = K;
  tr.f_ = [C, K](double t) { return exponential_jet(C, K, 5, t); };
  return tr;
}

Trajectory Trajectory::closure(std::function<Jet(double)> f, double t0, double t1) {
  if (!(t0 < t1)) throw TrajectoryError("empty domain");
  Trajectory tr;
  tr.kind_ = TrajectoryKind::Closure;
  tr.t0_ = t0;
  tr.t1_ = t1;
  tr.f_ = std::move(f);
  tr.check_nonzero(1001);
  return tr;
}

Trajectory Trajectory::sampled(std::vector<double> t, std::vector<Vec6> x, std::vector<Vec6> dx, std::vector<Vec6> ddx) {
  if (t.size() < 2) throw TrajectoryError("a sampled trajectory needs at least two rows");
  if (x.size() != t.size() || (!dx.empty() && dx.size() != t.size()) || (!ddx.empty() && ddx.size() != t.size()))
    throw TrajectoryError("sample columns have different lengths");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw TrajectoryError("t must be strictly increasing", k + 1);
  Trajectory tr;
  tr.kind_ = TrajectoryKind::Sampled;
  tr.t0_ = t.front();
  tr.t1_ = t.back();
  if (dx.empty()) dx = differentiate(t, x);
  if (ddx.empty()) ddx = differentiate(t, dx);
  tr.ts_ = std::move(t);
  tr.xs_ = std::move(x);
  tr.dxs_ = std::move(dx);
  tr.ddxs_ = std::move(ddx);
  tr.check_nonzero(0);
  return tr;
}

void Trajectory::check_nonzero(std::size_t probes) const {
  auto check = [&](const Vec6& x, double t) {
    for (double xi : x)
      if (xi == 0 || !std::isfinite(xi))
        throw TrajectoryError("coordinate is zero or not finite at t = " + std::to_string(t));
  };
  if (kind_ == TrajectoryKind::Sampled) {
    for (std::size_t k = 0; k < ts_.size(); ++k) check(xs_[k], ts_[k]);
    return;
  }
  for (std::size_t k = 0; k < probes; ++k) {
    const double t = t0_ + (t1_ - t0_) * static_cast<double>(k) / static_cast<double>(probes - 1);
    check(f_(t).x, t);
  }
}

Jet Trajectory::at(double t) const {
  if (kind_ != TrajectoryKind::Sampled) return f_(t);
  if (t < t0_ || t > t1_) throw PathError("t = " + std::to_string(t) + " is outside the sampled domain");
  std::size_t k = static_cast<std::size_t>(std::upper_bound(ts_.begin(), ts_.end(), t) - ts_.begin());
  k = std::clamp<std::size_t>(k, 1, ts_.size() - 1) - 1;
  const double h = ts_[k + 1] - ts_[k], s = (t - ts_[k]) / h;
  // Cubic Hermite basis and its derivatives in s.
  const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
  const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
  const double d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1, d01 = -6 * s * s + 6 * s, d11 = 3 * s * s - 2 * s;
  Jet j;
  for (std::size_t i = 0; i < 6; ++i) {
    const double x0 = xs_[k][i], x1 = xs_[k + 1][i], m0 = dxs_[k][i], m1 = dxs_[k + 1][i];
    j.x[i] = h00 * x0 + h10 * h * m0 + h01 * x1 + h11 * h * m1;
    j.dx[i] = (d00 * x0 + d01 * x1) / h + d10 * m0 + d11 * m1;
    j.ddx[i] = (1 - s) * ddxs_[k][i] + s * ddxs_[k + 1][i];
  }
  return j;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw TrajectoryError("not a number: '" + s + "'", line);
  return v;
}

std::vector<std::string> expected_header(std::size_t columns) {
  std::vector<std::string> h = {"t"};
  for (const char* prefix : {"", "d", "dd"}) {
    if (h.size() >= columns) break;
    for (const char* b : {"u1", "u2", "u3", "v1", "v2", "v3"}) h.push_back(std::string(prefix) + b);
  }
  return h;
}

}  // namespace

Trajectory load_trajectory_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<Vec6> w0;
  std::vector<std::string> header;
  std::vector<double> t;
  std::vector<Vec6> x, dx, ddx;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos && line.substr(1, eq - 1).find("w0") != std::string::npos) {
        const auto cells = split(line.substr(eq + 1));
        if (cells.size() != 6) throw TrajectoryError("w0 needs six values", lineno);
        Vec6 w{};
        for (std::size_t i = 0; i < 6; ++i) w[i] = parse_double(cells[i], lineno);
        w0 = w;
      }
      continue;
    }
    const auto cells = split(line);
    if (header.empty()) {
      if (cells.size() != 7 && cells.size() != 13 && cells.size() != 19)
        throw TrajectoryError("header must have 7, 13 or 19 columns", lineno);
      if (cells != expected_header(cells.size())) throw TrajectoryError("unexpected header", lineno);
      header = cells;
      continue;
    }
    if (cells.size() != header.size())
      throw TrajectoryError("expected " + std::to_string(header.size()) + " columns, got " + std::to_string(cells.size()), lineno);
    std::vector<double> v;
    for (const auto& c : cells) v.push_back(parse_double(c, lineno));
    if (!t.empty() && !(v[0] > t.back())) throw TrajectoryError("t must be strictly increasing", lineno);
    for (std::size_t i = 1; i <= 6; ++i)
      if (v[i] == 0) throw TrajectoryError("coordinate " + header[i] + " is zero", lineno);
    t.push_back(v[0]);
    Vec6 a{}, b{}, c{};
    for (std::size_t i = 0; i < 6; ++i) {
      a[i] = v[1 + i];
      if (v.size() >= 13) b[i] = v[7 + i];
      if (v.size() >= 19) c[i] = v[13 + i];
    }
    x.push_back(a);
    if (v.size() >= 13) dx.push_back(b);
    if (v.size() >= 19) ddx.push_back(c);
  }
  if (header.empty()) throw TrajectoryError("missing header", lineno);
  if (t.size() < 2) throw TrajectoryError("a sampled trajectory needs at least two rows", lineno);
  Trajectory tr = Trajectory::sampled(std::move(t), std::move(x), std::move(dx), std::move(ddx));
  tr.initial_vector = w0;
  return tr;
}

Trajectory load_trajectory_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TrajectoryError("cannot open " + path);
  return load_trajectory_csv(in);
}

Trajectory perturbed_omega1(double amplitude, double t0, double t1) {
  return Trajectory::closure(
      [amplitude](double t) {
        const double e = std::exp(t), s = std::sin(t), c = std::cos(t);
        // g = e^t (1 + a sin t); g' = e^t (1 + a sin t + a cos t); g'' = e^t (1 + 2a cos t).
        const double g = e * (1 + amplitude * s), g1 = e * (1 + amplitude * (s + c)), g2 = e * (1 + 2 * amplitude * c);
        const double h = 1 / e;
        Jet j;
        for (std::size_t i = 0; i < 3; ++i) {
          j.x[i] = g, j.dx[i] = g1, j.ddx[i] = g2;
          j.x[i + 3] = h, j.dx[i + 3] = -h, j.ddx[i + 3] = h;
        }
        return j;
      },
      t0, t1);
}

Vec6 omega1_at(const Jet& j) {
  Vec6 w = j.x;
  for (std::size_t i = 3; i < 6; ++i) w[i] = -w[i];
  return w;
}

Vec6 omega2_at(const Jet& j) { return j.x; }

}  // namespace epme::pathwise
