#include "epme/operator_h/displays.hpp"

#include <cmath>

#include "epme/symbolic/parser.hpp"

namespace epme::operator_h {

const Display& h_display() {
  static const Display d{"H", 6, 6, {
      "1", "u1/u2", "u1/u3", "u1/v1", "0", "u1/v3",
      "0", "2", "u2/u3", "u2/v1", "0", "u2/v3",
      "0", "u3/u2", "2", "u3/v1", "0", "u3/v3",
      "0", "-v1/u2", "-v1/u3", "-2", "0", "-v1/v3",
      "0", "-v2/u2", "-v2/u3", "-v2/v1", "-1", "-v2/v3",
      "0", "-v3/u2", "-v3/u3", "-v3/v1", "0", "-2"}};
  return d;
}

const Display& h_squared_display() {
  static const Display d{"H^2", 6, 6, {
      "1", "2*u1/u2", "2*u1/u3", "0", "0", "0",
      "0", "3", "2*u2/u3", "0", "0", "0",
      "0", "2*u3/u2", "3", "0", "0", "0",
      "0", "0", "0", "3", "0", "2*v1/v3",
      "0", "0", "0", "2*v2/v1", "1", "2*v2/v3",
      "0", "0", "0", "2*v3/v1", "0", "3"}};
  return d;
}

const Display& h_prime_display() {
  static const Display d{"H'", 6, 6, {
      "0", "u1'/u2 - u1*u2'/u2^2", "u1'/u3 - u1*u3'/u3^2", "u1'/v1 - u1*v1'/v1^2", "0", "u1'/v3 - u1*v3'/v3^2",
      "0", "0", "u2'/u3 - u2*u3'/u3^2", "u2'/v1 - u2*v1'/v1^2", "0", "u2'/v3 - u2*v3'/v3^2",
      "0", "u3'/u2 - u3*u2'/u2^2", "0", "u3'/v1 - u3*v1'/v1^2", "0", "u3'/v3 - u3*v3'/v3^2",
      "0", "-v1'/u2 + v1*u2'/u2^2", "-v1'/u3 + v1*u3'/u3^2", "0", "0", "-v1'/v3 + v1*v3'/v3^2",
      "0", "v2'/u2 + v2*u2'/u2^2", "-v2'/u3 + v2*u3'/u3^2", "-v2'/v1 + v2*v1'/v1^2", "0", "-v2'/v3 + v2*v3'/v3^2",
      "0", "-v3'/u2 + v3*u2'/u2^2", "-v3'/u3 + v3*u3'/u3^2", "-v3'/v1 + v3*v1'/v1^2", "0", "0"}};
  return d;
}

const Display& v_h_squared_display() {
  static const Display d{"V_H^2", 6, 6, {
      "u1/u3", "0", "0", "0", "0", "1",
      "u2/u3", "0", "0", "0", "-u2/u3", "0",
      "1", "0", "0", "0", "1", "0",
      "0", "v1/v3", "-v1/v3", "0", "0", "0",
      "0", "v2/v3", "0", "1", "0", "0",
      "0", "1", "1", "0", "0", "0"}};
  return d;
}

std::array<long, 6> h_squared_eigenvalues() { return {5, 5, 1, 1, 1, 1}; }

const std::vector<Erratum>& errata() {
  static const std::vector<Erratum> list = {
      {"H'", 5, 2, "v2'/u2 + v2*u2'/u2^2", "-v2'/u2 + v2*u2'/u2^2"},
  };
  return list;
}

ExprMatrix to_matrix(const Display& d, bool apply_errata) {
  ExprMatrix m(d.rows, d.cols);
  for (std::size_t r = 0; r < d.rows; ++r)
    for (std::size_t c = 0; c < d.cols; ++c) m(r, c) = symbolic::parse_rational(d.at(r, c));
  if (apply_errata)
    for (const Erratum& e : errata())
      if (e.display == d.name) m(e.row - 1, e.col - 1) = symbolic::parse_rational(e.corrected);
  return m;
}

const std::string& b_expression() {
  static const std::string s =
      "((v1^2 + v3^2)*u3^2 + v1^2*v3^2)*u2^4 + u3^4*v1^2*v3^2"
      " + (v3^2*v1^4 + (v3^4 + (u1^2 + v2^2)*v3^2)*v1^2)*u3^2"
      " + ((v1^2 + v3^2)*u3^4 + (v1^4 + (u1^2 + v2^2 + 14*v3^2)*v1^2 + v3^4 + (u1^2 + v2^2)*v3^2)*u3^2"
      " + v3^2*v1^4 + (v3^4 + (u1^2 + v2^2)*v3^2)*v1^2)*u2^2";
  return s;
}

const std::string& q_radicand_expression() {
  static const std::string s =
      "((u1^2 + u2^2 + u3^2 + v1^2 + v2^2 + v3^2)*((v1^2 + v3^2)*u3^2 + v1^2*v3^2)*u2^2 + u3^2*v1^2*v3^2)"
      "*((v1^2 + v3^2)*u3^2 + v1^2*v3^2)*u2^4"
      " + ((v1^2 + v3^2)*u3^4 + (v1^4 + (u1^2 + v2^2 + 24*v3^2)*v1^2 + v3^2*(u1^2 + v2^2 + v3^2))*u3^2"
      " + v1^2*v3^2*(u1^2 + v1^2 + v2^2 + v3^2))*u2^2"
      " + u3^2*v1^2*v3^2*(u1^2 + u3^2 + v1^2 + v2^2 + v3^2)";
  return s;
}

linalg::DenseMatrix<double> v_h_display(const PointState<double>& p) {
  const double s5 = std::sqrt(5.0);
  const auto x = p.coordinates();
  const double u1 = x[0], u2 = x[1], u3 = x[2], v1 = x[3], v2 = x[4], v3 = x[5];
  const double rows[6][6] = {
      {0.5 * u1 * (s5 - 1) / (s5 - 2), -0.5 * u1 * (-s5 - 1) / (-s5 - 2), 0, 1, 0, 0},
      {-0.5 * u2 * (s5 - 1) / (s5 - 2), -0.5 * u2 * (-s5 - 1) / (-s5 - 2), -u2, 0, 0, 0},
      {-0.5 * u3 * (3 + s5), -0.5 * u3 * (3 - s5), u3, 0, 0, 0},
      {v1, v1, 0, 0, 0, -v1},
      {v2, v2, 0, 0, 1, 0},
      {v3, v3, 0, 0, 0, v3}};
  linalg::DenseMatrix<double> m(6, 6);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) m(r, c) = rows[r][c];
  return m;
}

std::array<double, 6> v_h_eigenvalues() {
  const double s5 = std::sqrt(5.0);
  return {s5, -s5, 1, 1, -1, -1};
}

}  // namespace epme::operator_h
