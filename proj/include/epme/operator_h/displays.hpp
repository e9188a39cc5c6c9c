#pragma once

#include <array>
#include <string>
#include <vector>

#include "epme/operator_h/operators.hpp"

namespace epme::operator_h {

/// A printed closed form, one parser string per entry, row-major.
struct Display {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::string> entries;

  const std::string& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// H as printed.
const Display& h_display();
/// H·H as printed.
const Display& h_squared_display();
/// dH/dt as printed, including the sign slip listed in errata().
const Display& h_prime_display();
/// Eigenvectors of H·H as columns; eigenvalues h_squared_eigenvalues().
const Display& v_h_squared_display();
std::array<long, 6> h_squared_eigenvalues();

/// A printed entry that disagrees with the derivation. row and col are 1-based.
struct Erratum {
  std::string display;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string printed;
  std::string corrected;
};

const std::vector<Erratum>& errata();

/// Parses every entry. With apply_errata the corrected strings replace the printed ones.
ExprMatrix to_matrix(const Display& d, bool apply_errata = true);

/// The printed numerator b of the squared extreme singular values.
const std::string& b_expression();
/// The printed radicand of q, with its unbalanced closing parenthesis dropped.
const std::string& q_radicand_expression();

/// Eigenvectors of H as printed (columns), with the irrational entries in double precision.
linalg::DenseMatrix<double> v_h_display(const PointState<double>& p);
/// (sqrt 5, -sqrt 5, 1, 1, -1, -1).
std::array<double, 6> v_h_eigenvalues();

}  // namespace epme::operator_h
