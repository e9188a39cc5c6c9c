#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace epme::symbolic {

/// Coordinate functions of the two 3-tuples u and v.
enum class Base : std::uint8_t { u1, u2, u3, v1, v2, v3 };

inline constexpr int kBaseCount = 6;
/// Highest derivative order the monomial layout can hold.
inline constexpr int kOrderCap = 4;
/// Derivative order bound used unless a caller asks for more.
inline constexpr int kDefaultMaxOrder = 2;
inline constexpr int kVariableCount = kBaseCount * (kOrderCap + 1);

class SymbolicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate function together with its t-derivative order (u1, u1', u1'', ...).
struct Symbol {
  Base base = Base::u1;
  int order = 0;

  constexpr int index() const { return order * kBaseCount + static_cast<int>(base); }

  static constexpr Symbol from_index(int index) {
    return Symbol{static_cast<Base>(index % kBaseCount), index / kBaseCount};
  }

  Symbol derivative() const { return Symbol{base, order + 1}; }

  std::string name() const;

  friend constexpr auto operator<=>(const Symbol& a, const Symbol& b) {
    return a.index() <=> b.index();
  }
  friend constexpr bool operator==(const Symbol& a, const Symbol& b) {
    return a.index() == b.index();
  }
};

/// u_i^{(order)} with i in 1..3.
Symbol u(int i, int order = 0);
/// v_i^{(order)} with i in 1..3.
Symbol v(int i, int order = 0);

}  // namespace epme::symbolic
