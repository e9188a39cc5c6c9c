#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "epme/symbolic/symbol.hpp"

namespace epme::symbolic {

/// Power product over the derivative-jet alphabet. Ordered graded-lexicographically
/// with u1 > u2 > u3 > v1 > v2 > v3 > u1' > ... .
class Monomial {
 public:
  Monomial() = default;

  static Monomial of(Symbol s, unsigned exponent = 1);

  unsigned degree() const { return degree_; }
  unsigned exponent(int var) const { return exps_[static_cast<std::size_t>(var)]; }
  unsigned exponent(Symbol s) const { return exponent(s.index()); }
  bool is_one() const { return degree_ == 0; }
  /// Highest derivative order among the variables present, -1 for the unit monomial.
  int max_order() const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// this / divisor; divisor must divide this.
  Monomial quotient(const Monomial& divisor) const;
  /// Removes one power of var (which must be present).
  Monomial lowered(int var) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);

  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    // A larger exponent on an earlier variable ranks higher.
    return a.exps_ <=> b.exps_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::array<std::uint8_t, kVariableCount> exps_{};
  std::uint16_t degree_ = 0;
};

}  // namespace epme::symbolic
