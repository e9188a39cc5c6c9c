#pragma once

#include <array>
#include <string>

#include "epme/symbolic/symbol.hpp"

namespace epme::symbolic {

/// Values of u, v and their t-derivatives up to max_order at one parameter value.
/// T is mpq_class for exact work or double for floating-point work.
template <class T>
class PointState {
 public:
  explicit PointState(int max_order = 0) : max_order_(max_order) {
    if (max_order < 0 || max_order > kOrderCap)
      throw SymbolicError("point derivative order out of range: " + std::to_string(max_order));
    values_.fill(T(0));
  }

  /// Zeroth-order point from the two 3-tuples.
  static PointState from_uv(const std::array<T, 3>& u_values, const std::array<T, 3>& v_values,
                            int max_order = 0) {
    PointState p(max_order);
    for (int i = 0; i < 3; ++i) {
      p.set(u(i + 1), u_values[static_cast<std::size_t>(i)]);
      p.set(v(i + 1), v_values[static_cast<std::size_t>(i)]);
    }
    return p;
  }

  int max_order() const { return max_order_; }
  bool has(Symbol s) const { return s.order <= max_order_; }

  const T& at(Symbol s) const {
    check(s);
    return values_[static_cast<std::size_t>(s.index())];
  }

  PointState& set(Symbol s, const T& value) {
    check(s);
    values_[static_cast<std::size_t>(s.index())] = value;
    return *this;
  }

  /// Value of u_i^{(order)}, i in 1..3.
  const T& u_at(int i, int order = 0) const { return at(u(i, order)); }
  const T& v_at(int i, int order = 0) const { return at(v(i, order)); }

  /// All six zeroth-order coordinates, (u1, u2, u3, v1, v2, v3).
  std::array<T, 6> coordinates(int order = 0) const {
    std::array<T, 6> out;
    for (int b = 0; b < kBaseCount; ++b)
      out[static_cast<std::size_t>(b)] = at(Symbol{static_cast<Base>(b), order});
    return out;
  }

  /// True iff every zeroth-order coordinate is nonzero.
  bool coordinates_nonzero() const {
    for (const T& x : coordinates())
      if (x == 0) return false;
    return true;
  }

 private:
  void check(Symbol s) const {
    if (s.order < 0 || s.order > max_order_)
      throw SymbolicError("point has no value for " + s.name());
  }

  int max_order_;
  std::array<T, kVariableCount> values_;
};

}  // namespace epme::symbolic
