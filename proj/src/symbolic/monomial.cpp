#include "epme/symbolic/monomial.hpp"

#include <algorithm>
#include <limits>

namespace epme::symbolic {

namespace {
constexpr const char* kBaseNames[kBaseCount] = {"u1", "u2", "u3", "v1", "v2", "v3"};

void check_index(int i) {
  if (i < 1 || i > 3) throw SymbolicError("coordinate index must be 1..3, got " + std::to_string(i));
}
}  // namespace

std::string Symbol::name() const {
  return std::string(kBaseNames[static_cast<int>(base)]) + std::string(static_cast<std::size_t>(order), '\'');
}

Symbol u(int i, int order) {
  check_index(i);
  return Symbol{static_cast<Base>(i - 1), order};
}

Symbol v(int i, int order) {
  check_index(i);
  return Symbol{static_cast<Base>(i + 2), order};
}

Monomial Monomial::of(Symbol s, unsigned exponent) {
  if (s.order < 0 || s.order > kOrderCap)
    throw SymbolicError("derivative order " + std::to_string(s.order) + " exceeds the representable maximum");
  if (exponent > std::numeric_limits<std::uint8_t>::max()) throw SymbolicError("exponent overflow");
  Monomial m;
  m.exps_[static_cast<std::size_t>(s.index())] = static_cast<std::uint8_t>(exponent);
  m.degree_ = static_cast<std::uint16_t>(exponent);
  return m;
}

int Monomial::max_order() const {
  for (int var = kVariableCount - 1; var >= 0; --var)
    if (exps_[static_cast<std::size_t>(var)] != 0) return var / kBaseCount;
  return -1;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    const unsigned e = static_cast<unsigned>(exps_[i]) + other.exps_[i];
    if (e > std::numeric_limits<std::uint8_t>::max()) throw SymbolicError("exponent overflow");
    out.exps_[i] = static_cast<std::uint8_t>(e);
  }
  out.degree_ = static_cast<std::uint16_t>(degree_ + other.degree_);
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial out;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] = static_cast<std::uint8_t>(exps_[i] - divisor.exps_[i]);
  out.degree_ = static_cast<std::uint16_t>(degree_ - divisor.degree_);
  return out;
}

Monomial Monomial::lowered(int var) const {
  Monomial out = *this;
  --out.exps_[static_cast<std::size_t>(var)];
  --out.degree_;
  return out;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  unsigned deg = 0;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    out.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    deg += out.exps_[i];
  }
  out.degree_ = static_cast<std::uint16_t>(deg);
  return out;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  unsigned deg = 0;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    out.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    deg += out.exps_[i];
  }
  out.degree_ = static_cast<std::uint16_t>(deg);
  return out;
}

}  // namespace epme::symbolic
