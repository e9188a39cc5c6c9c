#include "epme/symbolic/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace epme::symbolic {

namespace {
bool descending(const Term& a, const Term& b) { return a.monomial > b.monomial; }

template <class T>
T power(const T& base, unsigned e) {
  T acc(1);
  for (unsigned i = 0; i < e; ++i) acc *= base;
  return acc;
}
}  // namespace

Polynomial::Polynomial(const mpz_class& constant) {
  if (constant != 0) terms_.push_back(Term{Monomial{}, constant});
}

Polynomial Polynomial::variable(Symbol s) { return monomial(Monomial::of(s), 1); }

Polynomial Polynomial::monomial(const Monomial& m, const mpz_class& coeff) {
  Polynomial p;
  if (coeff != 0) p.terms_.push_back(Term{m, coeff});
  return p;
}

Polynomial Polynomial::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), descending);
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

int Polynomial::max_order() const {
  int order = -1;
  for (const auto& t : terms_) order = std::max(order, t.monomial.max_order());
  return order;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial p;
  p.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (a->monomial > b->monomial) {
      p.terms_.push_back(*a++);
    } else if (b->monomial > a->monomial) {
      p.terms_.push_back(*b++);
    } else {
      mpz_class c = a->coeff + b->coeff;
      if (c != 0) p.terms_.push_back(Term{a->monomial, std::move(c)});
      ++a;
      ++b;
    }
  }
  p.terms_.insert(p.terms_.end(), a, terms_.end());
  p.terms_.insert(p.terms_.end(), b, o.terms_.end());
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  if (o.is_single_term()) return shifted(o.leading().monomial).scaled(o.leading().coeff);
  if (is_single_term()) return o.shifted(leading().monomial).scaled(leading().coeff);
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) out.push_back(Term{a.monomial * b.monomial, a.coeff * b.coeff});
  return from_unsorted(std::move(out));
}

Polynomial Polynomial::scaled(const mpz_class& c) const {
  if (c == 0) return Polynomial();
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::shifted(const Monomial& m) const {
  // Multiplying every term by the same monomial preserves the order.
  Polynomial p = *this;
  for (auto& t : p.terms_) t.monomial = t.monomial * m;
  return p;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(mpz_class(1)), base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::partial(Symbol s) const {
  const int var = s.index();
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const unsigned e = t.monomial.exponent(var);
    if (e == 0) continue;
    out.push_back(Term{t.monomial.lowered(var), t.coeff * e});
  }
  return from_unsorted(std::move(out));
}

Polynomial Polynomial::time_derivative(int max_order) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    for (int var = 0; var < kVariableCount; ++var) {
      const unsigned e = t.monomial.exponent(var);
      if (e == 0) continue;
      const Symbol next = Symbol::from_index(var).derivative();
      if (next.order > max_order)
        throw SymbolicError("derivative order overflow: d/dt " + Symbol::from_index(var).name() +
                            " exceeds maximum order " + std::to_string(max_order));
      out.push_back(Term{t.monomial.lowered(var) * Monomial::of(next), t.coeff * e});
    }
  }
  return from_unsorted(std::move(out));
}

mpz_class Polynomial::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_.front().monomial;
  for (const auto& t : terms_) {
    g = Monomial::gcd(g, t.monomial);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial Polynomial::divided_by(const mpz_class& c) const {
  Polynomial p = *this;
  for (auto& t : p.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  return p;
}

Polynomial Polynomial::divided_by(const Monomial& m) const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.monomial = t.monomial.quotient(m);
  return p;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw SymbolicError("polynomial division by zero");
  const Term& lead = divisor.leading();
  Polynomial rem = *this;
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const Term& lt = rem.leading();
    if (!lead.monomial.divides(lt.monomial)) return std::nullopt;
    if (!mpz_divisible_p(lt.coeff.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), lt.coeff.get_mpz_t(), lead.coeff.get_mpz_t());
    const Monomial m = lt.monomial.quotient(lead.monomial);
    rem = rem - divisor.shifted(m).scaled(c);
    quotient.push_back(Term{m, std::move(c)});
  }
  return from_unsorted(std::move(quotient));
}

mpq_class Polynomial::evaluate(const PointState<mpq_class>& p) const {
  mpq_class acc = 0;
  for (const auto& t : terms_) {
    mpq_class term(t.coeff);
    for (int var = 0; var < kVariableCount; ++var) {
      const unsigned e = t.monomial.exponent(var);
      if (e != 0) term *= power(p.at(Symbol::from_index(var)), e);
    }
    acc += term;
  }
  acc.canonicalize();
  return acc;
}

double Polynomial::evaluate(const PointState<double>& p) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    double term = t.coeff.get_d();
    for (int var = 0; var < kVariableCount; ++var) {
      const unsigned e = t.monomial.exponent(var);
      if (e != 0) term *= power(p.at(Symbol::from_index(var)), e);
    }
    acc += term;
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const mpz_class mag = abs(t.coeff);
    bool need_star = false;
    if (t.monomial.is_one() || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (int var = 0; var < kVariableCount; ++var) {
      const unsigned e = t.monomial.exponent(var);
      if (e == 0) continue;
      if (need_star) os << '*';
      os << Symbol::from_index(var).name();
      if (e > 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

}  // namespace epme::symbolic
