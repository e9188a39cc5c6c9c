#include "epme/symbolic/rational_expr.hpp"

#include <algorithm>
#include <cstdlib>

namespace epme::symbolic {

namespace {
bool is_single_factor(const Polynomial& p) {
  if (!p.is_single_term()) return false;
  const Term& t = p.leading();
  if (t.monomial.is_one()) return true;
  return t.coeff == 1 && t.monomial.degree() == 1;
}

std::string wrap(const Polynomial& p, bool force) {
  std::string s = p.to_string();
  if (force || p.size() > 1) return "(" + s + ")";
  return s;
}
}  // namespace

RationalExpr::RationalExpr(const mpq_class& value)
    : num_(mpq_class(value).get_num()), den_(mpq_class(value).get_den()) {
  normalize();
}

RationalExpr::RationalExpr(Polynomial num) : num_(std::move(num)), den_(mpz_class(1)) { normalize(); }

RationalExpr::RationalExpr(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalExpr::normalize() {
  if (den_.is_zero()) throw SymbolicError("identically-zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(mpz_class(1));
    return;
  }
  const Monomial mg = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
  if (!mg.is_one()) {
    num_ = num_.divided_by(mg);
    den_ = den_.divided_by(mg);
  }
  mpz_class g = num_.content();
  const mpz_class gd = den_.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gd.get_mpz_t());
  if (g != 1) {
    num_ = num_.divided_by(g);
    den_ = den_.divided_by(g);
  }
  if (den_.leading().coeff < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (!den_.is_constant() && !den_.is_single_term()) {
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = Polynomial(mpz_class(1));
      return;
    }
    if (!num_.is_single_term()) {
      if (auto q = den_.divide_exact(num_)) {
        // num / den == 1 / q; keep the leading coefficient of the new denominator positive.
        const bool flip = q->leading().coeff < 0;
        den_ = flip ? -*q : std::move(*q);
        num_ = Polynomial(mpz_class(flip ? -1 : 1));
      }
    }
  }
}

int RationalExpr::max_order() const { return std::max(num_.max_order(), den_.max_order()); }

RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalExpr& RationalExpr::operator+=(const RationalExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ = num_ + o.num_;
  } else if (den_.is_single_term() && o.den_.is_single_term()) {
    // Both denominators are c*m: bring them to the common lcm.
    const Term& a = den_.leading();
    const Term& b = o.den_.leading();
    mpz_class lc;
    mpz_lcm(lc.get_mpz_t(), a.coeff.get_mpz_t(), b.coeff.get_mpz_t());
    const Monomial lm = Monomial::lcm(a.monomial, b.monomial);
    const mpz_class fa = lc / a.coeff, fb = lc / b.coeff;
    num_ = num_.shifted(lm.quotient(a.monomial)).scaled(fa) + o.num_.shifted(lm.quotient(b.monomial)).scaled(fb);
    den_ = Polynomial::monomial(lm, lc);
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalExpr& RationalExpr::operator-=(const RationalExpr& o) { return *this += -o; }

RationalExpr& RationalExpr::operator*=(const RationalExpr& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalExpr();
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RationalExpr& RationalExpr::operator/=(const RationalExpr& o) {
  if (o.is_zero()) throw SymbolicError("identically-zero denominator");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

RationalExpr RationalExpr::pow(int n) const {
  if (n < 0) {
    if (is_zero()) throw SymbolicError("identically-zero denominator");
    return RationalExpr(den_.pow(static_cast<unsigned>(-n)), num_.pow(static_cast<unsigned>(-n)));
  }
  return RationalExpr(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

std::string RationalExpr::to_string() const {
  return wrap(num_, false) + "/" + wrap(den_, !is_single_factor(den_));
}

bool equals(const RationalExpr& a, const RationalExpr& b) {
  if (a.den() == b.den()) return a.num() == b.num();
  return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

RationalExpr differentiate_t(const RationalExpr& e, int max_order) {
  const Polynomial dn = e.num().time_derivative(max_order);
  if (e.den().is_constant()) return RationalExpr(dn, e.den());
  const Polynomial dd = e.den().time_derivative(max_order);
  return RationalExpr(dn * e.den() - e.num() * dd, e.den() * e.den());
}

RationalExpr partial(const RationalExpr& e, Symbol s) {
  const Polynomial dn = e.num().partial(s);
  if (e.den().is_constant()) return RationalExpr(dn, e.den());
  const Polynomial dd = e.den().partial(s);
  return RationalExpr(dn * e.den() - e.num() * dd, e.den() * e.den());
}

namespace {
RationalExpr substitute_poly(const Polynomial& p, const std::map<Symbol, RationalExpr>& values) {
  RationalExpr acc;
  for (const auto& t : p.terms()) {
    RationalExpr term(Polynomial(t.coeff));
    Monomial kept;
    for (int var = 0; var < kVariableCount; ++var) {
      const unsigned e = t.monomial.exponent(var);
      if (e == 0) continue;
      const Symbol s = Symbol::from_index(var);
      auto it = values.find(s);
      if (it == values.end()) {
        kept = kept * Monomial::of(s, e);
      } else {
        term *= it->second.pow(static_cast<int>(e));
      }
    }
    term *= RationalExpr(Polynomial::monomial(kept, 1));
    acc += term;
  }
  return acc;
}
}  // namespace

RationalExpr substitute(const RationalExpr& e, const std::map<Symbol, RationalExpr>& values) {
  return substitute_poly(e.num(), values) / substitute_poly(e.den(), values);
}

mpq_class evaluate(const RationalExpr& e, const PointState<mpq_class>& p) {
  const mpq_class d = e.den().evaluate(p);
  if (d == 0) throw SymbolicError("division by zero at evaluation point");
  mpq_class r = e.num().evaluate(p) / d;
  r.canonicalize();
  return r;
}

double evaluate(const RationalExpr& e, const PointState<double>& p) {
  const double d = e.den().evaluate(p);
  if (d == 0.0) throw SymbolicError("division by zero at evaluation point");
  return e.num().evaluate(p) / d;
}

}  // namespace epme::symbolic
