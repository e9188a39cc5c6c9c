#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "epme/linalg/bareiss.hpp"
#include "epme/symbolic/matrix.hpp"
#include "epme/symbolic/parser.hpp"
#include "epme/symbolic/sampling.hpp"

using namespace epme::symbolic;

namespace {

RationalExpr R(const char* text, int max_order = kDefaultMaxOrder) { return parse_rational(text, max_order); }

PointState<mpq_class> point_123_456() {
  return PointState<mpq_class>::from_uv({1, 2, 3}, {4, 5, 6});
}

// Small random ASTs over u1..v3 and their first derivatives.
class AstGenerator {
 public:
  explicit AstGenerator(std::uint64_t seed) : rng_(seed) {}

  ExprAst operator()(int depth) {
    const int pick = static_cast<int>(rng_() % (depth <= 0 ? 2 : 8));
    switch (pick) {
      case 0: return ast::constant(mpq_class(static_cast<long>(rng_() % 7) - 3, 1 + rng_() % 3));
      case 1: return ast::symbol(Symbol{static_cast<Base>(rng_() % 6), static_cast<int>(rng_() % 2)});
      case 2: return ast::add((*this)(depth - 1), (*this)(depth - 1));
      case 3: return ast::sub((*this)(depth - 1), (*this)(depth - 1));
      case 4:
      case 5: return ast::mul((*this)(depth - 1), (*this)(depth - 1));
      case 6: return ast::div((*this)(depth - 1), ast::symbol(Symbol{static_cast<Base>(rng_() % 6), 0}));
      default: return ast::pow((*this)(depth - 1), static_cast<int>(rng_() % 5) - 2);
    }
  }

 private:
  std::mt19937_64 rng_;
};

// Cubic coordinate paths x_b(t) = a0 + a1 t + a2 t^2 + a3 t^3 with their exact jets.
struct CubicPath {
  std::array<std::array<double, 4>, 6> coeff;

  PointState<double> at(double t, int max_order) const {
    PointState<double> p(max_order);
    for (int b = 0; b < 6; ++b) {
      const auto& a = coeff[static_cast<std::size_t>(b)];
      const double values[3] = {a[0] + t * (a[1] + t * (a[2] + t * a[3])), a[1] + t * (2 * a[2] + 3 * t * a[3]),
                                2 * a[2] + 6 * t * a[3]};
      for (int k = 0; k <= max_order; ++k) p.set(Symbol{static_cast<Base>(b), k}, values[k]);
    }
    return p;
  }
};

}  // namespace

TEST(Parser, ProductOfTwoSymbols) { EXPECT_EQ(ast::to_sexpr(parse("u1*v2")), "(* u1 v2)"); }

TEST(Parser, DerivativeEntryOfHPrime) {
  EXPECT_EQ(ast::to_sexpr(parse("u1'/v3 - u1*v3'/v3^2")), "(- (/ u1' v3) (/ (* u1 v3') (^ v3 2)))");
}

TEST(Parser, DerivativeSuffix) {
  const ExprAst e = parse("u1''");
  ASSERT_EQ(e->kind, ExprNode::Kind::Symbol);
  EXPECT_EQ(e->symbol, u(1, 2));
}

TEST(Parser, PrecedenceAndWhitespace) {
  EXPECT_EQ(ast::to_sexpr(parse(" -u1 ^ 2 + 3*v1/ v2 ")), "(+ (neg (^ u1 2)) (/ (* 3 v1) v2))");
  EXPECT_EQ(ast::to_sexpr(parse("u1-u2-u3")), "(- (- u1 u2) u3)");
  EXPECT_EQ(ast::to_sexpr(parse("u1/u2/u3")), "(/ (/ u1 u2) u3)");
  EXPECT_EQ(ast::to_sexpr(parse("u1^(-2)")), "(^ u1 -2)");
  EXPECT_EQ(ast::to_sexpr(parse("0.25*u1")), "(* 1/4 u1)");
}

TEST(Parser, ErrorsCarryByteOffsets) {
  auto offset_of = [](const char* text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    ADD_FAILURE() << "no error for " << text;
    return 0;
  };
  EXPECT_EQ(offset_of("u1 + w2"), 5u);
  EXPECT_EQ(offset_of("u1^1.5"), 3u);
  EXPECT_EQ(offset_of("u1^v1"), 3u);
  EXPECT_EQ(offset_of("(u1 + v1"), 8u);
  EXPECT_EQ(offset_of("u1 + * v1"), 5u);
  EXPECT_EQ(offset_of("u1 v1"), 3u);
  EXPECT_EQ(offset_of("u4"), 0u);
  EXPECT_EQ(offset_of("u1'''"), 0u);
  EXPECT_EQ(offset_of(""), 0u);
}

TEST(Parser, MessagesNameTheProblem) {
  EXPECT_THROW(
      {
        try {
          parse("u1 + x");
        } catch (const ParseError& e) {
          EXPECT_NE(std::string(e.what()).find("unknown identifier 'x'"), std::string::npos);
          throw;
        }
      },
      ParseError);
  EXPECT_THROW(
      {
        try {
          parse("u1^0.5");
        } catch (const ParseError& e) {
          EXPECT_NE(std::string(e.what()).find("non-integer exponent"), std::string::npos);
          throw;
        }
      },
      ParseError);
}

TEST(Parser, ThirdOrderNeedsConfiguration) {
  EXPECT_THROW(parse("u1'''"), ParseError);
  EXPECT_EQ(parse("u1'''", 3)->symbol, u(1, 3));
}

TEST(Canonicalize, CommonFactorCancels) {
  const RationalExpr e = R("(u1*v1)/(v1)");
  EXPECT_EQ(e.to_string(), "u1/1");
  EXPECT_TRUE(equals(e, R("u1")));
}

TEST(Canonicalize, CancellationToZero) {
  const RationalExpr e = R("u1/u2 - u1/u2");
  EXPECT_TRUE(e.is_zero());
  EXPECT_EQ(e.to_string(), "0/1");
}

TEST(Canonicalize, BinomialExpansion) { EXPECT_EQ(R("(u1+v1)^2").to_string(), "(u1^2 + 2*u1*v1 + v1^2)/1"); }

TEST(Canonicalize, DenominatorSignIsPositive) {
  const RationalExpr e = R("u1/(-u2 - v1)");
  EXPECT_GT(e.den().leading().coeff, 0);
  EXPECT_EQ(e.to_string(), "-u1/(u2 + v1)");
}

TEST(Canonicalize, ZeroDenominatorIsAnError) {
  EXPECT_THROW(R("u1/(u2 - u2)"), SymbolicError);
  EXPECT_THROW(R("(u1 - u1)^(-1)"), SymbolicError);
}

TEST(Canonicalize, ExactRationalCoefficients) {
  EXPECT_TRUE(equals(R("u1/2 + u1/3"), R("5*u1/6")));
  EXPECT_TRUE(equals(R("0.1*u1"), R("u1/10")));
}

TEST(Equals, CrossMultiplication) {
  EXPECT_TRUE(equals(R("u1/u2"), R("(u1*v3)/(u2*v3)")));
  EXPECT_FALSE(equals(R("u1"), R("u1'")));
  EXPECT_TRUE(equals(R("(u1^2 - v1^2)/(u1 - v1)"), R("u1 + v1")));
  EXPECT_TRUE(equals(R("1/(u1 + v1) + 1/(u1 - v1)"), R("2*u1/(u1^2 - v1^2)")));
}

TEST(Differentiate, QuotientPattern) {
  EXPECT_TRUE(equals(differentiate_t(R("u1/u2")), R("u1'/u2 - u1*u2'/u2^2")));
}

TEST(Differentiate, ConstantAndProduct) {
  EXPECT_TRUE(differentiate_t(R("7/3")).is_zero());
  EXPECT_TRUE(equals(differentiate_t(R("u1*v1")), R("u1'*v1 + u1*v1'")));
}

TEST(Differentiate, OrderOverflow) {
  EXPECT_THROW(differentiate_t(R("u1''")), SymbolicError);
  EXPECT_TRUE(equals(differentiate_t(R("u1''", 3), 3), R("u1'''", 3)));
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(R("u1/v3"), ones_point()), 1);
  EXPECT_EQ(evaluate(R("u1/v1"), point_123_456()), mpq_class(1, 4));
  EXPECT_EQ(evaluate(R("2"), point_123_456()), 2);
}

TEST(Evaluate, Errors) {
  const auto p = PointState<mpq_class>::from_uv({1, 1, 1}, {1, 0, 1});
  EXPECT_THROW(evaluate(R("u1/v2"), p), SymbolicError);
  EXPECT_THROW(evaluate(R("u1'"), p), SymbolicError);
}

TEST(Evaluate, DoubleModeMatchesExact) {
  std::mt19937_64 rng(7);
  const RationalExpr e = R("(u1*v2' - 3*u3)/(v1^2 + u2*v3)");
  for (int i = 0; i < 20; ++i) {
    const auto p = random_point(rng, 1);
    EXPECT_NEAR(evaluate(e, to_double(p)), evaluate(e, p).get_d(), 1e-12 * (1 + std::abs(evaluate(e, p).get_d())));
  }
}

TEST(Property, PrintParseRoundTrip) {
  AstGenerator gen(11);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    RationalExpr e;
    try {
      e = canonicalize(gen(4));
    } catch (const SymbolicError&) {
      continue;
    }
    const RationalExpr back = parse_rational(e.to_string());
    EXPECT_TRUE(back.same_form(e)) << e.to_string() << " vs " << back.to_string();
    EXPECT_TRUE(equals(back, e));
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Property, InfixRenderingReparsesToSameFunction) {
  AstGenerator gen(12);
  for (int i = 0; i < 200; ++i) {
    const ExprAst a = gen(4);
    RationalExpr e;
    try {
      e = canonicalize(a);
    } catch (const SymbolicError&) {
      continue;
    }
    EXPECT_TRUE(equals(parse_rational(ast::to_infix(a)), e)) << ast::to_infix(a);
  }
}

TEST(Property, EqualsImpliesEqualValues) {
  AstGenerator gen(13);
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    RationalExpr a, b;
    try {
      a = canonicalize(gen(3));
      b = canonicalize(gen(3));
    } catch (const SymbolicError&) {
      continue;
    }
    // a*b/b is a different form of a; a+b-b likewise.
    if (b.is_zero()) continue;
    const RationalExpr a2 = a * b / b;
    const RationalExpr a3 = (a + b) - b;
    ASSERT_TRUE(equals(a, a2));
    ASSERT_TRUE(equals(a2, a3));
    ASSERT_TRUE(equals(a3, a));
    for (int k = 0; k < 5; ++k) {
      const auto p = random_point(rng, 1);
      try {
        const mpq_class va = evaluate(a, p);
        EXPECT_EQ(va, evaluate(a2, p));
        EXPECT_EQ(va, evaluate(a3, p));
      } catch (const SymbolicError&) {
      }
    }
  }
}

TEST(Property, DifferentiateMatchesFiniteDifferences) {
  AstGenerator gen(21);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> coef(0.5, 2.0);
  const double h = 1e-6;
  int checked = 0;
  for (int i = 0; i < 200 && checked < 100; ++i) {
    RationalExpr e;
    try {
      e = canonicalize(gen(3));
    } catch (const SymbolicError&) {
      continue;
    }
    CubicPath path;
    for (auto& c : path.coeff)
      for (auto& x : c) x = coef(rng);
    const RationalExpr de = differentiate_t(e);
    const double t = 0.3;
    double exact, fd;
    try {
      exact = evaluate(de, path.at(t, 2));
      fd = (evaluate(e, path.at(t + h, 1)) - evaluate(e, path.at(t - h, 1))) / (2 * h);
    } catch (const SymbolicError&) {
      continue;
    }
    const double scale = std::max({1.0, std::abs(exact), std::abs(evaluate(e, path.at(t, 1)))});
    EXPECT_NEAR(fd, exact, 1e-6 * scale) << e.to_string();
    ++checked;
  }
  EXPECT_GE(checked, 100);
}

TEST(Property, DifferentiateIsLinearAndLeibniz) {
  AstGenerator gen(31);
  for (int i = 0; i < 60; ++i) {
    RationalExpr a, b;
    try {
      a = canonicalize(gen(3));
      b = canonicalize(gen(3));
    } catch (const SymbolicError&) {
      continue;
    }
    const RationalExpr da = differentiate_t(a), db = differentiate_t(b);
    EXPECT_TRUE(equals(differentiate_t(a + RationalExpr(3L) * b), da + RationalExpr(3L) * db));
    EXPECT_TRUE(equals(differentiate_t(a * b), da * b + a * db));
    if (!b.is_zero()) {
      EXPECT_TRUE(equals(differentiate_t(a / b), (da * b - a * db) / (b * b)));
    }
  }
}

TEST(SymbolicMatrix, RankAndDeterminant) {
  ExprMatrix m(3, 3);
  const char* entries[9] = {"u1", "u2", "u3", "v1", "v2", "v3", "u1 + v1", "u2 + v2", "u3 + v3"};
  for (int k = 0; k < 9; ++k) m(static_cast<std::size_t>(k / 3), static_cast<std::size_t>(k % 3)) = R(entries[k]);
  EXPECT_EQ(symbolic_rank(m), 2u);
  EXPECT_TRUE(symbolic_determinant(m).is_zero());
  m(2, 2) = R("1/u3");
  EXPECT_EQ(symbolic_rank(m), 3u);
  const RationalExpr det = symbolic_determinant(m);
  const auto p = point_123_456();
  EXPECT_EQ(evaluate(det, p), epme::linalg::determinant(evaluate(m, p)));
}

TEST(Sampling, CoordinatesStayInRange) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const mpq_class x = random_coordinate(rng);
    EXPECT_GE(abs(x), mpq_class(1, 10));
    EXPECT_LE(abs(x), 10);
  }
}
