#include <gtest/gtest.h>

#include "spindeq/parser.hpp"
#include "spindeq/superfield.hpp"

using namespace spindeq;

namespace {

SymbolContext context() {
  SymbolContext ctx;
  ctx.even("q").even("p").odd("xi").odd("xibar").constant("w");
  return ctx;
}

ParseError::Kind error_kind(const std::string& text) {
  try {
    (void)parse(text, context());
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ParseError::Kind::Syntax;
}

}  // namespace

TEST(Parser, PrecedenceAndPowers) {
  const auto ctx = context();
  EXPECT_EQ(parse("2 + 3*q^2", ctx), GradedPolynomial(2) + ctx("q").pow(2) * ExactComplex(3));
  EXPECT_EQ(parse("-q^2", ctx), -ctx("q").pow(2));
  EXPECT_EQ(parse("(q + p)^2", ctx), parse("q^2 + 2*q*p + p^2", ctx));
  EXPECT_EQ(parse("q^0", ctx), GradedPolynomial(1));
}

TEST(Parser, ExactDecimalsAndDivision) {
  const auto ctx = context();
  EXPECT_EQ(parse("0.25*q", ctx), ctx("q") * ExactComplex(Rational(1, 4)));
  EXPECT_EQ(parse("q^4/4", ctx), parse("0.25*q^4", ctx));
  EXPECT_EQ(parse("q/(2*i)", ctx), ctx("q") * ExactComplex(0, Rational(-1, 2)));
}

TEST(Parser, ImaginaryUnitAndOddSymbols) {
  const auto ctx = context();
  GradedPolynomial p = parse("i*xibar*xi", ctx);
  EXPECT_EQ(p, ctx("xi") * ctx("xibar") * ExactComplex(0, -1));
  EXPECT_EQ(p.parity(), Parity::Even);
}

TEST(Parser, DotIsFormalTimeDerivative) {
  const auto ctx = context();
  EXPECT_EQ(parse("dot(q*p)", ctx), parse("dot(q)*p + q*dot(p)", ctx));
  EXPECT_TRUE(parse("dot(w)", ctx).is_zero());
  EXPECT_EQ(to_string(parse("dot(dot(q))", ctx)), "dot(dot(q))");
}

TEST(Parser, Errors) {
  EXPECT_EQ(error_kind("q + r"), ParseError::Kind::UnknownSymbol);
  EXPECT_EQ(error_kind("xi*xi"), ParseError::Kind::OddSquared);
  EXPECT_EQ(error_kind("xi^2"), ParseError::Kind::OddSquared);
  EXPECT_EQ(error_kind("q/p"), ParseError::Kind::BadDivision);
  EXPECT_EQ(error_kind("q/0"), ParseError::Kind::BadDivision);
  EXPECT_EQ(error_kind("(q"), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind("q +"), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind("3 q"), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind("q^"), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind("1."), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind(""), ParseError::Kind::Syntax);
}

TEST(Parser, ErrorPositionPointsAtOffendingToken) {
  try {
    (void)parse("q + rr", context());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(SymbolContext, ReservedNamesAndRedeclaration) {
  SymbolContext ctx;
  EXPECT_THROW(ctx.even("i"), std::invalid_argument);
  EXPECT_THROW(ctx.even("dot"), std::invalid_argument);
  ctx.even("q");
  EXPECT_NO_THROW(ctx.even("q"));
  EXPECT_THROW(ctx.odd("q"), SymbolError);
}

TEST(Parser, BuiltinLagrangiansRoundTrip) {
  for (Case c : {Case::Bosonic, Case::Grassmann, Case::Coadjoint}) {
    CaseModel m = standard_case(c);
    for (const auto& name : builtin_names(c)) {
      GradedPolynomial l = builtin_lagrangian(c, name, m);
      EXPECT_EQ(parse(to_string(l), m.symbols), l) << name;
    }
  }
}
