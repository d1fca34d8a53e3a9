#include <random>

#include <gtest/gtest.h>

#include "spindeq/parser.hpp"

using namespace spindeq;

namespace {

SymbolContext context() {
  SymbolContext ctx;
  ctx.even("q").even("p").odd("c1").odd("c2").odd("c3").constant("k");
  ctx.declare("theta", Parity::Odd, true);
  return ctx;
}

GradedPolynomial P(const std::string& text) {
  static const SymbolContext ctx = context();
  return parse(text, ctx);
}

GradedPolynomial random_polynomial(std::mt19937& rng) {
  static const char* atoms[] = {"q", "p", "c1", "c2", "c3", "k", "theta", "dot(q)", "dot(c1)"};
  std::uniform_int_distribution<int> pick(0, 8), len(0, 3), coeff(-4, 4);
  GradedPolynomial out;
  for (int t = 0; t < 5; ++t) {
    GradedPolynomial term(coeff(rng));
    for (int f = len(rng); f > 0; --f) term = term * P(atoms[pick(rng)]);
    out += term;
  }
  return out;
}

}  // namespace

TEST(GradedPolynomial, OddSymbolsAnticommute) {
  EXPECT_EQ(P("c1") * P("c2"), -(P("c2") * P("c1")));
  EXPECT_TRUE((P("c1") * P("c1")).is_zero());
  EXPECT_EQ(P("q") * P("c1"), P("c1") * P("q"));
}

TEST(GradedPolynomial, ParityAndDegree) {
  EXPECT_EQ(P("c1*c2 + q").parity(), Parity::Even);
  EXPECT_EQ(P("c1*q^2").parity(), Parity::Odd);
  EXPECT_EQ(P("c1 + q").parity(), std::nullopt);
  EXPECT_EQ(P("q^3*c1 + p").degree(), 4u);
}

TEST(TimeDerivative, Examples) {
  EXPECT_EQ(formal_time_derivative(P("q*p")), P("dot(q)*p + q*dot(p)"));
  EXPECT_TRUE(formal_time_derivative(P("k")).is_zero());
  EXPECT_EQ(formal_time_derivative(P("k*theta*c1")), P("k*theta*dot(c1)"));
  EXPECT_EQ(time_derivative(P("q^2"), 2), P("2*dot(q)^2 + 2*q*dot(dot(q))"));
}

TEST(TimeDerivative, EvenDerivationWithoutKoszulSign) {
  // d/dt(c1 c2) = dot(c1) c2 + c1 dot(c2)
  EXPECT_EQ(formal_time_derivative(P("c1*c2")), P("dot(c1)*c2 + c1*dot(c2)"));
}

TEST(PartialDerivative, LeftDerivativeSigns) {
  const SymbolContext ctx = context();
  EXPECT_EQ(partial_derivative(P("c1*c2"), ctx.at("c2")), -P("c1"));
  EXPECT_EQ(partial_derivative(P("c1*c2"), ctx.at("c1")), P("c2"));
  EXPECT_EQ(partial_derivative(P("q^3*p"), ctx.at("q")), P("3*q^2*p"));
}

TEST(Substitute, ParityMismatchRejected) {
  const SymbolContext ctx = context();
  EXPECT_THROW((void)substitute(P("c1"), {{ctx.at("c1"), P("q")}}), SymbolError);
}

TEST(Evaluate, NumericValues) {
  auto v = evaluate(P("2*q*p + i*k"), {{"q", 1.5}, {"p", 2.0}, {"k", 3.0}});
  EXPECT_DOUBLE_EQ(v.real(), 6.0);
  EXPECT_DOUBLE_EQ(v.imag(), 3.0);
  EXPECT_THROW((void)evaluate(P("q"), {}), SymbolError);
}

TEST(ToString, Examples) {
  EXPECT_EQ(to_string(GradedPolynomial()), "0");
  EXPECT_EQ(to_string(P("-q + 1/2")), "1/2 - q");
  EXPECT_EQ(to_string(P("dot(dot(q))")), "dot(dot(q))");
}

class PolynomialProperties : public ::testing::TestWithParam<int> {};

TEST_P(PolynomialProperties, TimeDerivativeIsDerivation) {
  std::mt19937 rng(GetParam());
  GradedPolynomial a = random_polynomial(rng), b = random_polynomial(rng);
  EXPECT_EQ(formal_time_derivative(a * b),
            formal_time_derivative(a) * b + a * formal_time_derivative(b));
}

TEST_P(PolynomialProperties, MultiplicationAssociative) {
  std::mt19937 rng(GetParam());
  GradedPolynomial a = random_polynomial(rng), b = random_polynomial(rng), c = random_polynomial(rng);
  EXPECT_EQ((a * b) * c, a * (b * c));
}

TEST_P(PolynomialProperties, SubstitutionIsHomomorphism) {
  std::mt19937 rng(GetParam());
  const SymbolContext ctx = context();
  GradedPolynomial a = random_polynomial(rng), b = random_polynomial(rng);
  Bindings bind{{ctx.at("q"), P("p + c1*c2")}, {ctx.at("c1"), P("c3*q + theta")}};
  EXPECT_EQ(substitute(a * b, bind), substitute(a, bind) * substitute(b, bind));
}

TEST_P(PolynomialProperties, PrintParseRoundTrip) {
  std::mt19937 rng(GetParam());
  GradedPolynomial a = random_polynomial(rng);
  EXPECT_EQ(P(to_string(a)), a) << to_string(a);
}

INSTANTIATE_TEST_SUITE_P(Seeds, PolynomialProperties, ::testing::Range(1, 13));
