#include <random>

#include <gtest/gtest.h>

#include "spindeq/superfield.hpp"

using namespace spindeq;

namespace {

GradedPolynomial expansion_of(const CaseModel& m, const std::string& base) {
  return m.superfield_of(m.symbols.at(base));
}

}  // namespace

TEST(Superfields, BosonicComponents) {
  CaseModel m = standard_case(Case::Bosonic);
  EXPECT_EQ(expansion_of(m, "q"), parse("q + theta*cq + thetabar*cbar_p + i*thetabar*theta*lambda_p", m.symbols));
  EXPECT_EQ(expansion_of(m, "p"), parse("p + theta*cp - thetabar*cbar_q - i*thetabar*theta*lambda_q", m.symbols));
}

TEST(Superfields, GrassmannComponents) {
  CaseModel m = standard_case(Case::Grassmann);
  EXPECT_EQ(expansion_of(m, "xi"),
            parse("xi + theta*c_xi - i*thetabar*cbar_xibar - thetabar*theta*lambda_xibar", m.symbols));
  EXPECT_EQ(expansion_of(m, "xibar"),
            parse("xibar + theta*c_xibar - i*thetabar*cbar_xi - thetabar*theta*lambda_xi", m.symbols));
  for (const auto& sf : m.superfields) EXPECT_EQ(sf.expansion(m.theta, m.thetabar).parity(), Parity::Odd);
}

TEST(Superfields, CoadjointComponentsUseChi) {
  CaseModel m = standard_case(Case::Coadjoint);
  EXPECT_EQ(expansion_of(m, "phi"), parse("phi + chi*c_phi + chibar*cbar_eta + i*chibar*chi*Lambda_eta", m.symbols));
  EXPECT_EQ(expansion_of(m, "eta"), parse("eta + chi*c_eta - chibar*cbar_phi - i*chibar*chi*Lambda_phi", m.symbols));
}

TEST(Superfields, ZeroComponentsGiveBaseField) {
  for (Case c : {Case::Bosonic, Case::Grassmann, Case::Coadjoint}) {
    CaseModel m = standard_case(c);
    for (const auto& sf : m.superfields) {
      Superfield bare{sf.base, {GradedPolynomial::symbol(sf.base), {}, {}, {}}};
      EXPECT_EQ(bare.expansion(m.theta, m.thetabar), GradedPolynomial::symbol(sf.base));
    }
  }
}

TEST(Superfields, WrongComponentParityRejected) {
  CaseModel m = standard_case(Case::Bosonic);
  Superfield bad = m.superfields[0];
  bad.components[1] = m("p");  // the theta component must be odd
  EXPECT_THROW(bad.validate(), SymbolError);
}

TEST(ComposeObservable, Examples) {
  CaseModel m = standard_case(Case::Coadjoint);
  EXPECT_EQ(compose_observable(m("eta"), m),
            parse("eta + chi*c_eta - chibar*cbar_phi - i*chibar*chi*Lambda_phi", m.symbols));
  EXPECT_EQ(compose_observable(GradedPolynomial(1), m), GradedPolynomial(1));
}

TEST(ComposeObservable, SquareOfQ) {
  CaseModel m = standard_case(Case::Bosonic);
  GradedPolynomial q2 = compose_observable(parse("q^2", m.symbols), m);
  EXPECT_EQ(q2, compose_observable_taylor(parse("q^2", m.symbols), m));
  // q^2 + 2q theta cq + 2q thetabar cbar_p + thetabar theta (2i q lambda_p + 2 cq cbar_p)
  EXPECT_EQ(q2, parse("q^2 + 2*q*theta*cq + 2*q*thetabar*cbar_p + thetabar*theta*(2*i*q*lambda_p + 2*cq*cbar_p)",
                      m.symbols));
}

class TaylorRoute : public ::testing::TestWithParam<int> {};

TEST_P(TaylorRoute, AgreesWithSubstitutionUpToDegreeFour) {
  std::mt19937 rng(GetParam());
  std::uniform_int_distribution<int> coeff(-5, 5);
  struct Setup {
    Case kind;
    const char* a;
    const char* b;
  };
  for (Setup s : {Setup{Case::Bosonic, "q", "p"}, Setup{Case::Coadjoint, "phi", "eta"},
                  Setup{Case::Grassmann, "xi", "xibar"}}) {
    CaseModel m = standard_case(s.kind);
    GradedPolynomial h;
    for (int i = 0; i <= 4; ++i) {
      for (int j = 0; i + j <= 4; ++j) {
        h += m(s.a).pow(i) * m(s.b).pow(j) * ExactComplex(coeff(rng));
      }
    }
    EXPECT_EQ(compose_observable(h, m), compose_observable_taylor(h, m)) << case_name(s.kind);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, TaylorRoute, ::testing::Range(1, 6));

TEST(SupertimeIntegral, Coefficients) {
  CaseModel m = standard_case(Case::Bosonic);
  EXPECT_TRUE(supertime_integral(m("q"), m).is_zero());
  EXPECT_TRUE(supertime_integral(parse("theta*q", m.symbols), m).is_zero());
  EXPECT_TRUE(supertime_integral(parse("thetabar*q", m.symbols), m).is_zero());
  EXPECT_EQ(supertime_integral(parse("thetabar*theta*q", m.symbols), m), parse("i*q", m.symbols));
  EXPECT_EQ(supertime_integral(parse("thetabar*theta*q", m.symbols), m, true), parse("i*hbar*q", m.symbols));
}

class BosonicIdentity : public ::testing::TestWithParam<const char*> {};

TEST_P(BosonicIdentity, ResidualIsExactlyZero) {
  CaseModel m = standard_case(Case::Bosonic);
  DequantizationCheck chk = verify_dequantization(builtin_lagrangian(Case::Bosonic, GetParam(), m), m);
  EXPECT_TRUE(chk.passed()) << to_string(chk.total_residual);
  EXPECT_EQ(chk.result.surface_term, -formal_time_derivative(parse("lambda_p*p + i*cbar_p*cp", m.symbols)));
}

INSTANTIATE_TEST_SUITE_P(Builtins, BosonicIdentity,
                         ::testing::Values("free", "harmonic", "anharmonic", "quartic", "dilation"));

TEST(Dequantization, HarmonicCpiLagrangianExplicit) {
  CaseModel m = standard_case(Case::Bosonic);
  Dequantization d = dequantize(builtin_lagrangian(Case::Bosonic, "harmonic", m), m);
  EXPECT_EQ(d.cpi_lagrangian,
            parse("lambda_q*dot(q) + lambda_p*dot(p) + i*cbar_q*dot(cq) + i*cbar_p*dot(cp)"
                  " - lambda_q*p + lambda_p*q - i*cbar_q*cp + i*cbar_p*cq",
                  m.symbols));
}

TEST(Dequantization, GrassmannIdentity) {
  CaseModel m = standard_case(Case::Grassmann);
  DequantizationCheck chk = verify_dequantization(builtin_lagrangian(Case::Grassmann, "pauli-z", m), m);
  EXPECT_TRUE(chk.passed()) << to_string(chk.total_residual);
  EXPECT_EQ(chk.result.surface_term,
            -formal_time_derivative(parse("lambda_xibar*xibar + i*cbar_xibar*c_xibar", m.symbols)));
  EXPECT_EQ(chk.hamiltonian, parse("-w/2 + w*xi*xibar", m.symbols));
}

TEST(Dequantization, CoadjointIdentityAndGammaTerm) {
  CaseModel m = standard_case(Case::Coadjoint);
  DequantizationCheck plain = verify_dequantization(builtin_lagrangian(Case::Coadjoint, "precession", m), m);
  EXPECT_TRUE(plain.passed());
  DequantizationCheck shifted =
      verify_dequantization(builtin_lagrangian(Case::Coadjoint, "precession-gamma", m), m);
  EXPECT_TRUE(shifted.passed());
  EXPECT_EQ(shifted.result.raw - plain.result.raw, -formal_time_derivative(parse("gamma*Lambda_eta", m.symbols)));
  EXPECT_EQ(shifted.result.cpi_lagrangian, plain.result.cpi_lagrangian);
}

TEST(Dequantization, HamiltonianToLiouvillian) {
  CaseModel m = standard_case(Case::Coadjoint);
  GradedPolynomial h = parse("-muB*eta", m.symbols);
  EXPECT_EQ(supertime_integral(compose_observable(h, m), m), parse("-muB*Lambda_phi", m.symbols));
}

TEST(Dequantization, UnsupportedKineticTermRejected) {
  CaseModel m = standard_case(Case::Bosonic);
  EXPECT_THROW(verify_dequantization(parse("p*dot(q) + q*dot(p)", m.symbols), m), std::invalid_argument);
}

TEST(Dequantization, NonBilinearBoundaryTermIsReported) {
  CaseModel m = standard_case(Case::Bosonic);
  EXPECT_THROW(dequantize(parse("q^2*p*dot(q)", m.symbols), m), IdentityViolation);
}

TEST(Dequantization, GrassmannHamiltonianShapeEnforced) {
  CaseModel m = standard_case(Case::Grassmann);
  EXPECT_THROW(grassmann_cpi_lagrangian(parse("w*xi*xibar + xi*c_xi", m.symbols), m), std::invalid_argument);
}

TEST(Cases, NamesRoundTrip) {
  for (Case c : {Case::Bosonic, Case::Grassmann, Case::Coadjoint}) EXPECT_EQ(parse_case(case_name(c)), c);
  EXPECT_THROW(parse_case("fermionic"), std::invalid_argument);
}
