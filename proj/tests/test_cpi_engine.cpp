#include <gtest/gtest.h>

#include "spindeq/cpi_engine.hpp"

using namespace spindeq;

namespace {

const std::complex<double> I(0, 1);

std::string operator_string(const CpiSpec& s) { return to_string(build_cpi_hamiltonian(s).symbolic()); }

CpiError::Kind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const CpiError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no CpiError";
  return CpiError::Kind::BadSpec;
}

}  // namespace

TEST(Operator, CoadjointIsMinusMuBLambdaPhi) {
  EXPECT_EQ(operator_string(coadjoint_spec(1.3)), "-Lambda_phi*muB");
}

TEST(Operator, GrassmannSymbolicForm) {
  EXPECT_EQ(operator_string(grassmann_spec(0.9)),
            "-c_xi*cbar_xi*w + c_xibar*cbar_xibar*w + i*lambda_xi*w*xi - i*lambda_xibar*w*xibar");
}

TEST(Operator, HarmonicOscillator) {
  EXPECT_EQ(operator_string(bosonic_spec("p^2/2+q^2/2")),
            "-i*cbar_p*cq + i*cbar_q*cp - lambda_p*q + lambda_q*p");
}

TEST(Operator, ZeroHamiltonianGivesZeroOperator) {
  CpiOperator op = build_cpi_hamiltonian(bosonic_spec("0"));
  EXPECT_TRUE(op.terms().empty());
  EXPECT_TRUE(op.matrix(0).isZero(0));
}

TEST(Operator, GrassmannMatchesDisplayedDerivativeForm) {
  // -w (d_xi xi - d_xibar xibar - d_c c + d_cbar cbar) acting on every basis monomial
  const double w = 0.9;
  CpiOperator op = build_cpi_hamiltonian(grassmann_spec(w));
  const TablePtr& t = op.table();
  auto g = [&](const char* n) { return CMultivector::generator(t, n); };
  for (const auto& e : op.basis()) {
    CMultivector m = op.monomial(e);
    CMultivector shown = left_derivative(g("xi") * m, "xi") - left_derivative(g("xibar") * m, "xibar") -
                         left_derivative(g("c_xi") * m, "c_xi") + left_derivative(g("c_xibar") * m, "c_xibar");
    shown *= std::complex<double>(-w);
    EXPECT_LT(max_abs_difference(op.apply(0, m), shown), 1e-15);
  }
}

TEST(Operator, GrassmannMonomialEigenvalues) {
  // xi^a xibar^b c^m cbar^n has eigenvalue w (a - b + m - n)
  const double w = 0.7;
  CpiOperator op = build_cpi_hamiltonian(grassmann_spec(w, 2));
  const auto& t = *op.table();
  for (const auto& e : op.basis()) {
    int weight = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const int sign = (t[i].name == "xi" || t[i].name == "c_xi") ? 1 : -1;
      weight += sign * e[i];
    }
    CMultivector m = op.monomial(e);
    EXPECT_LT(max_abs_difference(op.apply(0, m), m * std::complex<double>(w * weight)), 1e-15);
  }
}

TEST(Spectrum, GrassmannIsReal) {
  Spectrum s = spectrum(build_cpi_hamiltonian(grassmann_spec(0.9)));
  EXPECT_TRUE(s.real);
  EXPECT_EQ(s.max_imag, 0);
}

TEST(Spectrum, DilationIsImaginary) {
  Spectrum s = spectrum(build_cpi_hamiltonian(bosonic_spec("alpha*q*p", {{"alpha", 0.5}})));
  EXPECT_FALSE(s.real);
  EXPECT_GT(s.max_imag, 0);
}

TEST(Evolve, FourierModesPickUpPhase) {
  const double mu_b = 1.3, t = 0.8;
  CpiOperator op = build_cpi_hamiltonian(coadjoint_spec(mu_b));
  EnlargedWavefunction psi{op.table(), {}};
  CMultivector one = op.monomial(Exponents(op.table()->size(), 0));
  for (int k : {-3, 0, 2}) psi.add(k, one);
  EnlargedWavefunction out = evolve(psi, op, t);
  for (int k : {-3, 0, 2}) {
    EXPECT_LT(max_abs_difference(out.mode(k), one * std::exp(I * (k * mu_b * t))), 1e-15) << k;
  }
}

TEST(Evolve, ZeroTimeIsIdentity) {
  CpiOperator op = build_cpi_hamiltonian(bosonic_spec("p^2/2+q^2/2"));
  EnlargedWavefunction psi{op.table(), {}};
  psi.add(0, CMultivector::generator(op.table(), "q") + CMultivector::generator(op.table(), "cp", I));
  EXPECT_EQ(max_abs_difference(evolve(psi, op, 0), psi), 0);
}

TEST(Evolve, HarmonicRotatesPhaseSpace) {
  // psi = q transports to q cos t - p sin t
  CpiOperator op = build_cpi_hamiltonian(bosonic_spec("p^2/2+q^2/2"));
  const TablePtr& tb = op.table();
  EnlargedWavefunction psi{tb, {}};
  psi.add(0, CMultivector::generator(tb, "q"));
  const double t = 0.6;
  CMultivector expected =
      CMultivector::generator(tb, "q", std::cos(t)) - CMultivector::generator(tb, "p", std::sin(t));
  EXPECT_LT(max_abs_difference(evolve(psi, op, t).mode(0), expected), 1e-12);
}

TEST(Flow, GrassmannRotatesFieldsAndGhosts) {
  const double w = 0.9, t = 1.7;
  LinearFlow flow = classical_flow(grassmann_spec(w));
  Eigen::VectorXcd y = flow.solve(Eigen::VectorXcd::Ones(4), t);
  EXPECT_LT(std::abs(y(flow.index_of("xi")) - std::exp(I * w * t)), 1e-14);
  EXPECT_LT(std::abs(y(flow.index_of("xibar")) - std::exp(-I * w * t)), 1e-14);
  auto c = jacobi_fields(grassmann_spec(w), {1.0, 1.0}, t);
  EXPECT_LT(std::abs(c[0] - std::exp(I * w * t)), 1e-14);
  EXPECT_LT(std::abs(c[1] - std::exp(-I * w * t)), 1e-14);
}

TEST(Flow, CoadjointAngleDriftsAndGhostsStay) {
  LinearFlow flow = classical_flow(coadjoint_spec(1.3));
  EXPECT_TRUE(flow.K.isZero(0));
  EXPECT_EQ(flow.f(flow.index_of("phi")), std::complex<double>(-1.3));
  EXPECT_EQ(flow.f(flow.index_of("eta")), std::complex<double>(0));
  auto c = jacobi_fields(coadjoint_spec(1.3), {0.25, -2.0}, 5.0);
  EXPECT_EQ(c[0], std::complex<double>(0.25));
  EXPECT_EQ(c[1], std::complex<double>(-2.0));
  EXPECT_THROW(jacobi_fields(coadjoint_spec(1.3), {1.0}, 1.0), std::invalid_argument);
}

class Characteristics : public ::testing::TestWithParam<int> {};

TEST_P(Characteristics, AllCasesPass) {
  const std::uint64_t seed = static_cast<std::uint64_t>(GetParam());
  for (const CpiSpec& spec : {coadjoint_spec(1.3), grassmann_spec(0.9), bosonic_spec("p^2/2+q^2/2"),
                              bosonic_spec("p^2/2"), bosonic_spec("alpha*q*p", {{"alpha", 0.4}})}) {
    CharacteristicsReport rep = characteristics_check(spec, 0.75, seed);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " residual " << c.residual;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, Characteristics, ::testing::Values(1, 7, 42));

TEST(Characteristics, CoadjointPhasesAreMinusMuBK) {
  CharacteristicsReport rep = characteristics_check(coadjoint_spec(2.0), 0.3);
  ASSERT_FALSE(rep.phases.empty());
  for (const auto& ph : rep.phases) {
    EXPECT_EQ(ph.eigenvalue, std::complex<double>(-2.0 * ph.mode));
    EXPECT_LE(ph.residual, 1e-12);
  }
}

TEST(Errors, NonlinearHamiltonianUnsupported) {
  CpiSpec spec = bosonic_spec("p^2/2+q^4/4");
  EXPECT_EQ(error_kind([&] { classical_flow(spec); }), CpiError::Kind::Unsupported);
  EXPECT_EQ(error_kind([&] {
              CpiOperator op = build_cpi_hamiltonian(spec);
              EnlargedWavefunction w{op.table(), {}};
              w.add(0, CMultivector::generator(op.table(), "q", 1.0) * CMultivector::generator(op.table(), "q"));
              evolve(w, op, 0.1);
            }),
            CpiError::Kind::Unsupported);
}

TEST(Errors, BadSpecs) {
  CpiSpec s = grassmann_spec(1.0);
  s.omega = {{{0, 2}, {-1, 0}}};
  EXPECT_EQ(error_kind([&] { build_cpi_hamiltonian(s); }), CpiError::Kind::BadSpec);
  CpiSpec c = coadjoint_spec(1.0);
  c.omega = {{{0, -1}, {1, 0}}};
  EXPECT_EQ(error_kind([&] { build_cpi_hamiltonian(c); }), CpiError::Kind::BadSpec);
  EXPECT_EQ(error_kind([&] { build_cpi_hamiltonian(grassmann_spec(1.0, 0)); }), CpiError::Kind::BadSpec);
  EXPECT_EQ(error_kind([&] { build_cpi_hamiltonian(bosonic_spec("alpha*q*p")); }), CpiError::Kind::BadSpec);
}

TEST(Errors, AngleMultiplicationUnsupported) {
  CaseModel m = standard_case(Case::Coadjoint);
  CpiSpec s{Case::Coadjoint, parse("muB*phi*eta", m.symbols), {{"muB", 1.0}}, 4, {{{0, 1}, {-1, 0}}}};
  EXPECT_EQ(error_kind([&] { build_cpi_hamiltonian(s); }), CpiError::Kind::Unsupported);
}

TEST(Errors, FourierModesOnlyOnOrbit) {
  CpiOperator op = build_cpi_hamiltonian(grassmann_spec(1.0));
  EnlargedWavefunction w{op.table(), {}};
  w.add(2, op.monomial(op.basis().front()));
  EXPECT_EQ(error_kind([&] { evolve(w, op, 0.1); }), CpiError::Kind::BadSpec);
}
