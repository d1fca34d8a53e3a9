#pragma once

// The two-sphere as a coadjoint orbit of SO(3): Darboux chart (phi, eta = lambda cos theta),
// constraint analysis in (theta, phi, p_theta, p_phi), precession in a magnetic field.

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "spindeq/check.hpp"

namespace spindeq {

class OrbitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Phase-space point (theta, phi, p_theta, p_phi); phi is kept unwrapped.
struct OrbitState {
  double theta = M_PI / 2;
  double phi = 0;
  double lambda_radius = 1;
  double p_theta = 0;
  double p_phi = 0;

  /// Point on the constraint surface p_theta = 0, p_phi = lambda cos(theta).
  static OrbitState on_shell(double theta, double phi, double lambda = 1) {
    return {theta, phi, lambda, 0, lambda * std::cos(theta)};
  }

  std::array<double, 3> embedding() const {
    const double l = lambda_radius;
    return {l * std::sin(theta) * std::cos(phi), l * std::sin(theta) * std::sin(phi), l * std::cos(theta)};
  }
  double eta() const { return lambda_radius * std::cos(theta); }
  double wrapped_phi() const {
    double w = std::fmod(phi, 2 * M_PI);
    return w < 0 ? w + 2 * M_PI : w;
  }
};

/// Coordinates in the order (theta, phi, p_theta, p_phi).
using PhasePoint = std::array<double, 4>;

inline PhasePoint phase_point(const OrbitState& s) { return {s.theta, s.phi, s.p_theta, s.p_phi}; }

struct ScalarFunction {
  std::string name;
  std::function<double(const PhasePoint&)> value;
  std::function<PhasePoint(const PhasePoint&)> gradient;  // empty: finite differences
};

/// Central differences at h and h/2 combined by Richardson extrapolation.
inline PhasePoint numeric_gradient(const std::function<double(const PhasePoint&)>& f, const PhasePoint& x,
                                   double h = 1e-6) {
  PhasePoint g{};
  for (std::size_t i = 0; i < 4; ++i) {
    auto central = [&](double step) {
      PhasePoint a = x, b = x;
      a[i] += step;
      b[i] -= step;
      return (f(a) - f(b)) / (2 * step);
    };
    g[i] = (4 * central(h / 2) - central(h)) / 3;
  }
  return g;
}

inline PhasePoint gradient(const ScalarFunction& f, const PhasePoint& x) {
  return f.gradient ? f.gradient(x) : numeric_gradient(f.value, x);
}

inline double poisson_bracket(const ScalarFunction& f, const ScalarFunction& g, const OrbitState& at) {
  const PhasePoint x = phase_point(at);
  const PhasePoint a = gradient(f, x), b = gradient(g, x);
  return a[0] * b[2] - a[2] * b[0] + a[1] * b[3] - a[3] * b[1];
}

namespace functions {

inline ScalarFunction coordinate(std::size_t i) {
  static const char* names[] = {"theta", "phi", "p_theta", "p_phi"};
  return {names[i], [i](const PhasePoint& x) { return x[i]; },
          [i](const PhasePoint&) {
            PhasePoint g{};
            g[i] = 1;
            return g;
          }};
}

inline ScalarFunction lambda_cos_theta(double lambda) {
  return {"lambda*cos(theta)", [lambda](const PhasePoint& x) { return lambda * std::cos(x[0]); },
          [lambda](const PhasePoint& x) { return PhasePoint{-lambda * std::sin(x[0]), 0, 0, 0}; }};
}

/// x^1, x^2, x^3 of the embedding (alpha = 0, 1, 2).
inline ScalarFunction embedding(std::size_t alpha, double lambda) {
  return {"x" + std::to_string(alpha + 1),
          [alpha, lambda](const PhasePoint& x) {
            const double s = std::sin(x[0]), c = std::cos(x[0]);
            const double v[3] = {s * std::cos(x[1]), s * std::sin(x[1]), c};
            return lambda * v[alpha];
          },
          [alpha, lambda](const PhasePoint& x) {
            const double s = std::sin(x[0]), c = std::cos(x[0]);
            const double cp = std::cos(x[1]), sp = std::sin(x[1]);
            const double dtheta[3] = {c * cp, c * sp, -s};
            const double dphi[3] = {-s * sp, s * cp, 0};
            return PhasePoint{lambda * dtheta[alpha], lambda * dphi[alpha], 0, 0};
          }};
}

}  // namespace functions

/// Primary constraints Phi1 = p_theta, Phi2 = p_phi - lambda cos(theta).
struct ConstraintSystem {
  double lambda = 1;
  double pole_guard = 1e-6;

  std::array<ScalarFunction, 2> constraints() const {
    const double l = lambda;
    return {ScalarFunction{"Phi1", [](const PhasePoint& x) { return x[2]; },
                           [](const PhasePoint&) { return PhasePoint{0, 0, 1, 0}; }},
            ScalarFunction{"Phi2", [l](const PhasePoint& x) { return x[3] - l * std::cos(x[0]); },
                           [l](const PhasePoint& x) { return PhasePoint{l * std::sin(x[0]), 0, 0, 1}; }}};
  }

  void check_regular(const OrbitState& at) const {
    if (std::abs(std::sin(at.theta)) <= pole_guard) {
      throw OrbitError("singular configuration: sin(theta) = " + format_number(std::sin(at.theta)) +
                       " is inside the pole guard");
    }
  }

  /// C_ab = ({Phi_a, Phi_b}_P)^{-1}.
  std::array<std::array<double, 2>, 2> c_matrix(const OrbitState& at) const {
    check_regular(at);
    const auto phis = constraints();
    const double p12 = poisson_bracket(phis[0], phis[1], at);
    return {{{0, -1 / p12}, {1 / p12, 0}}};
  }

  double dirac_bracket(const ScalarFunction& f, const ScalarFunction& g, const OrbitState& at) const {
    const auto c = c_matrix(at);
    const auto phis = constraints();
    double out = poisson_bracket(f, g, at);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (c[a][b] == 0) continue;
        out -= poisson_bracket(f, phis[a], at) * c[a][b] * poisson_bracket(phis[b], g, at);
      }
    }
    return out;
  }
};

/// H = -lambda mu B cos(theta).
inline double total_hamiltonian(const OrbitState& at, double mu, double b) {
  return -at.lambda_radius * mu * b * std::cos(at.theta);
}

/// theta(t) = theta0, phi(t) = phi0 - mu B t.
inline OrbitState classical_trajectory(const OrbitState& s0, double mu, double b, double t) {
  OrbitState s = OrbitState::on_shell(s0.theta, s0.phi - mu * b * t, s0.lambda_radius);
  return s;
}

/// Residuals of d/dt(lambda cos theta) = 0 and (dphi/dt + mu B) sin theta = 0 by central differences.
inline std::array<double, 2> precession_residuals(const OrbitState& s0, double mu, double b, double t,
                                                  double h = 1e-4) {
  const OrbitState a = classical_trajectory(s0, mu, b, t + h);
  const OrbitState c = classical_trajectory(s0, mu, b, t - h);
  const double deta = (a.eta() - c.eta()) / (2 * h);
  const double dphi = (a.phi - c.phi) / (2 * h);
  return {std::abs(deta), std::abs((dphi + mu * b) * std::sin(s0.theta))};
}

struct SymplecticData {
  double darboux_coefficient = 0;  // Omega = lambda dphi ^ d(cos theta)
  double omega_theta_phi = 0;      // Omega = omega_theta_phi dtheta ^ dphi, from the embedding
  double one_form = 0;             // omega = (gamma + lambda cos theta) dphi
  double exterior_residual = 0;    // |d omega + Omega| by finite differences
};

inline SymplecticData symplectic_data(const OrbitState& at, double gamma) {
  SymplecticData d;
  const double l = at.lambda_radius;
  d.darboux_coefficient = l;
  // (1/lambda^2) x . (x_theta x x_phi)
  const double s = std::sin(at.theta), c = std::cos(at.theta);
  const double cp = std::cos(at.phi), sp = std::sin(at.phi);
  const std::array<double, 3> x = at.embedding();
  const std::array<double, 3> xt{l * c * cp, l * c * sp, -l * s};
  const std::array<double, 3> xp{-l * s * sp, l * s * cp, 0};
  const std::array<double, 3> cross{xt[1] * xp[2] - xt[2] * xp[1], xt[2] * xp[0] - xt[0] * xp[2],
                                    xt[0] * xp[1] - xt[1] * xp[0]};
  d.omega_theta_phi = (x[0] * cross[0] + x[1] * cross[1] + x[2] * cross[2]) / (l * l);
  auto a = [&](double theta) { return gamma + l * std::cos(theta); };
  d.one_form = a(at.theta);
  const double h = 1e-5;
  const double da = (8 * (a(at.theta + h) - a(at.theta - h)) - (a(at.theta + 2 * h) - a(at.theta - 2 * h))) /
                    (12 * h);
  d.exterior_residual = std::abs(da + d.omega_theta_phi);
  return d;
}

/// Random state with |cos theta| <= 0.99 on the constraint surface.
inline OrbitState random_regular_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.99, 0.99), ph(0, 2 * M_PI), lam(0.5, 2.0);
  return OrbitState::on_shell(std::acos(u(rng)), ph(rng), lam(rng));
}

struct DiracReport {
  std::vector<CheckResult> checks;
  std::size_t samples = 0;
};

/// Dirac-bracket identities at random non-polar states.
inline DiracReport check_dirac(std::size_t samples, std::uint64_t seed, double tolerance = 1e-9,
                               double so3_tolerance = 1e-8) {
  std::mt19937_64 rng(seed);
  double canonical = 0, with_constraints = 0, so3 = 0, antisym = 0, numeric = 0;
  for (std::size_t n = 0; n < samples; ++n) {
    const OrbitState s = random_regular_state(rng);
    const double l = s.lambda_radius;
    ConstraintSystem sys{l};
    canonical = std::max(canonical, std::abs(sys.dirac_bracket(functions::coordinate(1),
                                                               functions::lambda_cos_theta(l), s) - 1));
    std::vector<ScalarFunction> probes;
    for (std::size_t i = 0; i < 4; ++i) probes.push_back(functions::coordinate(i));
    for (std::size_t a = 0; a < 3; ++a) probes.push_back(functions::embedding(a, l));
    probes.push_back(functions::lambda_cos_theta(l));
    probes.push_back({"theta*p_phi + sin(phi)*p_theta^2",
                      [](const PhasePoint& x) { return x[0] * x[3] + std::sin(x[1]) * x[2] * x[2]; }, {}});
    for (const auto& f : probes) {
      for (const auto& phi : sys.constraints()) {
        with_constraints = std::max(with_constraints, std::abs(sys.dirac_bracket(f, phi, s)));
      }
    }
    for (std::size_t a = 0; a < 3; ++a) {
      const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
      const auto xa = functions::embedding(a, l), xb = functions::embedding(b, l);
      const double expected = functions::embedding(c, l).value(phase_point(s));
      so3 = std::max(so3, std::abs(sys.dirac_bracket(xa, xb, s) - expected));
      antisym = std::max(antisym, std::abs(sys.dirac_bracket(xa, xb, s) + sys.dirac_bracket(xb, xa, s)));
      ScalarFunction na{xa.name, xa.value, {}}, nb{xb.name, xb.value, {}};
      numeric = std::max(numeric, std::abs(sys.dirac_bracket(na, nb, s) - expected));
    }
  }
  DiracReport r;
  r.samples = samples;
  r.checks.push_back(residual_check("dirac_phi_lambda_cos_theta_is_one", canonical, tolerance));
  r.checks.push_back(residual_check("dirac_brackets_with_constraints_vanish", with_constraints, tolerance));
  r.checks.push_back(residual_check("so3_relations_dirac", so3, so3_tolerance));
  r.checks.push_back(residual_check("dirac_antisymmetry", antisym, tolerance));
  r.checks.push_back(residual_check("so3_relations_finite_difference_gradients", numeric, so3_tolerance));
  return r;
}

}  // namespace spindeq
