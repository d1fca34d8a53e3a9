#pragma once

// The verification runs behind each CLI subcommand. Each returns a RunReport;
// file output (JSON/CSV) is requested through the options.

#include <chrono>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spindeq/coadjoint.hpp"
#include "spindeq/cpi_engine.hpp"
#include "spindeq/report.hpp"
#include "spindeq/spin_quantum.hpp"
#include "spindeq/superfield.hpp"

namespace spindeq {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// --seed if given, else SPINDEQ_SEED, else the built-in default.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SPINDEQ_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("SPINDEQ_SEED is not an integer: ") + env);
    }
  }
  return kDefaultSeed;
}

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline CheckResult zero_polynomial_check(std::string name, const GradedPolynomial& residual) {
  return exact_check(std::move(name), "0", to_string(residual));
}

}  // namespace detail

// ---------------------------------------------------------------- dequantization

struct DequantizationOptions {
  Case kind = Case::Bosonic;
  std::optional<std::string> hamiltonian;
  std::optional<std::string> lagrangian;
  std::optional<std::string> builtin;
  std::optional<std::string> report_path;
};

/// Exact checks of i Int dtheta dthetabar L[superfields] = L~ + d/dt(...).
inline RunReport verify_dequantization_command(const DequantizationOptions& opt) {
  detail::Stopwatch clock;
  RunReport rep;
  rep.subcommand = "verify-dequantization";
  rep.parameters["case"] = case_name(opt.kind);
  const CaseModel model = standard_case(opt.kind);

  std::vector<std::pair<std::string, GradedPolynomial>> inputs;
  if (opt.hamiltonian) {
    rep.parameters["hamiltonian"] = *opt.hamiltonian;
    inputs.emplace_back("hamiltonian", model.kinetic - parse(*opt.hamiltonian, model.symbols));
  }
  if (opt.lagrangian) {
    rep.parameters["lagrangian"] = *opt.lagrangian;
    inputs.emplace_back("lagrangian", parse(*opt.lagrangian, model.symbols));
  }
  if (opt.builtin) {
    rep.parameters["builtin"] = *opt.builtin;
    inputs.emplace_back(*opt.builtin, builtin_lagrangian(opt.kind, *opt.builtin, model));
  }
  const bool everything = inputs.empty();
  if (everything) {
    for (const auto& name : builtin_names(opt.kind)) {
      inputs.emplace_back(name, builtin_lagrangian(opt.kind, name, model));
    }
  }

  rep.details["identities"] = nlohmann::json::array();
  for (const auto& [label, l] : inputs) {
    nlohmann::json d{{"name", label}, {"lagrangian", to_string(l)}};
    try {
      DequantizationCheck chk = verify_dequantization(l, model);
      rep.checks.push_back(detail::zero_polynomial_check(label + "/cpi_lagrangian_residual", chk.lagrangian_residual));
      rep.checks.push_back(detail::zero_polynomial_check(label + "/surface_term_residual", chk.surface_residual));
      rep.checks.push_back(detail::zero_polynomial_check(label + "/total_residual", chk.total_residual));
      GradedPolynomial h = chk.hamiltonian;
      rep.checks.push_back(detail::zero_polynomial_check(
          label + "/superfield_substitution_equals_taylor",
          compose_observable(h, model) - compose_observable_taylor(h, model)));
      d["hamiltonian"] = to_string(chk.hamiltonian);
      d["raw"] = to_string(chk.result.raw);
      d["cpi_lagrangian"] = to_string(chk.result.cpi_lagrangian);
      d["expected_cpi_lagrangian"] = to_string(chk.expected_lagrangian);
      d["surface_primitive"] = to_string(chk.result.primitive);
      d["surface_term"] = to_string(chk.result.surface_term);
      d["residual"] = to_string(chk.total_residual);
    } catch (const IdentityViolation& e) {
      rep.checks.push_back({label + "/decomposition", "exact decomposition", e.what(), 1, 0, false});
      d["error"] = e.what();
    }
    rep.details["identities"].push_back(d);
  }

  if (opt.kind == Case::Coadjoint && everything) {
    // H(phi~, eta~) integrated over the supertime partners is the Liouvillian
    GradedPolynomial h = parse("-muB*eta", model.symbols);
    GradedPolynomial liouvillian = supertime_integral(compose_observable(h, model), model);
    rep.checks.push_back(exact_check("hamiltonian_to_liouvillian", to_string(parse("-muB*Lambda_phi", model.symbols)),
                                     to_string(liouvillian)));
    // the gamma shift of the one-form only adds -d/dt(gamma Lambda_eta)
    GradedPolynomial with_gamma = dequantize(builtin_lagrangian(Case::Coadjoint, "precession-gamma", model), model).raw;
    GradedPolynomial without = dequantize(builtin_lagrangian(Case::Coadjoint, "precession", model), model).raw;
    rep.checks.push_back(exact_check("gamma_extra_term",
                                     to_string(-formal_time_derivative(parse("gamma*Lambda_eta", model.symbols))),
                                     to_string(with_gamma - without)));
  }
  rep.timing_seconds = clock.seconds();
  if (opt.report_path) write_json(*opt.report_path, rep);
  return rep;
}

// ---------------------------------------------------------------- spin 1/2

inline MagneticField random_field(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2), mu(0.5, 1.5);
  return {u(rng), u(rng), u(rng), mu(rng)};
}

/// Matrix and Grassmann forms of the spin operators and of H(b) agree; su(2) holds in both.
inline std::vector<CheckResult> representation_checks(std::size_t samples, std::uint64_t seed,
                                                      double tolerance = 1e-12) {
  const SpinOperators s = spin_operators();
  const std::vector<SpinState> basis{{1.0, 0.0}, {0.0, 1.0}};
  auto disagreement = [&](const SpinOperator& op) {
    double m = 0;
    for (const auto& b : basis) {
      m = std::max(m, (op.apply_matrix(b).vector() - op.apply_grassmann(b).vector()).cwiseAbs().maxCoeff());
    }
    return m;
  };
  double spin = 0;
  for (const auto* op : {&s.sx, &s.sy, &s.sz, &s.n}) {
    spin = std::max(spin, disagreement(*op));
    spin = std::max(spin, max_element_error(symbol_matrix(ordered_symbol(*op)), op->matrix));
  }

  std::mt19937_64 rng(seed);
  double ham = 0, from_spin = 0, symbol = 0, kernel = 0;
  for (std::size_t n = 0; n < samples; ++n) {
    const MagneticField b = random_field(rng);
    const SpinOperator h = hamiltonian(b);
    ham = std::max(ham, disagreement(h));
    from_spin = std::max(from_spin, max_element_error(hamiltonian_from_spin(b).matrix, h.matrix));
    from_spin = std::max(from_spin, disagreement(hamiltonian_from_spin(b)));
    symbol = std::max(symbol, max_abs_difference(ordered_symbol(h), hamiltonian_symbol(b)));
    symbol = std::max(symbol, max_element_error(symbol_matrix(hamiltonian_symbol(b)), h.matrix));
    kernel = std::max(kernel, max_abs_difference(integral_kernel(h), hamiltonian_kernel(b)));
    for (const auto& st : basis) {
      const SpinState via_kernel = from_wavefunction(apply_kernel(hamiltonian_kernel(b), to_wavefunction(st)));
      kernel = std::max(kernel, (via_kernel.vector() - h.apply_matrix(st).vector()).cwiseAbs().maxCoeff());
    }
  }

  // [S_a, S_b] = i eps_abc S_c (hbar = 1)
  const Complex I(0, 1);
  const std::array<const SpinOperator*, 3> comps{&s.sx, &s.sy, &s.sz};
  double matrix_su2 = 0, grassmann_su2 = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    const SpinOperator& x = *comps[a];
    const SpinOperator& y = *comps[(a + 1) % 3];
    const SpinOperator& z = *comps[(a + 2) % 3];
    SpinOperator comm = x * y - y * x;
    matrix_su2 = std::max(matrix_su2, max_element_error(comm.matrix, I * z.matrix));
    for (const auto& st : basis) {
      grassmann_su2 = std::max(grassmann_su2,
                               (comm.apply_grassmann(st).vector() - I * z.apply_grassmann(st).vector()).cwiseAbs().maxCoeff());
    }
  }
  return {
      residual_check("spin_operators_matrix_vs_grassmann", spin, tolerance),
      residual_check("hamiltonian_matrix_vs_grassmann", ham, tolerance),
      residual_check("hamiltonian_equals_minus_two_muB_B_dot_S", from_spin, tolerance),
      residual_check("ordered_symbol_closed_form", symbol, tolerance),
      residual_check("integral_kernel_closed_form", kernel, tolerance),
      residual_check("su2_commutators_matrix", matrix_su2, tolerance),
      residual_check("su2_commutators_grassmann", grassmann_su2, tolerance),
  };
}

struct QuantumOptions {
  MagneticField field{1, 0, 0, 1};
  double t = 1;
  std::vector<unsigned> slices{125, 250, 500, 1000};
  double max_error = 1e-2;
  double ratio_low = 1.7;
  double ratio_high = 2.3;
  std::size_t samples = 50;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> csv_path;
};

inline RunReport propagate_quantum_command(const QuantumOptions& opt) {
  detail::Stopwatch clock;
  RunReport rep;
  rep.subcommand = "propagate-quantum";
  const std::uint64_t seed = resolve_seed(opt.seed);
  const MagneticField& b = opt.field;
  rep.parameters = {{"b", format_number(b.bx) + "," + format_number(b.by) + "," + format_number(b.bz)},
                    {"mu_b", format_number(b.mu_b)},
                    {"t", format_number(opt.t)},
                    {"seed", std::to_string(seed)}};
  if (opt.slices.empty()) throw std::invalid_argument("at least one slice count is required");

  auto sweep = propagator_sweep(b, opt.t, opt.slices);
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::vector<double>> csv;
  for (const auto& p : sweep) {
    rows.push_back({{"slices", p.slices}, {"max_error", p.max_error}, {"wall_seconds", p.wall_seconds}});
    csv.push_back({static_cast<double>(p.slices), p.max_error, p.wall_seconds});
    if (p.slices >= 1000) {
      rep.checks.push_back({"error_at_n=" + std::to_string(p.slices), "<= " + format_number(opt.max_error),
                            format_number(p.max_error), p.max_error, opt.max_error, p.max_error <= opt.max_error});
    }
  }
  for (const auto& p : sweep) {
    for (const auto& q : sweep) {
      if (q.slices != 2 * p.slices) continue;
      const double ratio = p.max_error / q.max_error;
      const bool ok = ratio >= opt.ratio_low && ratio <= opt.ratio_high;
      rep.checks.push_back({"error_ratio_n=" + std::to_string(p.slices),
                            "[" + format_number(opt.ratio_low) + ", " + format_number(opt.ratio_high) + "]",
                            format_number(ratio), ok ? 0.0 : std::abs(ratio - 2), 0.3, ok});
    }
  }
  // wave functions propagated through the kernel of the finest sliced symbol
  const unsigned finest = *std::max_element(opt.slices.begin(), opt.slices.end());
  const SpinMultivector u = sliced_propagator_symbol(b, opt.t, finest);
  double kernel_err = 0;
  for (const SpinState& st : {SpinState{1.0, 0.0}, SpinState{0.0, 1.0}, SpinState{Complex(0.6, 0), Complex(0, 0.8)}}) {
    kernel_err = std::max(kernel_err,
                          (propagate_with_kernel(u, st).vector() - pauli_evolve(st, b, opt.t).vector()).cwiseAbs().maxCoeff());
  }
  rep.checks.push_back(residual_check("kernel_propagation_vs_pauli_evolution", kernel_err, opt.max_error));
  rep.append("representation", representation_checks(opt.samples, seed));
  rep.details["sweep"] = rows;
  rep.timing_seconds = clock.seconds();
  if (opt.csv_path) write_csv(*opt.csv_path, {"n", "max_error_vs_oracle", "wall_time"}, csv);
  return rep;
}

// ---------------------------------------------------------------- classical path integral

struct ClassicalOptions {
  Case kind = Case::Coadjoint;
  double omega = 1;  // w of the Grassmann Hamiltonian w*xi*xibar
  double mu_b = 1;
  double t = 1;
  unsigned truncation = 4;
  std::string hamiltonian = "p^2/2 + q^2/2";  // bosonic case
  std::map<std::string, double> constants;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> json_path;
};

inline CpiSpec classical_spec(const ClassicalOptions& opt) {
  switch (opt.kind) {
    case Case::Coadjoint: {
      CpiSpec s = coadjoint_spec(opt.mu_b);
      s.truncation = opt.truncation;
      return s;
    }
    case Case::Grassmann: return grassmann_spec(opt.omega, opt.truncation);
    case Case::Bosonic: return bosonic_spec(opt.hamiltonian, opt.constants, opt.truncation);
  }
  throw std::logic_error("unknown case");
}

/// -w (d_xi xi - d_xibar xibar - d_c c + d_cbar cbar), applied literally.
inline CMultivector displayed_grassmann_operator(const CMultivector& psi, double w) {
  const TablePtr& t = psi.table();
  auto g = [&](const char* name) { return CMultivector::generator(t, name); };
  CMultivector out = left_derivative(g("xi") * psi, "xi") - left_derivative(g("xibar") * psi, "xibar") -
                     left_derivative(g("c_xi") * psi, "c_xi") + left_derivative(g("c_xibar") * psi, "c_xibar");
  out *= std::complex<double>(-w);
  return out;
}

inline RunReport propagate_classical_command(const ClassicalOptions& opt) {
  detail::Stopwatch clock;
  RunReport rep;
  rep.subcommand = "propagate-classical";
  const std::uint64_t seed = resolve_seed(opt.seed);
  rep.parameters = {{"case", case_name(opt.kind)},
                    {"t", format_number(opt.t)},
                    {"truncation", std::to_string(opt.truncation)},
                    {"seed", std::to_string(seed)}};
  if (opt.kind == Case::Grassmann) rep.parameters["omega"] = format_number(opt.omega);
  if (opt.kind == Case::Coadjoint) rep.parameters["muB"] = format_number(opt.mu_b);
  if (opt.kind == Case::Bosonic) rep.parameters["hamiltonian"] = opt.hamiltonian;

  const CpiSpec spec = classical_spec(opt);
  const CpiOperator op = build_cpi_hamiltonian(spec);
  CharacteristicsReport cr = characteristics_check(spec, opt.t, seed);
  rep.append("", cr.checks);
  const CaseModel model = standard_case(spec.kind);
  const Complex I(0, 1);

  if (spec.kind == Case::Coadjoint) {
    rep.checks.push_back(exact_check("liouvillian_is_minus_muB_Lambda_phi",
                                     to_string(parse("-muB*Lambda_phi", model.symbols)), to_string(op.symbolic())));
  }
  if (spec.kind == Case::Grassmann) {
    double worst = 0;
    for (const auto& e : op.basis()) {
      CMultivector m = op.monomial(e);
      worst = std::max(worst, max_abs_difference(op.apply(0, m), displayed_grassmann_operator(m, opt.omega)));
    }
    rep.checks.push_back(residual_check("operator_matches_displayed_form", worst, 1e-12));
    auto c = jacobi_fields(spec, {1.0, 1.0}, opt.t);
    const Complex rot = std::exp(I * opt.omega * opt.t);
    rep.checks.push_back(residual_check("ghosts_follow_exp_i_omega_t",
                                        std::max(std::abs(c[0] - rot), std::abs(c[1] - std::conj(rot))), 1e-12));
    LinearFlow flow = classical_flow(spec);
    Eigen::VectorXcd y0 = Eigen::VectorXcd::Ones(4);
    Eigen::VectorXcd y = flow.solve(y0, opt.t);
    rep.checks.push_back(residual_check("xi_follows_exp_i_omega_t", std::abs(y(flow.index_of("xi")) - rot), 1e-12));
  }

  rep.details["operator"] = to_string(op.symbolic());
  rep.details["spectrum_real"] = cr.spectrum.real;
  rep.details["spectrum_max_imag"] = cr.spectrum.max_imag;
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& ph : cr.phases) {
    phases.push_back({{"monomial", ph.monomial},
                      {"eigenvalue", {ph.eigenvalue.real(), ph.eigenvalue.imag()}},
                      {"classical", {ph.expected.real(), ph.expected.imag()}},
                      {"phase_at_t", {std::cos(-ph.eigenvalue.real() * opt.t), std::sin(-ph.eigenvalue.real() * opt.t)}},
                      {"residual", ph.residual}});
  }
  rep.details["monomial_phases"] = phases;
  rep.timing_seconds = clock.seconds();
  if (opt.json_path) write_json(*opt.json_path, rep);
  return rep;
}

// ---------------------------------------------------------------- precession

struct PrecessionOptions {
  double theta0 = 1.0;
  double phi0 = 0.0;
  double mu_b = 1.0;
  double t = 2 * M_PI;
  double lambda = 1.0;
  unsigned steps = 100;
  std::optional<std::string> csv_path;
};

inline RunReport precession_command(const PrecessionOptions& opt) {
  detail::Stopwatch clock;
  RunReport rep;
  rep.subcommand = "precession";
  rep.parameters = {{"theta0", format_number(opt.theta0)}, {"phi0", format_number(opt.phi0)},
                    {"muB", format_number(opt.mu_b)},       {"t", format_number(opt.t)},
                    {"lambda", format_number(opt.lambda)},  {"steps", std::to_string(opt.steps)}};
  if (opt.steps == 0) throw std::invalid_argument("steps must be positive");
  if (!(opt.lambda > 0)) throw std::invalid_argument("lambda must be positive");
  const OrbitState s0 = OrbitState::on_shell(opt.theta0, opt.phi0, opt.lambda);
  const double h0 = total_hamiltonian(s0, 1, opt.mu_b);

  // H = -lambda muB cos(theta) with its analytic gradient
  const ScalarFunction hamiltonian{"H", [&](const PhasePoint& x) { return -opt.lambda * opt.mu_b * std::cos(x[0]); },
                                   [&](const PhasePoint& x) {
                                     return PhasePoint{opt.lambda * opt.mu_b * std::sin(x[0]), 0, 0, 0};
                                   }};
  const ConstraintSystem sys{opt.lambda};
  const bool regular = std::abs(std::sin(opt.theta0)) > sys.pole_guard;

  std::vector<std::vector<double>> rows;
  double eom = 0, bracket_eom = 0, eta_drift = 0, h_drift = 0, group = 0;
  for (unsigned k = 0; k <= opt.steps; ++k) {
    const double t = opt.t * k / opt.steps;
    const OrbitState s = classical_trajectory(s0, 1, opt.mu_b, t);
    const auto r = precession_residuals(s0, 1, opt.mu_b, t);
    eom = std::max({eom, r[0], r[1]});
    // closed-form velocities (0, -muB) against the Dirac-bracket flow; phi is no chart at the poles
    if (regular) bracket_eom = std::max({bracket_eom, std::abs(sys.dirac_bracket(functions::coordinate(0), hamiltonian, s)),
                            std::abs(sys.dirac_bracket(functions::coordinate(1), hamiltonian, s) + opt.mu_b)});
    eta_drift = std::max(eta_drift, std::abs(s.eta() - s0.eta()));
    h_drift = std::max(h_drift, std::abs(total_hamiltonian(s, 1, opt.mu_b) - h0));
    const OrbitState split = classical_trajectory(classical_trajectory(s0, 1, opt.mu_b, 0.3 * t), 1, opt.mu_b, 0.7 * t);
    group = std::max(group, std::abs(std::remainder(split.phi - s.phi, 2 * M_PI)) + std::abs(split.theta - s.theta));
    rows.push_back({t, s.theta, s.wrapped_phi(), s.eta(), total_hamiltonian(s, 1, opt.mu_b)});
  }
  rep.checks.push_back(residual_check("equations_of_motion", eom, 1e-9));
  if (regular) {
    rep.checks.push_back(residual_check("dirac_bracket_equations_of_motion", bracket_eom,
                                        8 * std::numeric_limits<double>::epsilon() * (1 + std::abs(opt.mu_b))));
  }
  rep.checks.push_back(residual_check("eta_conserved", eta_drift, 0));
  rep.checks.push_back(residual_check("energy_conserved", h_drift, 0));
  rep.checks.push_back(residual_check("flow_group_law", group, 1e-12));
  if (opt.mu_b != 0) {
    const double period = 2 * M_PI / opt.mu_b;
    const OrbitState back = classical_trajectory(s0, 1, opt.mu_b, period);
    const double err = std::abs(std::remainder(back.phi - s0.phi, 2 * M_PI)) + std::abs(back.theta - s0.theta);
    rep.checks.push_back(residual_check("period_is_identity_mod_2pi", err, 1e-12));
    rep.details["period"] = period;
  } else {
    const OrbitState frozen = classical_trajectory(s0, 1, 0, opt.t);
    rep.checks.push_back(residual_check("zero_field_frozen", std::abs(frozen.phi - s0.phi), 0));
  }
  rep.timing_seconds = clock.seconds();
  if (opt.csv_path) write_csv(*opt.csv_path, {"t", "theta", "phi", "eta", "H"}, rows);
  return rep;
}

// ---------------------------------------------------------------- Dirac brackets

struct DiracOptions {
  std::size_t samples = 100;
  std::optional<std::uint64_t> seed;
  double tolerance = 1e-9;
  double so3_tolerance = 1e-8;
  std::optional<std::string> json_path;
};

inline RunReport check_dirac_command(const DiracOptions& opt) {
  detail::Stopwatch clock;
  RunReport rep;
  rep.subcommand = "check-dirac";
  const std::uint64_t seed = resolve_seed(opt.seed);
  rep.parameters = {{"samples", std::to_string(opt.samples)}, {"seed", std::to_string(seed)}};
  DiracReport dr = check_dirac(opt.samples, seed, opt.tolerance, opt.so3_tolerance);
  rep.append("", dr.checks);

  const ConstraintSystem unit{1};
  rep.checks.push_back(numeric_check("poisson_Phi1_Phi2_equator", -1,
                                     poisson_bracket(unit.constraints()[0], unit.constraints()[1],
                                                     OrbitState::on_shell(M_PI / 2, 0.4)),
                                     1e-15));
  bool guarded = false;
  try {
    unit.dirac_bracket(functions::coordinate(1), functions::lambda_cos_theta(1), OrbitState::on_shell(0, 0));
  } catch (const OrbitError&) {
    guarded = true;
  }
  rep.checks.push_back(exact_check("pole_rejected", "singular-configuration error",
                                   guarded ? "singular-configuration error" : "no error"));

  std::mt19937_64 rng(seed ^ 0x5eed);
  double exterior = 0, gamma_shift = 0;
  for (std::size_t n = 0; n < opt.samples; ++n) {
    const OrbitState s = random_regular_state(rng);
    const SymplecticData a = symplectic_data(s, 0), b = symplectic_data(s, 2.5);
    exterior = std::max({exterior, a.exterior_residual, b.exterior_residual,
                         std::abs(a.omega_theta_phi - s.lambda_radius * std::sin(s.theta))});
    gamma_shift = std::max(gamma_shift, std::abs(a.omega_theta_phi - b.omega_theta_phi));
  }
  rep.checks.push_back(residual_check("one_form_exterior_derivative_is_minus_Omega", exterior, 1e-8));
  rep.checks.push_back(residual_check("gamma_leaves_Omega_unchanged", gamma_shift, 0));
  rep.checks.push_back(residual_check("equator_one_form_vanishes",
                                      std::abs(symplectic_data(OrbitState::on_shell(M_PI / 2, 0), 0).one_form), 1e-15));
  rep.timing_seconds = clock.seconds();
  if (opt.json_path) write_json(*opt.json_path, rep);
  return rep;
}

// ---------------------------------------------------------------- all

struct AllOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> json_path;
};

inline RunReport all_command(const AllOptions& opt) {
  detail::Stopwatch clock;
  RunReport rep;
  rep.subcommand = "all";
  const std::uint64_t seed = resolve_seed(opt.seed);
  rep.parameters["seed"] = std::to_string(seed);
  auto add = [&](const std::string& prefix, const RunReport& r) {
    rep.append(prefix, r.checks);
    rep.details[prefix] = {{"timing_seconds", r.timing_seconds}, {"details", r.details}};
  };
  for (Case c : {Case::Bosonic, Case::Grassmann, Case::Coadjoint}) {
    DequantizationOptions d;
    d.kind = c;
    add(std::string("dequantization/") + case_name(c), verify_dequantization_command(d));
  }
  {
    QuantumOptions q;
    q.seed = seed;
    q.field = {1, 0, 0, 1};
    add("quantum/b_along_x", propagate_quantum_command(q));
    const double n = std::sqrt(0.3 * 0.3 + 0.5 * 0.5 + 0.8 * 0.8);
    q.field = {0.3 / n, -0.5 / n, 0.8 / n, 1};
    add("quantum/b_generic", propagate_quantum_command(q));
  }
  {
    ClassicalOptions c;
    c.seed = seed;
    c.kind = Case::Coadjoint;
    c.mu_b = 1.3;
    add("classical/coadjoint", propagate_classical_command(c));
    c.kind = Case::Grassmann;
    c.omega = 0.9;
    add("classical/grassmann", propagate_classical_command(c));
    c.kind = Case::Bosonic;
    add("classical/bosonic_harmonic", propagate_classical_command(c));
    c.hamiltonian = "p^2/2";
    add("classical/bosonic_free", propagate_classical_command(c));
  }
  add("precession", precession_command(PrecessionOptions{}));
  {
    DiracOptions d;
    d.seed = seed;
    add("dirac", check_dirac_command(d));
  }
  rep.timing_seconds = clock.seconds();
  if (opt.json_path) write_json(*opt.json_path, rep);
  return rep;
}

}  // namespace spindeq
