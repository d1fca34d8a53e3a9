// spindeq: command-line front end for the verification runs.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spindeq/commands.hpp"

namespace {

int finish(const spindeq::RunReport& rep) {
  for (const auto& c : rep.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  (actual " << c.actual << ")\n";
  }
  std::cout << rep.subcommand << ": " << rep.checks.size() << " checks in " << rep.timing_seconds << " s\n";
  const auto failed = rep.failures();
  if (failed.empty()) return 0;
  std::cerr << "failed checks:\n";
  for (const auto& name : failed) std::cerr << "  " << name << "\n";
  return 1;
}

std::optional<std::string> opt_string(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::string>(s);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace spindeq;
  CLI::App app{"Grassmann, classical and coadjoint path-integral checks for spin 1/2"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;

  // verify-dequantization
  auto* deq = app.add_subcommand("verify-dequantization", "superfield dequantization identities");
  std::string deq_case = "bosonic", deq_h, deq_l, deq_builtin, deq_report;
  deq->add_option("--case", deq_case, "bosonic | grassmann | coadjoint")
      ->check(CLI::IsMember({"bosonic", "grassmann", "coadjoint"}));
  deq->add_option("--hamiltonian", deq_h, "Hamiltonian expression; the kinetic term is added");
  deq->add_option("--lagrangian", deq_l, "full Lagrangian expression");
  deq->add_option("--builtin", deq_builtin, "named built-in Lagrangian");
  deq->add_option("--report", deq_report, "JSON report path");

  // propagate-quantum
  auto* pq = app.add_subcommand("propagate-quantum", "time-sliced Grassmann propagator vs Pauli evolution");
  std::vector<double> field{1, 0, 0};
  QuantumOptions qo;
  std::string pq_out, pq_report;
  pq->add_option("--b", field, "magnetic field BX,BY,BZ")->delimiter(',')->expected(3);
  pq->add_option("--muB", qo.field.mu_b, "Bohr magneton");
  pq->add_option("--t", qo.t, "propagation time");
  pq->add_option("--slices", qo.slices, "comma-separated slice counts")->delimiter(',');
  pq->add_option("--max-error", qo.max_error, "error bound at n >= 1000");
  pq->add_option("--ratio-low", qo.ratio_low, "lower bound for error(n)/error(2n)");
  pq->add_option("--ratio-high", qo.ratio_high, "upper bound for error(n)/error(2n)");
  pq->add_option("--samples", qo.samples, "random fields in the representation check");
  pq->add_option("--seed", seed, "random seed (default: SPINDEQ_SEED)");
  pq->add_option("--out", pq_out, "CSV path: n,max_error_vs_oracle,wall_time");
  pq->add_option("--report", pq_report, "JSON report path");

  // propagate-classical
  auto* pc = app.add_subcommand("propagate-classical", "classical path-integral operator evolution");
  ClassicalOptions co;
  std::string pc_case = "coadjoint", pc_out;
  std::vector<std::string> pc_consts;
  pc->add_option("--case", pc_case, "bosonic | grassmann | coadjoint")
      ->check(CLI::IsMember({"bosonic", "grassmann", "coadjoint"}));
  pc->add_option("--omega", co.omega, "w in H = w*xi*xibar (grassmann)");
  pc->add_option("--muB", co.mu_b, "mu*B (coadjoint)");
  pc->add_option("--t", co.t, "evolution time");
  pc->add_option("--truncation", co.truncation, "total degree kept in even arguments")
      ->check(CLI::PositiveNumber);
  pc->add_option("--hamiltonian", co.hamiltonian, "H(q,p) for the bosonic case");
  pc->add_option("--const", pc_consts, "constant value NAME=VALUE (bosonic)");
  pc->add_option("--seed", seed, "random seed (default: SPINDEQ_SEED)");
  pc->add_option("--out", pc_out, "JSON report path");

  // precession
  auto* pr = app.add_subcommand("precession", "closed-form spin precession on the orbit");
  PrecessionOptions po;
  std::string pr_out, pr_report;
  pr->add_option("--theta0", po.theta0, "initial polar angle");
  pr->add_option("--phi0", po.phi0, "initial azimuth");
  pr->add_option("--muB", po.mu_b, "mu*B");
  pr->add_option("--t", po.t, "final time");
  pr->add_option("--lambda", po.lambda, "orbit radius");
  pr->add_option("--steps", po.steps, "number of time steps");
  pr->add_option("--out", pr_out, "CSV path: t,theta,phi,eta,H");
  pr->add_option("--report", pr_report, "JSON report path");

  // check-dirac
  auto* cd = app.add_subcommand("check-dirac", "Dirac brackets on the two-sphere");
  DiracOptions dopt;
  std::string cd_out;
  cd->add_option("--samples", dopt.samples, "random non-polar states");
  cd->add_option("--seed", seed, "random seed (default: SPINDEQ_SEED)");
  cd->add_option("--tolerance", dopt.tolerance, "bracket tolerance");
  cd->add_option("--so3-tolerance", dopt.so3_tolerance, "so(3) relation tolerance");
  cd->add_option("--out", cd_out, "JSON report path");

  // all
  auto* all = app.add_subcommand("all", "every acceptance check");
  std::string all_out;
  all->add_option("--seed", seed, "random seed (default: SPINDEQ_SEED)");
  all->add_option("--out", all_out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*deq) {
      DequantizationOptions o;
      o.kind = parse_case(deq_case);
      o.hamiltonian = opt_string(deq_h);
      o.lagrangian = opt_string(deq_l);
      o.builtin = opt_string(deq_builtin);
      o.report_path = opt_string(deq_report);
      return finish(verify_dequantization_command(o));
    }
    if (*pq) {
      qo.field.bx = field[0];
      qo.field.by = field[1];
      qo.field.bz = field[2];
      qo.seed = seed;
      qo.csv_path = opt_string(pq_out);
      RunReport rep = propagate_quantum_command(qo);
      if (!pq_report.empty()) write_json(pq_report, rep);
      return finish(rep);
    }
    if (*pc) {
      co.kind = parse_case(pc_case);
      co.seed = seed;
      co.json_path = opt_string(pc_out);
      for (const auto& kv : pc_consts) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--const expects NAME=VALUE, got " + kv);
        co.constants[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      return finish(propagate_classical_command(co));
    }
    if (*pr) {
      po.csv_path = opt_string(pr_out);
      RunReport rep = precession_command(po);
      if (!pr_report.empty()) write_json(pr_report, rep);
      return finish(rep);
    }
    if (*cd) {
      dopt.seed = seed;
      dopt.json_path = opt_string(cd_out);
      return finish(check_dirac_command(dopt));
    }
    if (*all) {
      AllOptions o;
      o.seed = seed;
      o.json_path = opt_string(all_out);
      return finish(all_command(o));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
