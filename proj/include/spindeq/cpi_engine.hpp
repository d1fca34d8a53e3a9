#pragma once

// Operator form of the classical path integral. The enlarged wave function
// psi(phi, c) is a multivector in the fields and ghosts; for the orbit case the
// angle phi is carried by integer Fourier modes.
//
// Auxiliary variables act as derivatives:
//   even fields:  lambda_a = -i d/dphi^a,  cbar_a = d/dc^a   (odd ghosts)
//   odd fields:   lambda_a = +i d/dphi^a,  cbar_a = -d/dc^a  (even ghosts)
// and each auxiliary factor is moved to the left of its term before it is
// realized, so d/dxi xi means "multiply by xi, then differentiate".

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "spindeq/check.hpp"
#include "spindeq/superfield.hpp"

namespace spindeq {

using CMultivector = Multivector<std::complex<double>>;

class CpiError : public std::runtime_error {
 public:
  enum class Kind { BadSpec, Unsupported };
  CpiError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct CpiSpec {
  Case kind = Case::Coadjoint;
  GradedPolynomial hamiltonian;             // in the base fields and declared constants
  std::map<std::string, double> constants;  // numeric values of the constants
  unsigned truncation = 4;                  // total degree kept in the even arguments
  std::array<std::array<double, 2>, 2> omega{{{0, 1}, {-1, 0}}};

  void validate() const {
    if (omega[0][0] != 0 || omega[1][1] != 0 || omega[0][1] != -omega[1][0]) {
      throw CpiError(CpiError::Kind::BadSpec, "omega must be antisymmetric");
    }
    if (kind == Case::Coadjoint && (omega[0][1] != 1 || omega[1][0] != -1)) {
      throw CpiError(CpiError::Kind::BadSpec, "the orbit chart fixes omega = [[0,1],[-1,0]]");
    }
    if (truncation == 0) throw CpiError(CpiError::Kind::BadSpec, "truncation must be positive");
  }
};

/// H = -muB*eta on the orbit.
inline CpiSpec coadjoint_spec(double mu_b) {
  CaseModel m = standard_case(Case::Coadjoint);
  return {Case::Coadjoint, parse("-muB*eta", m.symbols), {{"muB", mu_b}}, 4, {{{0, 1}, {-1, 0}}}};
}

/// H = w*xi*xibar, the non-constant part of the Pauli Hamiltonian for B along z.
inline CpiSpec grassmann_spec(double w, unsigned truncation = 4) {
  CaseModel m = standard_case(Case::Grassmann);
  return {Case::Grassmann, parse("w*xi*xibar", m.symbols), {{"w", w}}, truncation, {{{0, 1}, {-1, 0}}}};
}

inline CpiSpec bosonic_spec(const std::string& hamiltonian, std::map<std::string, double> constants = {},
                            unsigned truncation = 4) {
  CaseModel m = standard_case(Case::Bosonic);
  return {Case::Bosonic, parse(hamiltonian, m.symbols), std::move(constants), truncation,
          {{{0, 1}, {-1, 0}}}};
}

/// H~ = lambda_a w^{ab} d_b H + i cbar_a w^{ad} d_d d_b H c^b for even fields;
/// i b (lambda_xi xi - lambda_xibar xibar + i cbar_xi c_xi - i cbar_xibar c_xibar) for H = h0 + b xi xibar.
inline GradedPolynomial cpi_hamiltonian(const CpiSpec& spec, const CaseModel& model) {
  spec.validate();
  if (spec.kind == Case::Grassmann) {
    GradedPolynomial l = grassmann_cpi_lagrangian(spec.hamiltonian, model);
    GradedPolynomial h;
    for (const auto& [m, c] : l.terms()) {
      bool dotted = false;
      for (const auto& f : m) dotted = dotted || f.symbol.dot > 0;
      if (!dotted) h.add_term(m, -c);
    }
    return h;
  }
  const ExactComplex I = ExactComplex::i();
  auto sym = [](const Symbol& s) { return GradedPolynomial::symbol(s); };
  GradedPolynomial out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (spec.omega[a][b] == 0) continue;
      const ExactComplex w{Rational(spec.omega[a][b])};
      GradedPolynomial dbH = partial_derivative(spec.hamiltonian, model.fields[b]);
      out += sym(model.multipliers[a]) * dbH * w;
      for (int c = 0; c < 2; ++c) {
        GradedPolynomial ddH = partial_derivative(partial_derivative(spec.hamiltonian, model.fields[c]),
                                                  model.fields[b]);
        out += sym(model.antighosts[a]) * ddH * sym(model.ghosts[c]) * (I * w);
      }
    }
  }
  return out;
}

/// lambda_a dphi^a + i cbar_a dc^a - H~.
inline GradedPolynomial cpi_lagrangian(const CpiSpec& spec, const CaseModel& model) {
  const ExactComplex I = ExactComplex::i();
  GradedPolynomial kinetic;
  for (int a = 0; a < 2; ++a) {
    kinetic += GradedPolynomial::symbol(model.multipliers[a]) *
               GradedPolynomial::symbol(model.fields[a].dotted());
    kinetic += GradedPolynomial::symbol(model.antighosts[a]) *
               GradedPolynomial::symbol(model.ghosts[a].dotted()) * I;
  }
  return kinetic - cpi_hamiltonian(spec, model);
}

namespace detail {

inline std::complex<double> constant_value(const Symbol& s, const CpiSpec& spec) {
  auto it = spec.constants.find(s.name);
  if (it == spec.constants.end()) {
    throw CpiError(CpiError::Kind::BadSpec, "no value given for constant '" + s.name + "'");
  }
  return it->second;
}

inline unsigned even_degree(const Exponents& e, const GeneratorTable& t) {
  unsigned d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (t[i].parity == Parity::Even) d += e[i];
  }
  return d;
}

}  // namespace detail

/// Wave function on the enlarged space: Fourier mode -> multivector.
struct EnlargedWavefunction {
  TablePtr table;
  std::map<int, CMultivector> modes;

  CMultivector mode(int k) const {
    auto it = modes.find(k);
    return it == modes.end() ? CMultivector(table) : it->second;
  }
  void add(int k, const CMultivector& f) {
    auto [it, inserted] = modes.try_emplace(k, table);
    it->second += f;
  }
  double norm_inf() const {
    double m = 0;
    for (const auto& [k, f] : modes) m = std::max(m, max_abs_difference(f, CMultivector(table)));
    return m;
  }
};

inline double max_abs_difference(const EnlargedWavefunction& a, const EnlargedWavefunction& b) {
  double m = 0;
  for (const auto& [k, f] : a.modes) m = std::max(m, max_abs_difference(f, b.mode(k)));
  for (const auto& [k, f] : b.modes) m = std::max(m, max_abs_difference(a.mode(k), f));
  return m;
}

/// The realized operator H~ acting on enlarged wave functions.
class CpiOperator {
 public:
  struct Term {
    std::complex<double> coeff;
    std::string derivative;  // generator differentiated, or "phi" for the Fourier angle
    CMultivector multiplier;
  };

  CpiOperator(const CpiSpec& spec, const CaseModel& model) : kind_(spec.kind), truncation_(spec.truncation) {
    symbolic_ = cpi_hamiltonian(spec, model);
    unsigned extra = 1;
    for (const auto& [m, c] : symbolic_.terms()) extra = std::max(extra, monomial_degree(m, true));
    table_ = enlarged_table(spec.kind, spec.truncation + extra);

    const bool odd_fields = spec.kind == Case::Grassmann;
    const std::complex<double> I(0, 1);
    for (const auto& [m, c] : symbolic_.terms()) {
      std::complex<double> coeff = c.to_complex();
      std::optional<std::size_t> aux;
      Monomial rest;
      for (std::size_t i = 0; i < m.size(); ++i) {
        const Symbol& s = m[i].symbol;
        if (s.constant) {
          coeff *= std::pow(detail::constant_value(s, spec), static_cast<int>(m[i].power));
        } else if (model.is_auxiliary(s)) {
          if (aux || m[i].power != 1) {
            throw CpiError(CpiError::Kind::Unsupported, "H~ must be linear in the auxiliary variables");
          }
          aux = i;
        } else {
          rest.push_back(m[i]);
        }
      }
      if (!aux) throw CpiError(CpiError::Kind::Unsupported, "term of H~ without auxiliary variable");
      // move the auxiliary factor to the front: m = sign * aux * rest
      Monomial reordered;
      coeff *= static_cast<double>(multiply_monomials({m[*aux]}, rest, reordered));

      const Symbol& a = m[*aux].symbol;
      Term term{coeff, "", CMultivector::scalar(table_, 1.0)};
      for (int k = 0; k < 2; ++k) {
        if (a.name == model.multipliers[k].name) {
          term.derivative = model.fields[k].name;
          term.coeff *= odd_fields ? I : -I;
        } else if (a.name == model.antighosts[k].name) {
          term.derivative = model.ghosts[k].name;
          term.coeff *= odd_fields ? -1.0 : 1.0;
        }
      }
      for (const auto& f : rest) {
        if (f.symbol.name == "phi") {
          throw CpiError(CpiError::Kind::Unsupported, "multiplication by the angle phi");
        }
        for (unsigned r = 0; r < f.power; ++r) {
          term.multiplier = term.multiplier * CMultivector::generator(table_, f.symbol.name);
        }
      }
      terms_.push_back(std::move(term));
    }
  }

  static TablePtr enlarged_table(Case kind, unsigned even_truncation) {
    using G = GeneratorTable;
    switch (kind) {
      case Case::Bosonic:
        return G::make({G::even("q", even_truncation), G::even("p", even_truncation), G::odd("cq"),
                        G::odd("cp")});
      case Case::Grassmann:
        return G::make({G::odd("xi"), G::odd("xibar"), G::even("c_xi", even_truncation),
                        G::even("c_xibar", even_truncation)});
      case Case::Coadjoint:
        return G::make({G::even("eta", even_truncation), G::odd("c_phi"), G::odd("c_eta")});
    }
    return nullptr;
  }

  Case kind() const { return kind_; }
  const TablePtr& table() const { return table_; }
  unsigned truncation() const { return truncation_; }
  const GradedPolynomial& symbolic() const { return symbolic_; }
  const std::vector<Term>& terms() const { return terms_; }

  CMultivector apply(int mode, const CMultivector& psi) const {
    CMultivector out(table_);
    for (const auto& t : terms_) {
      CMultivector x = t.multiplier * psi;
      if (t.derivative == "phi") {
        x *= std::complex<double>(0, mode);
      } else {
        x = left_derivative(x, t.derivative);
      }
      x *= t.coeff;
      out += x;
    }
    return out;
  }

  EnlargedWavefunction apply(const EnlargedWavefunction& psi) const {
    check_modes(psi);
    EnlargedWavefunction out{table_, {}};
    for (const auto& [k, f] : psi.modes) out.add(k, apply(k, f));
    return out;
  }

  /// Monomials with total even degree <= truncation.
  std::vector<Exponents> basis() const {
    std::vector<Exponents> out;
    const auto& t = *table_;
    Exponents e(t.size(), 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned budget) {
      if (i == t.size()) {
        out.push_back(e);
        return;
      }
      const unsigned top = t[i].parity == Parity::Odd ? 1 : budget;
      for (unsigned p = 0; p <= top; ++p) {
        e[i] = static_cast<std::uint8_t>(p);
        rec(i + 1, t[i].parity == Parity::Odd ? budget : budget - p);
      }
      e[i] = 0;
    };
    rec(0, truncation_);
    return out;
  }

  /// Matrix of H~ on the truncated basis of one Fourier mode.
  Eigen::MatrixXcd matrix(int mode) const {
    const auto b = basis();
    std::map<Exponents, Eigen::Index> index;
    for (std::size_t i = 0; i < b.size(); ++i) index[b[i]] = static_cast<Eigen::Index>(i);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(b.size(), b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      CMultivector img = apply(mode, monomial(b[j]));
      for (const auto& [e, c] : img.terms()) {
        auto it = index.find(e);
        if (it == index.end()) {
          throw CpiError(CpiError::Kind::Unsupported,
                         "H~ raises the degree beyond the truncation (nonlinear dynamics)");
        }
        m(it->second, static_cast<Eigen::Index>(j)) = c;
      }
    }
    return m;
  }

  CMultivector monomial(const Exponents& e, std::complex<double> c = 1.0) const {
    CMultivector out(table_);
    out.add_term(e, c);
    return out;
  }

  void check_modes(const EnlargedWavefunction& psi) const {
    if (*psi.table != *table_) throw AlgebraError(AlgebraError::Kind::TableMismatch, "wave function table");
    if (kind_ != Case::Coadjoint) {
      for (const auto& [k, f] : psi.modes) {
        if (k != 0 && !f.is_zero()) {
          throw CpiError(CpiError::Kind::BadSpec, "Fourier modes exist only for the orbit angle");
        }
      }
    }
  }

 private:
  Case kind_;
  unsigned truncation_;
  GradedPolynomial symbolic_;
  TablePtr table_;
  std::vector<Term> terms_;
};

inline CpiOperator build_cpi_hamiltonian(const CpiSpec& spec) {
  return CpiOperator(spec, standard_case(spec.kind));
}

inline bool is_diagonal(const Eigen::MatrixXcd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != std::complex<double>{}) return false;
    }
  }
  return true;
}

/// exp(-i H~ t) psi on the truncated monomial basis: exact phases when H~ is
/// diagonal, a matrix exponential otherwise.
inline EnlargedWavefunction evolve(const EnlargedWavefunction& psi, const CpiOperator& op, double t) {
  op.check_modes(psi);
  const auto b = op.basis();
  std::map<Exponents, Eigen::Index> index;
  for (std::size_t i = 0; i < b.size(); ++i) index[b[i]] = static_cast<Eigen::Index>(i);
  const std::complex<double> I(0, 1);

  EnlargedWavefunction out{op.table(), {}};
  for (const auto& [k, f] : psi.modes) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(b.size());
    for (const auto& [e, c] : f.terms()) {
      auto it = index.find(e);
      if (it == index.end()) {
        throw CpiError(CpiError::Kind::Unsupported, "wave function exceeds the truncation degree");
      }
      v(it->second) = c;
    }
    if (t != 0) {
      Eigen::MatrixXcd m = op.matrix(k);
      if (is_diagonal(m)) {
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) *= std::exp(-I * m(i, i) * t);
      } else {
        Eigen::MatrixXcd u = (m * (-I * t)).exp();
        v = u * v;
      }
    }
    CMultivector g(op.table());
    for (std::size_t i = 0; i < b.size(); ++i) g.add_term(b[i], v(static_cast<Eigen::Index>(i)));
    out.add(k, g);
  }
  return out;
}

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  double max_imag = 0;
  bool real = true;
};

inline Spectrum spectrum(const CpiOperator& op, int mode = 0) {
  Eigen::MatrixXcd m = op.matrix(mode);
  Spectrum s;
  if (is_diagonal(m)) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) s.eigenvalues.push_back(m(i, i));
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) s.eigenvalues.push_back(es.eigenvalues()(i));
  }
  double scale = 1;
  for (auto z : s.eigenvalues) {
    s.max_imag = std::max(s.max_imag, std::abs(z.imag()));
    scale = std::max(scale, std::abs(z));
  }
  s.real = s.max_imag <= 1e-12 * scale;
  return s;
}

/// Linear classical equations dy/dt = K y + f for y = (fields, ghosts), read
/// off from dL~/d(aux) = 0.
struct LinearFlow {
  std::vector<std::string> variables;
  std::vector<Parity> parities;
  Eigen::MatrixXcd K;
  Eigen::VectorXcd f;

  Eigen::Index index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (variables[i] == name) return static_cast<Eigen::Index>(i);
    }
    throw std::out_of_range("no variable " + name);
  }

  /// Augmented propagator [[e^{Kt}, g(t)], [0, 1]] with y(t) = e^{Kt} y0 + g(t).
  Eigen::MatrixXcd propagator(double t) const {
    const Eigen::Index n = K.rows();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    a.topLeftCorner(n, n) = K * t;
    a.topRightCorner(n, 1) = f * t;
    if (a.isZero(0)) return Eigen::MatrixXcd::Identity(n + 1, n + 1);
    return a.exp();
  }

  Eigen::VectorXcd solve(const Eigen::VectorXcd& y0, double t) const {
    const Eigen::Index n = K.rows();
    Eigen::MatrixXcd p = propagator(t);
    return p.topLeftCorner(n, n) * y0 + p.topRightCorner(n, 1);
  }
};

inline LinearFlow classical_flow(const CpiSpec& spec) {
  CaseModel model = standard_case(spec.kind);
  GradedPolynomial l = cpi_lagrangian(spec, model);
  LinearFlow flow;
  std::vector<std::pair<Symbol, Symbol>> pairs;  // (aux, variable)
  for (int a = 0; a < 2; ++a) pairs.emplace_back(model.multipliers[a], model.fields[a]);
  for (int a = 0; a < 2; ++a) pairs.emplace_back(model.antighosts[a], model.ghosts[a]);
  for (const auto& [aux, y] : pairs) {
    flow.variables.push_back(y.name);
    flow.parities.push_back(y.parity);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(pairs.size());
  flow.K = Eigen::MatrixXcd::Zero(n, n);
  flow.f = Eigen::VectorXcd::Zero(n);

  for (Eigen::Index row = 0; row < n; ++row) {
    const auto& [aux, y] = pairs[static_cast<std::size_t>(row)];
    GradedPolynomial eq = partial_derivative(l, aux);
    const Monomial velocity{{y.dotted(), 1}};
    const std::complex<double> k = eq.coefficient(velocity).to_complex();
    if (k == std::complex<double>{}) throw CpiError(CpiError::Kind::BadSpec, "no kinetic term for " + y.name);
    for (const auto& [m, c] : eq.terms()) {
      if (m == velocity) continue;
      std::complex<double> value = -c.to_complex() / k;
      std::optional<std::string> var;
      for (const auto& f : m) {
        if (f.symbol.constant) {
          value *= std::pow(detail::constant_value(f.symbol, spec), static_cast<int>(f.power));
        } else if (!var && f.power == 1 && f.symbol.dot == 0 && !model.is_auxiliary(f.symbol)) {
          var = f.symbol.name;
        } else {
          throw CpiError(CpiError::Kind::Unsupported, "classical equations are not linear");
        }
      }
      if (var) {
        flow.K(row, flow.index_of(*var)) += value;
      } else {
        flow.f(row) += value;
      }
    }
  }
  return flow;
}

/// Ghost evolution c(t) from the linearized equations; exactly c0 when the ghosts do not move.
inline std::vector<std::complex<double>> jacobi_fields(const CpiSpec& spec,
                                                       const std::vector<std::complex<double>>& c0,
                                                       double t) {
  if (c0.size() != 2) throw std::invalid_argument("two ghost values expected");
  LinearFlow flow = classical_flow(spec);
  Eigen::MatrixXcd kcc = flow.K.bottomRightCorner(2, 2);
  if (!flow.K.bottomLeftCorner(2, 2).isZero(0)) {
    throw CpiError(CpiError::Kind::Unsupported, "ghost equations depend on the trajectory");
  }
  if (kcc.isZero(0)) return c0;
  Eigen::Vector2cd c(c0[0], c0[1]);
  Eigen::Vector2cd ct = (kcc * t).exp() * c;
  return {ct(0), ct(1)};
}

/// psi(y, t) = psi(Flow_{-t}(y), 0): the method-of-characteristics oracle.
inline EnlargedWavefunction pullback(const EnlargedWavefunction& psi, const CpiSpec& spec, double t) {
  LinearFlow flow = classical_flow(spec);
  const Eigen::Index n = static_cast<Eigen::Index>(flow.variables.size());
  Eigen::MatrixXcd p = flow.propagator(-t);
  const TablePtr& table = psi.table;

  std::complex<double> angle_shift = 0;
  std::map<std::string, CMultivector> images;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string& v = flow.variables[static_cast<std::size_t>(i)];
    if (v == "phi") {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (flow.K(i, j) != std::complex<double>{} || flow.K(j, i) != std::complex<double>{}) {
          throw CpiError(CpiError::Kind::Unsupported, "angle velocity must be constant");
        }
      }
      angle_shift = p(i, n);
      continue;
    }
    CMultivector img(table);
    if (flow.parities[static_cast<std::size_t>(i)] == Parity::Even) {
      img += CMultivector::scalar(table, p(i, n));
    } else if (std::abs(p(i, n)) > 1e-14) {
      throw CpiError(CpiError::Kind::Unsupported, "odd variable with a constant drive");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::string& w = flow.variables[static_cast<std::size_t>(j)];
      if (w == "phi" || p(i, j) == std::complex<double>{}) continue;
      if (flow.parities[static_cast<std::size_t>(j)] != flow.parities[static_cast<std::size_t>(i)]) {
        if (std::abs(p(i, j)) > 1e-14) {
          throw CpiError(CpiError::Kind::Unsupported, "flow mixes even and odd variables");
        }
        continue;
      }
      img += CMultivector::generator(table, w, p(i, j));
    }
    images.insert_or_assign(v, img);
  }
  EnlargedWavefunction out{table, {}};
  for (const auto& [k, f] : psi.modes) {
    CMultivector g = substitute(f, table, images);
    g *= std::exp(std::complex<double>(0, k) * angle_shift);
    out.add(k, g);
  }
  return out;
}

struct MonomialPhase {
  std::string monomial;
  int mode = 0;
  std::complex<double> eigenvalue;  // brute-force H~ applied to the monomial
  std::complex<double> expected;    // from the classical solution
  double residual = 0;
};

struct CharacteristicsReport {
  std::vector<CheckResult> checks;
  std::vector<MonomialPhase> phases;
  Spectrum spectrum;

  bool passed() const { return all_pass(checks); }
};

namespace detail {

inline std::string monomial_name(const Exponents& e, const GeneratorTable& t, int mode) {
  std::string s;
  auto append = [&](const std::string& x) { s += s.empty() ? x : "*" + x; };
  if (mode != 0) append("exp(" + std::to_string(mode) + "*i*phi)");
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    append(e[i] == 1 ? t[i].name : t[i].name + "^" + std::to_string(e[i]));
  }
  return s.empty() ? "1" : s;
}

/// Eigenvalues of basis monomials when both H~ and the classical flow are diagonal.
inline std::vector<MonomialPhase> monomial_phases(const CpiOperator& op, const LinearFlow& flow,
                                                  const std::vector<int>& modes) {
  std::vector<MonomialPhase> out;
  Eigen::MatrixXcd offdiag = flow.K;
  offdiag.diagonal().setZero();
  if (!offdiag.isZero(0)) return out;
  const auto& t = *op.table();
  const std::complex<double> I(0, 1);
  std::complex<double> angle_rate = 0;
  for (std::size_t i = 0; i < flow.variables.size(); ++i) {
    if (flow.variables[i] == "phi") angle_rate = flow.f(static_cast<Eigen::Index>(i));
  }
  for (int k : modes) {
    for (const auto& e : op.basis()) {
      CMultivector m = op.monomial(e);
      CMultivector img = op.apply(k, m);
      MonomialPhase ph;
      ph.monomial = monomial_name(e, t, k);
      ph.mode = k;
      ph.eigenvalue = img.coefficient(e);
      ph.residual = max_abs_difference(img, m * ph.eigenvalue);  // nonzero if not an eigenvector
      // pullback multiplies y_i by exp(-K_ii t) and e^{ik phi} by exp(-ik f_phi t)
      std::complex<double> rate = std::complex<double>(k) * angle_rate;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) rate += -I * static_cast<double>(e[i]) * flow.K(flow.index_of(t[i].name), flow.index_of(t[i].name));
      }
      ph.expected = rate;
      ph.residual = std::max(ph.residual, std::abs(ph.eigenvalue - ph.expected));
      out.push_back(ph);
    }
  }
  return out;
}

inline CMultivector random_multivector(const CpiOperator& op, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  CMultivector f(op.table());
  for (const auto& e : op.basis()) f.add_term(e, {u(rng), u(rng)});
  return f;
}

inline double wrap_angle(double x) { return std::remainder(x, 2 * M_PI); }

}  // namespace detail

/// Compares operator evolution against transport along the classical flow.
inline CharacteristicsReport characteristics_check(const CpiSpec& spec, double t, std::uint64_t seed = 1) {
  CpiOperator op = build_cpi_hamiltonian(spec);
  LinearFlow flow = classical_flow(spec);
  CharacteristicsReport rep;
  std::mt19937_64 rng(seed);
  const TablePtr& table = op.table();

  // random wave function: operator evolution vs pullback, and the group law
  EnlargedWavefunction psi{table, {}};
  const std::vector<int> modes = spec.kind == Case::Coadjoint ? std::vector<int>{-2, -1, 0, 1, 3}
                                                               : std::vector<int>{0};
  for (int k : modes) psi.add(k, detail::random_multivector(op, rng));
  const double scale = std::max(1.0, psi.norm_inf());
  EnlargedWavefunction evolved = evolve(psi, op, t);
  rep.checks.push_back(residual_check("evolve_matches_characteristics",
                                      max_abs_difference(evolved, pullback(psi, spec, t)) / scale, 1e-9));
  EnlargedWavefunction two_step = evolve(evolve(psi, op, 0.4 * t), op, 0.6 * t);
  rep.checks.push_back(residual_check("evolve_group_law", max_abs_difference(two_step, evolved) / scale, 1e-9));
  rep.checks.push_back(residual_check("evolve_zero_time", max_abs_difference(evolve(psi, op, 0), psi), 0));

  rep.spectrum = spectrum(op, 0);
  rep.phases = detail::monomial_phases(op, flow, spec.kind == Case::Coadjoint ? std::vector<int>{-1, 0, 1}
                                                                             : std::vector<int>{0});
  if (!rep.phases.empty()) {
    double worst = 0;
    for (const auto& ph : rep.phases) worst = std::max(worst, ph.residual);
    rep.checks.push_back(residual_check("monomial_phases_match_classical_solution", worst, 1e-12));
  }

  if (spec.kind == Case::Grassmann) {
    CMultivector one = op.monomial(Exponents(table->size(), 0));
    rep.checks.push_back(residual_check("constant_wave_function_annihilated",
                                        max_abs_difference(op.apply(0, one), CMultivector(table)), 0));
  }

  if (spec.kind == Case::Coadjoint) {
    const double mu_b = -flow.f(flow.index_of("phi")).real();
    // narrow periodic Gaussian in phi centred at phi0, times a polynomial in eta and ghosts
    const double phi0 = 0.7, sigma = 0.3;
    CMultivector shape = CMultivector::scalar(table, 1.0) + CMultivector::generator(table, "eta", 0.5) +
                         CMultivector::generator(table, "eta", 1.0) * CMultivector::generator(table, "eta", 0.25) +
                         CMultivector::generator(table, "c_phi", 0.3) * CMultivector::generator(table, "c_eta");
    EnlargedWavefunction packet{table, {}};
    for (int k = -40; k <= 40; ++k) {
      const std::complex<double> a = std::exp(std::complex<double>(-0.5 * sigma * sigma * k * k, -k * phi0));
      packet.add(k, shape * a);
    }
    auto center = [&](const EnlargedWavefunction& w) {
      std::complex<double> moment = 0;
      for (int k = -40; k <= 40; ++k) {
        moment += std::conj(w.mode(k).scalar_part()) * w.mode(k - 1).scalar_part();
      }
      return std::arg(moment);
    };
    EnlargedWavefunction moved = evolve(packet, op, t);
    const double expected_center = detail::wrap_angle(phi0 - mu_b * t);
    rep.checks.push_back(residual_check("packet_center_follows_phi0_minus_muB_t",
                                        std::abs(detail::wrap_angle(center(moved) - expected_center)), 1e-9));
    // every mode keeps its eta and ghost dependence up to a common phase
    double marginal = 0;
    for (const auto& [k, f] : moved.modes) {
      const std::complex<double> phase = std::exp(std::complex<double>(0, k * mu_b * t));
      marginal = std::max(marginal, max_abs_difference(f, packet.mode(k) * phase));
    }
    rep.checks.push_back(residual_check("eta_and_ghost_dependence_invariant", marginal, 1e-12));
    const double period = 2 * M_PI / mu_b;
    rep.checks.push_back(residual_check("period_returns_identity",
                                        max_abs_difference(evolve(packet, op, period), packet), 1e-9));
    auto c = jacobi_fields(spec, {1.0, 1.0}, t);
    rep.checks.push_back(residual_check("jacobi_fields_constant",
                                        std::max(std::abs(c[0] - 1.0), std::abs(c[1] - 1.0)), 0));
  }
  return rep;
}

}  // namespace spindeq
