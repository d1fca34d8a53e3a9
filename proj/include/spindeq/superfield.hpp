#pragma once

// Superfields over the odd partners (theta, thetabar) of time, the supertime
// Berezin integral, and the dequantization map L -> i * Int dtheta dthetabar L
// with bilinear surface-term recognition.

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spindeq/graded_polynomial.hpp"
#include "spindeq/parser.hpp"

namespace spindeq {

enum class Case { Bosonic, Grassmann, Coadjoint };

inline const char* case_name(Case c) {
  switch (c) {
    case Case::Bosonic: return "bosonic";
    case Case::Grassmann: return "grassmann";
    case Case::Coadjoint: return "coadjoint";
  }
  return "?";
}

inline Case parse_case(const std::string& s) {
  if (s == "bosonic") return Case::Bosonic;
  if (s == "grassmann") return Case::Grassmann;
  if (s == "coadjoint") return Case::Coadjoint;
  throw std::invalid_argument("unknown case '" + s + "'");
}

class IdentityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// base + theta*c[1] + thetabar*c[2] + thetabar*theta*c[3].
struct Superfield {
  Symbol base;
  std::array<GradedPolynomial, 4> components;

  void validate() const {
    const Parity flipped = base.parity ^ Parity::Odd;
    const Parity expected[4] = {base.parity, flipped, flipped, base.parity};
    for (int k = 0; k < 4; ++k) {
      auto p = components[k].parity();
      if (!components[k].is_zero() && (!p || *p != expected[k])) {
        throw SymbolError(SymbolError::Kind::ParityMismatch,
                          "superfield component " + std::to_string(k) + " of '" + base.name +
                              "' has the wrong parity");
      }
    }
  }

  GradedPolynomial expansion(const Symbol& theta, const Symbol& thetabar) const {
    GradedPolynomial t = GradedPolynomial::symbol(theta);
    GradedPolynomial tb = GradedPolynomial::symbol(thetabar);
    return components[0] + t * components[1] + tb * components[2] + tb * t * components[3];
  }
};

/// Symbols and superfields of one of the three formulations.
struct CaseModel {
  Case kind = Case::Bosonic;
  SymbolContext symbols;
  Symbol theta;
  Symbol thetabar;
  std::vector<Symbol> fields;       // phi^a, ordered so that omega^{12} = +1
  std::vector<Symbol> multipliers;  // lambda_a
  std::vector<Symbol> ghosts;       // c^a
  std::vector<Symbol> antighosts;   // cbar_a
  std::vector<Superfield> superfields;
  GradedPolynomial kinetic;  // canonical kinetic term of the quantum Lagrangian

  GradedPolynomial operator()(std::string_view name) const { return symbols(name); }

  GradedPolynomial superfield_of(const Symbol& base) const {
    for (const auto& sf : superfields) {
      if (sf.base.name == base.name) return sf.expansion(theta, thetabar);
    }
    throw SymbolError(SymbolError::Kind::UnknownSymbol, "no superfield for '" + base.name + "'");
  }

  bool is_auxiliary(const Symbol& s) const {
    for (const auto& v : {&multipliers, &antighosts}) {
      for (const auto& a : *v) {
        if (a.name == s.name) return true;
      }
    }
    return false;
  }
};

namespace detail {

inline void declare_constants(SymbolContext& ctx, std::initializer_list<const char*> names) {
  for (auto n : names) ctx.constant(n);
}

}  // namespace detail

inline CaseModel standard_case(Case kind) {
  CaseModel m;
  m.kind = kind;
  auto& ctx = m.symbols;
  const ExactComplex I = ExactComplex::i();
  ctx.constant("hbar");
  switch (kind) {
    case Case::Bosonic: {
      ctx.declare("theta", Parity::Odd, true).declare("thetabar", Parity::Odd, true);
      ctx.even("q").even("p").odd("cq").odd("cp").odd("cbar_q").odd("cbar_p");
      ctx.even("lambda_q").even("lambda_p");
      detail::declare_constants(ctx, {"alpha", "a1", "a2", "a3", "a4", "k", "m"});
      m.theta = ctx.at("theta");
      m.thetabar = ctx.at("thetabar");
      m.fields = {ctx.at("q"), ctx.at("p")};
      m.multipliers = {ctx.at("lambda_q"), ctx.at("lambda_p")};
      m.ghosts = {ctx.at("cq"), ctx.at("cp")};
      m.antighosts = {ctx.at("cbar_q"), ctx.at("cbar_p")};
      m.superfields = {
          {ctx.at("q"), {ctx("q"), ctx("cq"), ctx("cbar_p"), ctx("lambda_p") * I}},
          {ctx.at("p"), {ctx("p"), ctx("cp"), -ctx("cbar_q"), ctx("lambda_q") * -I}},
      };
      m.kinetic = parse("p*dot(q)", ctx);
      break;
    }
    case Case::Grassmann: {
      ctx.declare("theta", Parity::Odd, true).declare("thetabar", Parity::Odd, true);
      ctx.odd("xi").odd("xibar").even("c_xi").even("c_xibar").even("cbar_xi").even("cbar_xibar");
      ctx.odd("lambda_xi").odd("lambda_xibar");
      detail::declare_constants(ctx, {"w", "muB", "B"});
      m.theta = ctx.at("theta");
      m.thetabar = ctx.at("thetabar");
      m.fields = {ctx.at("xi"), ctx.at("xibar")};
      m.multipliers = {ctx.at("lambda_xi"), ctx.at("lambda_xibar")};
      m.ghosts = {ctx.at("c_xi"), ctx.at("c_xibar")};
      m.antighosts = {ctx.at("cbar_xi"), ctx.at("cbar_xibar")};
      m.superfields = {
          {ctx.at("xi"), {ctx("xi"), ctx("c_xi"), ctx("cbar_xibar") * -I, -ctx("lambda_xibar")}},
          {ctx.at("xibar"), {ctx("xibar"), ctx("c_xibar"), ctx("cbar_xi") * -I, -ctx("lambda_xi")}},
      };
      m.kinetic = parse("i*xibar*dot(xi)", ctx);
      break;
    }
    case Case::Coadjoint: {
      ctx.declare("chi", Parity::Odd, true).declare("chibar", Parity::Odd, true);
      ctx.even("phi").even("eta").odd("c_phi").odd("c_eta").odd("cbar_phi").odd("cbar_eta");
      ctx.even("Lambda_phi").even("Lambda_eta");
      detail::declare_constants(ctx, {"muB", "gamma"});
      m.theta = ctx.at("chi");
      m.thetabar = ctx.at("chibar");
      m.fields = {ctx.at("phi"), ctx.at("eta")};
      m.multipliers = {ctx.at("Lambda_phi"), ctx.at("Lambda_eta")};
      m.ghosts = {ctx.at("c_phi"), ctx.at("c_eta")};
      m.antighosts = {ctx.at("cbar_phi"), ctx.at("cbar_eta")};
      m.superfields = {
          {ctx.at("phi"), {ctx("phi"), ctx("c_phi"), ctx("cbar_eta"), ctx("Lambda_eta") * I}},
          {ctx.at("eta"), {ctx("eta"), ctx("c_eta"), -ctx("cbar_phi"), ctx("Lambda_phi") * -I}},
      };
      m.kinetic = parse("eta*dot(phi)", ctx);
      break;
    }
  }
  for (const auto& sf : m.superfields) sf.validate();
  return m;
}

inline std::vector<Superfield> standard_superfields(Case kind) {
  return standard_case(kind).superfields;
}

/// Sign of the supertime measure, fixed by the free-particle identity.
inline constexpr int kSupertimeMeasureSign = +1;

/// i * Int dtheta dthetabar g: thetabar is integrated first (left derivatives).
inline GradedPolynomial supertime_integral(const GradedPolynomial& g, const CaseModel& model,
                                           bool with_hbar = false) {
  GradedPolynomial inner = partial_derivative(g, model.thetabar);
  GradedPolynomial out = partial_derivative(inner, model.theta);
  out *= ExactComplex(0, kSupertimeMeasureSign);
  if (with_hbar) out = model("hbar") * out;
  return out;
}

/// Bindings field -> superfield, including every time derivative present in `p`.
inline Bindings superfield_bindings(const GradedPolynomial& p, const CaseModel& model) {
  Bindings b;
  for (const auto& sf : model.superfields) b[sf.base] = sf.expansion(model.theta, model.thetabar);
  for (const auto& s : p.symbols()) {
    if (s.dot == 0) continue;
    for (const auto& sf : model.superfields) {
      if (sf.base.name == s.name) {
        b[s] = time_derivative(sf.expansion(model.theta, model.thetabar), s.dot);
      }
    }
  }
  return b;
}

/// H(fields) -> H(superfields) by polynomial substitution.
inline GradedPolynomial compose_observable(const GradedPolynomial& h, const CaseModel& model) {
  return substitute(h, superfield_bindings(h, model));
}

/// Same map via H + D H + D^2 H / 2 with D = sum_a Delta^a d/dphi^a; D^3 vanishes
/// because every Delta carries theta or thetabar.
inline GradedPolynomial compose_observable_taylor(const GradedPolynomial& h, const CaseModel& model) {
  auto D = [&](const GradedPolynomial& f) {
    GradedPolynomial out;
    for (const auto& sf : model.superfields) {
      GradedPolynomial delta = sf.expansion(model.theta, model.thetabar) - sf.components[0];
      out += delta * partial_derivative(f, sf.base);
    }
    return out;
  };
  GradedPolynomial first = D(h);
  GradedPolynomial second = D(first);
  second *= ExactComplex(Rational(1, 2));
  return h + first + second;
}

struct Dequantization {
  GradedPolynomial raw;             // i * Int dtheta dthetabar L[superfields]
  GradedPolynomial cpi_lagrangian;  // raw minus the recognized total derivative
  GradedPolynomial primitive;       // G with surface_term = dG/dt
  GradedPolynomial surface_term;
};

/// Integrates by parts every bilinear term whose time derivative falls on a
/// multiplier or antighost, leaving a first-order CPI Lagrangian.
inline Dequantization dequantize(const GradedPolynomial& l, const CaseModel& model,
                                 bool with_hbar = false) {
  Dequantization out;
  out.raw = supertime_integral(compose_observable(l, model), model, with_hbar);
  GradedPolynomial remaining = out.raw;
  for (int guard = 0;; ++guard) {
    if (guard > 10000) throw IdentityViolation("surface-term recognition did not terminate");
    const GradedPolynomial::TermMap::value_type* hit = nullptr;
    std::size_t pos = 0;
    for (const auto& term : remaining.terms()) {
      const auto& m = term.first;
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k].symbol.dot > 0 && model.is_auxiliary(m[k].symbol)) {
          hit = &term;
          pos = k;
          break;
        }
      }
      if (hit) break;
    }
    if (!hit) break;
    const Monomial& m = hit->first;
    const unsigned dynamical = monomial_degree(m, true);
    if (dynamical < 1 || dynamical > 2 || m[pos].power != 1) {
      throw IdentityViolation("non-bilinear derivative term " +
                              to_string(ordered_product(m, hit->second)) +
                              " is not a recognizable surface term");
    }
    std::vector<Factor> undotted(m.begin(), m.end());
    undotted[pos].symbol.dot -= 1;
    GradedPolynomial piece = ordered_product(undotted, hit->second);
    out.primitive += piece;
    remaining -= formal_time_derivative(piece);
  }
  out.cpi_lagrangian = std::move(remaining);
  out.surface_term = formal_time_derivative(out.primitive);
  if (out.cpi_lagrangian + out.surface_term != out.raw) {
    throw IdentityViolation("decomposition does not reproduce the raw expansion");
  }
  return out;
}

/// The canonical CPI Lagrangian
///   lambda_a dphi^a + i cbar_a dc^a - lambda_a w^{ab} d_b H - i cbar_a w^{ad} d_d d_b H c^b
/// for even phase spaces with w = [[0,1],[-1,0]].
inline GradedPolynomial canonical_cpi_lagrangian(const GradedPolynomial& h, const CaseModel& model) {
  if (model.kind == Case::Grassmann) {
    throw std::logic_error("canonical_cpi_lagrangian needs an even phase space");
  }
  const ExactComplex I = ExactComplex::i();
  const int omega[2][2] = {{0, 1}, {-1, 0}};
  auto sym = [](const Symbol& s) { return GradedPolynomial::symbol(s); };
  GradedPolynomial out;
  for (int a = 0; a < 2; ++a) {
    out += sym(model.multipliers[a]) * sym(model.fields[a].dotted());
    out += sym(model.antighosts[a]) * sym(model.ghosts[a].dotted()) * I;
    for (int b = 0; b < 2; ++b) {
      if (!omega[a][b]) continue;
      GradedPolynomial dbH = partial_derivative(h, model.fields[b]);
      out -= sym(model.multipliers[a]) * dbH * ExactComplex(omega[a][b]);
    }
    for (int d = 0; d < 2; ++d) {
      if (!omega[a][d]) continue;
      for (int b = 0; b < 2; ++b) {
        GradedPolynomial ddbH = partial_derivative(partial_derivative(h, model.fields[b]), model.fields[d]);
        out -= sym(model.antighosts[a]) * ddbH * sym(model.ghosts[b]) * (I * ExactComplex(omega[a][d]));
      }
    }
  }
  return out;
}

/// Grassmann CPI Lagrangian for H = h0 + b*xi*xibar:
///   lambda_xi dxi + lambda_xibar dxibar + i cbar_xi dc_xi + i cbar_xibar dc_xibar
///   - i b (lambda_xi xi - lambda_xibar xibar + i cbar_xi c_xi - i cbar_xibar c_xibar).
inline GradedPolynomial grassmann_cpi_lagrangian(const GradedPolynomial& h, const CaseModel& model) {
  const auto& ctx = model.symbols;
  GradedPolynomial b = partial_derivative(partial_derivative(h, ctx.at("xi")), ctx.at("xibar"));
  GradedPolynomial rest = h - b * ctx("xi") * ctx("xibar");
  if (rest.contains([](const Symbol& s) { return !s.constant; })) {
    throw std::invalid_argument("Grassmann Hamiltonian must have the form h0 + b*xi*xibar");
  }
  return parse(
             "lambda_xi*dot(xi) + lambda_xibar*dot(xibar) + i*cbar_xi*dot(c_xi) + "
             "i*cbar_xibar*dot(c_xibar)",
             ctx) -
         b * parse("i*(lambda_xi*xi - lambda_xibar*xibar + i*cbar_xi*c_xi - i*cbar_xibar*c_xibar)",
                   ctx);
}

/// Expected surface term of each formulation: d/dt of the returned primitive.
inline GradedPolynomial expected_surface_primitive(const CaseModel& model) {
  switch (model.kind) {
    case Case::Bosonic: return -parse("lambda_p*p + i*cbar_p*cp", model.symbols);
    case Case::Grassmann: return -parse("lambda_xibar*xibar + i*cbar_xibar*c_xibar", model.symbols);
    case Case::Coadjoint: return -parse("Lambda_eta*eta + i*cbar_eta*c_eta", model.symbols);
  }
  return {};
}

/// Splits L = kinetic + extra - H: returns H and the extra kinetic part.
inline std::pair<GradedPolynomial, GradedPolynomial> split_lagrangian(const GradedPolynomial& l,
                                                                      const CaseModel& model) {
  GradedPolynomial rest = l - model.kinetic;
  GradedPolynomial h;
  GradedPolynomial extra;
  for (const auto& [m, c] : rest.terms()) {
    bool dotted = false;
    for (const auto& f : m) dotted = dotted || f.symbol.dot > 0;
    (dotted ? extra : h).add_term(m, dotted ? c : -c);
  }
  return {h, extra};
}

struct DequantizationCheck {
  Dequantization result;
  GradedPolynomial hamiltonian;
  GradedPolynomial expected_lagrangian;
  GradedPolynomial expected_surface;
  GradedPolynomial lagrangian_residual;
  GradedPolynomial surface_residual;
  GradedPolynomial total_residual;  // raw - expected_lagrangian - expected_surface

  bool passed() const {
    return lagrangian_residual.is_zero() && surface_residual.is_zero() && total_residual.is_zero();
  }
};

/// Dequantizes `l` and compares against the CPI Lagrangian built directly from
/// its Hamiltonian plus the expected boundary term.
inline DequantizationCheck verify_dequantization(const GradedPolynomial& l, const CaseModel& model) {
  DequantizationCheck chk;
  auto [h, extra] = split_lagrangian(l, model);
  chk.hamiltonian = h;
  GradedPolynomial primitive = expected_surface_primitive(model);
  if (!extra.is_zero()) {
    // Only the constant one-form shift gamma*dot(phi) of the orbit Lagrangian is recognized.
    const bool gamma_shift = model.kind == Case::Coadjoint &&
                             extra == parse("gamma*dot(phi)", model.symbols);
    if (!gamma_shift) {
      throw std::invalid_argument("unsupported kinetic term " + to_string(extra));
    }
    primitive -= parse("gamma*Lambda_eta", model.symbols);
  }
  chk.expected_lagrangian = model.kind == Case::Grassmann ? grassmann_cpi_lagrangian(h, model)
                                                          : canonical_cpi_lagrangian(h, model);
  chk.expected_surface = formal_time_derivative(primitive);
  chk.result = dequantize(l, model);
  chk.lagrangian_residual = chk.result.cpi_lagrangian - chk.expected_lagrangian;
  chk.surface_residual = chk.result.surface_term - chk.expected_surface;
  chk.total_residual = chk.result.raw - chk.expected_lagrangian - chk.expected_surface;
  return chk;
}

/// Lagrangians of the built-in systems.
inline GradedPolynomial builtin_lagrangian(Case kind, const std::string& name, const CaseModel& model) {
  const auto& ctx = model.symbols;
  switch (kind) {
    case Case::Bosonic:
      if (name == "free") return parse("p*dot(q) - p^2/2", ctx);
      if (name == "harmonic") return parse("p*dot(q) - p^2/2 - q^2/2", ctx);
      if (name == "anharmonic") return parse("p*dot(q) - p^2/2 - q^4/4", ctx);
      if (name == "quartic") return parse("p*dot(q) - p^2/2 - a1*q - a2*q^2 - a3*q^3 - a4*q^4", ctx);
      if (name == "dilation") return parse("p*dot(q) - alpha*q*p", ctx);
      break;
    case Case::Grassmann:
      if (name == "pauli-z") return parse("i*xibar*dot(xi) + (w/2)*(1 - 2*xi*xibar)", ctx);
      break;
    case Case::Coadjoint:
      if (name == "precession") return parse("eta*dot(phi) + muB*eta", ctx);
      if (name == "precession-gamma") return parse("(gamma + eta)*dot(phi) + muB*eta", ctx);
      break;
  }
  throw std::invalid_argument("unknown builtin '" + name + "' for case " + case_name(kind));
}

inline std::vector<std::string> builtin_names(Case kind) {
  switch (kind) {
    case Case::Bosonic: return {"free", "harmonic", "anharmonic", "quartic", "dilation"};
    case Case::Grassmann: return {"pauli-z"};
    case Case::Coadjoint: return {"precession", "precession-gamma"};
  }
  return {};
}

}  // namespace spindeq
