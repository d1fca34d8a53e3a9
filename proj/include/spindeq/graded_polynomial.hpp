#pragma once

// Polynomials over named graded symbols with formal time derivatives and
// exact complex-rational coefficients. A monomial is a list of factors sorted
// by (name, dot order); odd factors appear at most once.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spindeq/exact.hpp"
#include "spindeq/grassmann.hpp"

namespace spindeq {

struct Symbol {
  std::string name;
  unsigned dot = 0;  // formal time-derivative order
  Parity parity = Parity::Even;
  bool constant = false;  // time independent: d/dt gives 0

  Symbol dotted() const { return {name, dot + 1, parity, constant}; }

  friend bool operator<(const Symbol& a, const Symbol& b) {
    return a.name != b.name ? a.name < b.name : a.dot < b.dot;
  }
  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name == b.name && a.dot == b.dot && a.parity == b.parity && a.constant == b.constant;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
};

struct Factor {
  Symbol symbol;
  unsigned power = 1;
  friend bool operator<(const Factor& a, const Factor& b) {
    if (a.symbol < b.symbol) return true;
    if (b.symbol < a.symbol) return false;
    return a.power < b.power;
  }
  friend bool operator==(const Factor& a, const Factor& b) {
    return a.symbol == b.symbol && a.power == b.power;
  }
};

using Monomial = std::vector<Factor>;

class SymbolError : public std::runtime_error {
 public:
  enum class Kind { ParityConflict, ParityMismatch, NotConstant, UnknownSymbol };
  SymbolError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Parity monomial_parity(const Monomial& m) {
  unsigned n = 0;
  for (const auto& f : m) {
    if (f.symbol.parity == Parity::Odd) n += f.power;
  }
  return n % 2 ? Parity::Odd : Parity::Even;
}

inline unsigned monomial_degree(const Monomial& m, bool dynamical_only = false) {
  unsigned d = 0;
  for (const auto& f : m) {
    if (!dynamical_only || !f.symbol.constant) d += f.power;
  }
  return d;
}

/// Normal-ordered product of two monomials. Returns sign 0 when an odd symbol repeats.
inline int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  unsigned swaps = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  // odd factors of a not yet emitted, i.e. those b's factor must pass
  unsigned odd_remaining_a = 0;
  for (const auto& f : a) {
    if (f.symbol.parity == Parity::Odd) ++odd_remaining_a;
  }
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].symbol < b[j].symbol)) {
      if (a[i].symbol.parity == Parity::Odd) --odd_remaining_a;
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].symbol < a[i].symbol) {
      if (b[j].symbol.parity == Parity::Odd) swaps += odd_remaining_a;
      out.push_back(b[j++]);
    } else {
      if (a[i].symbol != b[j].symbol) {
        throw SymbolError(SymbolError::Kind::ParityConflict,
                          "symbol '" + a[i].symbol.name + "' declared with conflicting attributes");
      }
      if (a[i].symbol.parity == Parity::Odd) return 0;
      out.push_back({a[i].symbol, a[i].power + b[j].power});
      ++i;
      ++j;
    }
  }
  return swaps % 2 ? -1 : 1;
}

class GradedPolynomial {
 public:
  using TermMap = std::map<Monomial, ExactComplex>;

  GradedPolynomial() = default;
  GradedPolynomial(ExactComplex c) {  // NOLINT: constants promote implicitly
    add_term({}, c);
  }
  GradedPolynomial(long long c) : GradedPolynomial(ExactComplex(c)) {}  // NOLINT

  static GradedPolynomial symbol(const Symbol& s, unsigned power = 1) {
    GradedPolynomial p;
    if (s.parity == Parity::Odd && power > 1) return p;
    p.add_term(power == 0 ? Monomial{} : Monomial{{s, power}}, ExactComplex(1));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  ExactComplex coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ExactComplex{} : it->second;
  }

  ExactComplex constant_term() const { return coefficient({}); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
      Parity q = monomial_parity(m);
      if (p && *p != q) return std::nullopt;
      p = q;
    }
    return p.value_or(Parity::Even);
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }

  /// All symbols appearing, with their attributes.
  std::set<Symbol> symbols() const {
    std::set<Symbol> out;
    for (const auto& [m, c] : terms_) {
      for (const auto& f : m) out.insert(f.symbol);
    }
    return out;
  }

  bool contains(const std::function<bool(const Symbol&)>& pred) const {
    for (const auto& [m, c] : terms_) {
      for (const auto& f : m) {
        if (pred(f.symbol)) return true;
      }
    }
    return false;
  }

  void add_term(Monomial m, const ExactComplex& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GradedPolynomial& operator+=(const GradedPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedPolynomial& operator-=(const GradedPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GradedPolynomial& operator*=(const ExactComplex& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
  friend GradedPolynomial operator-(GradedPolynomial a) { return a *= ExactComplex(-1); }

  friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
    GradedPolynomial out;
    Monomial m;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        int sign = multiply_monomials(ma, mb, m);
        if (sign == 0) continue;
        ExactComplex c = ca * cb;
        if (sign < 0) c = -c;
        out.add_term(m, c);
      }
    }
    return out;
  }

  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const GradedPolynomial& a, const GradedPolynomial& b) { return !(a == b); }

  GradedPolynomial pow(unsigned n) const {
    GradedPolynomial out(1);
    for (unsigned k = 0; k < n; ++k) out = out * *this;
    return out;
  }

 private:
  TermMap terms_;
};

/// Product of single factors in the given positional order (signs from reordering).
inline GradedPolynomial ordered_product(const std::vector<Factor>& factors,
                                        const ExactComplex& coeff = ExactComplex(1)) {
  GradedPolynomial out(coeff);
  for (const auto& f : factors) out = out * GradedPolynomial::symbol(f.symbol, f.power);
  return out;
}

/// Formal d/dt as an even derivation: no Koszul sign, constants are annihilated.
inline GradedPolynomial formal_time_derivative(const GradedPolynomial& p) {
  GradedPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      const auto& f = m[k];
      if (f.symbol.constant) continue;
      std::vector<Factor> factors(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(k));
      if (f.power > 1) factors.push_back({f.symbol, f.power - 1});
      factors.push_back({f.symbol.dotted(), 1});
      factors.insert(factors.end(), m.begin() + static_cast<std::ptrdiff_t>(k) + 1, m.end());
      out += ordered_product(factors, c * ExactComplex(static_cast<long long>(f.power)));
    }
  }
  return out;
}

inline GradedPolynomial time_derivative(const GradedPolynomial& p, unsigned order) {
  GradedPolynomial out = p;
  for (unsigned k = 0; k < order; ++k) out = formal_time_derivative(out);
  return out;
}

/// Left partial derivative with respect to `s` (graded sign for odd symbols).
inline GradedPolynomial partial_derivative(const GradedPolynomial& p, const Symbol& s) {
  GradedPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    unsigned odd_before = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      const auto& f = m[k];
      if (f.symbol.name == s.name && f.symbol.dot == s.dot) {
        Monomial d = m;
        ExactComplex coeff = c * ExactComplex(static_cast<long long>(f.power));
        if (s.parity == Parity::Odd && odd_before % 2) coeff = -coeff;
        if (f.power > 1) {
          d[k].power -= 1;
        } else {
          d.erase(d.begin() + static_cast<std::ptrdiff_t>(k));
        }
        out.add_term(std::move(d), coeff);
        break;
      }
      if (f.symbol.parity == Parity::Odd) odd_before += f.power;
    }
  }
  return out;
}

/// Simultaneous substitution; each binding must match the parity of its symbol.
/// Bindings are keyed by (name, dot order).
using Bindings = std::map<Symbol, GradedPolynomial>;

inline GradedPolynomial substitute(const GradedPolynomial& p, const Bindings& bindings) {
  for (const auto& [s, image] : bindings) {
    auto par = image.parity();
    if (!image.is_zero() && (!par || *par != s.parity)) {
      throw SymbolError(SymbolError::Kind::ParityMismatch,
                        "binding for '" + s.name + "' has mismatched parity");
    }
  }
  GradedPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    GradedPolynomial t(c);
    for (const auto& f : m) {
      auto it = bindings.find(f.symbol);
      if (it == bindings.end()) {
        t = t * GradedPolynomial::symbol(f.symbol, f.power);
      } else {
        t = t * it->second.pow(f.power);
      }
      if (t.is_zero()) break;
    }
    out += t;
  }
  return out;
}

/// Numeric evaluation of a polynomial whose symbols are all assigned values.
inline std::complex<double> evaluate(const GradedPolynomial& p,
                                     const std::map<std::string, std::complex<double>>& values) {
  std::complex<double> sum{};
  for (const auto& [m, c] : p.terms()) {
    std::complex<double> t = c.to_complex();
    for (const auto& f : m) {
      auto it = values.find(f.symbol.name);
      if (it == values.end() || f.symbol.dot != 0) {
        throw SymbolError(SymbolError::Kind::UnknownSymbol,
                          "no value for symbol '" + f.symbol.name + "'");
      }
      t *= std::pow(it->second, static_cast<int>(f.power));
    }
    sum += t;
  }
  return sum;
}

inline std::string symbol_text(const Symbol& s) {
  std::string out = s.name;
  for (unsigned k = 0; k < s.dot; ++k) out = "dot(" + out + ")";
  return out;
}

/// Text form accepted by the parser.
inline std::string to_string(const GradedPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    ExactComplex coeff = c;
    bool negative = false;
    if ((coeff.imag() == 0 && coeff.real() < 0) || (coeff.real() == 0 && coeff.imag() < 0)) {
      negative = true;
      coeff = -coeff;
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body;
    for (const auto& f : m) {
      if (!body.empty()) body += "*";
      body += symbol_text(f.symbol);
      if (f.power > 1) body += "^" + std::to_string(f.power);
    }
    if (body.empty()) {
      out += coeff.str();
    } else if (coeff == ExactComplex(1)) {
      out += body;
    } else {
      out += coeff.str() + "*" + body;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const GradedPolynomial& p) { return os << to_string(p); }

}  // namespace spindeq
