#pragma once

// Small text grammar for Lagrangians and Hamiltonians:
//
//   expr    := term { ('+' | '-') term }
//   term    := unary { ('*' | '/') unary }
//   unary   := ('+' | '-') unary | power
//   power   := primary [ '^' integer ]
//   primary := number | 'i' | identifier | 'dot' '(' expr ')' | '(' expr ')'
//   number  := digits [ '.' digits ]
//
// Symbols must be declared in a SymbolContext. `i` is the imaginary unit.
// Division is allowed only by nonzero constants.

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spindeq/graded_polynomial.hpp"

namespace spindeq {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownSymbol, OddSquared, BadDivision };
  ParseError(Kind kind, std::size_t position, const std::string& what)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        kind_(kind),
        position_(position) {}
  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

class SymbolContext {
 public:
  SymbolContext& declare(const std::string& name, Parity parity, bool constant = false) {
    if (name == "i" || name == "dot") {
      throw std::invalid_argument("'" + name + "' is reserved");
    }
    auto [it, inserted] = symbols_.try_emplace(name, Symbol{name, 0, parity, constant});
    if (!inserted && it->second != Symbol{name, 0, parity, constant}) {
      throw SymbolError(SymbolError::Kind::ParityConflict, "symbol '" + name + "' redeclared");
    }
    return *this;
  }
  SymbolContext& even(const std::string& name) { return declare(name, Parity::Even); }
  SymbolContext& odd(const std::string& name) { return declare(name, Parity::Odd); }
  SymbolContext& constant(const std::string& name) { return declare(name, Parity::Even, true); }

  const Symbol* find(std::string_view name) const {
    auto it = symbols_.find(std::string(name));
    return it == symbols_.end() ? nullptr : &it->second;
  }

  const Symbol& at(std::string_view name) const {
    if (const Symbol* s = find(name)) return *s;
    throw SymbolError(SymbolError::Kind::UnknownSymbol, "undeclared symbol '" + std::string(name) + "'");
  }

  /// Polynomial consisting of the single declared symbol.
  GradedPolynomial operator()(std::string_view name) const {
    return GradedPolynomial::symbol(at(name));
  }

  const std::map<std::string, Symbol>& all() const { return symbols_; }

 private:
  std::map<std::string, Symbol> symbols_;
};

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, const SymbolContext& ctx) : text_(text), ctx_(ctx) {}

  GradedPolynomial run() {
    GradedPolynomial p = expr();
    skip();
    if (pos_ != text_.size()) fail(ParseError::Kind::Syntax, "unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& what) const {
    throw ParseError(kind, pos_, what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(ParseError::Kind::Syntax, std::string("expected '") + c + "'");
  }

  GradedPolynomial multiply(const GradedPolynomial& a, const GradedPolynomial& b, std::size_t at) {
    Monomial m;
    for (const auto& [ma, ca] : a.terms()) {
      for (const auto& [mb, cb] : b.terms()) {
        if (multiply_monomials(ma, mb, m) == 0) {
          throw ParseError(ParseError::Kind::OddSquared, at, "odd symbol squared");
        }
      }
    }
    return a * b;
  }

  GradedPolynomial expr() {
    GradedPolynomial p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  GradedPolynomial term() {
    GradedPolynomial p = unary();
    for (;;) {
      skip();
      std::size_t at = pos_;
      if (accept('*')) {
        p = multiply(p, unary(), at);
      } else if (accept('/')) {
        GradedPolynomial d = unary();
        if (!d.is_constant() || d.is_zero()) {
          throw ParseError(ParseError::Kind::BadDivision, at,
                           "division only by nonzero numeric constants");
        }
        p *= ExactComplex(1) / d.constant_term();
      } else {
        return p;
      }
    }
  }

  GradedPolynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  GradedPolynomial power() {
    GradedPolynomial base = primary();
    skip();
    std::size_t at = pos_;
    if (!accept('^')) return base;
    skip();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(ParseError::Kind::Syntax, "expected integer exponent");
    }
    unsigned n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + static_cast<unsigned>(text_[pos_++] - '0');
    }
    GradedPolynomial out(1);
    for (unsigned k = 0; k < n; ++k) out = multiply(out, base, at);
    return out;
  }

  GradedPolynomial primary() {
    skip();
    if (pos_ >= text_.size()) fail(ParseError::Kind::Syntax, "unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      std::string id = identifier();
      if (id == "i") return GradedPolynomial(ExactComplex::i());
      if (id == "dot") {
        expect('(');
        GradedPolynomial inner = expr();
        expect(')');
        return formal_time_derivative(inner);
      }
      const Symbol* s = ctx_.find(id);
      if (!s) throw ParseError(ParseError::Kind::UnknownSymbol, start, "unknown symbol '" + id + "'");
      return GradedPolynomial::symbol(*s);
    }
    if (accept('(')) {
      GradedPolynomial inner = expr();
      expect(')');
      return inner;
    }
    fail(ParseError::Kind::Syntax, std::string("unexpected character '") + c + "'");
  }

  GradedPolynomial number() {
    Rational value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_++] - '0');
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      Rational scale = 1;
      bool any = false;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        scale /= 10;
        value += scale * (text_[pos_++] - '0');
        any = true;
      }
      if (!any) fail(ParseError::Kind::Syntax, "malformed number");
    }
    return GradedPolynomial(ExactComplex(value));
  }

  std::string identifier() {
    std::string id;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      id += text_[pos_++];
    }
    return id;
  }

  std::string_view text_;
  const SymbolContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GradedPolynomial parse(std::string_view text, const SymbolContext& ctx) {
  return detail::Parser(text, ctx).run();
}

}  // namespace spindeq
