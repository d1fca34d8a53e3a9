#pragma once

// Finite graded algebra: odd (anticommuting, nilpotent) generators together
// with even generators truncated at a fixed power. Term normal form follows
// the generator-table order; every sign is a count of odd transpositions.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spindeq/exact.hpp"

namespace spindeq {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator^(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

class AlgebraError : public std::runtime_error {
 public:
  enum class Kind {
    TableMismatch,
    UnknownGenerator,
    DuplicateGenerator,
    EvenMeasure,
    OddExponential,
    ParityMismatch,
  };
  AlgebraError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Generator {
  std::string name;
  Parity parity = Parity::Odd;
  unsigned truncation = 1;  // max retained power; always 1 for odd generators
};

class GeneratorTable;
using TablePtr = std::shared_ptr<const GeneratorTable>;

class GeneratorTable {
 public:
  static constexpr unsigned kDefaultTruncation = 4;

  static TablePtr make(std::vector<Generator> entries) {
    for (auto& g : entries) {
      if (g.parity == Parity::Odd) g.truncation = 1;
      if (g.truncation == 0) {
        throw std::invalid_argument("generator '" + g.name + "' needs a positive truncation");
      }
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        if (entries[i].name == entries[j].name) {
          throw AlgebraError(AlgebraError::Kind::DuplicateGenerator,
                             "duplicate generator '" + entries[i].name + "'");
        }
      }
    }
    return TablePtr(new GeneratorTable(std::move(entries)));
  }

  static Generator odd(std::string name) { return {std::move(name), Parity::Odd, 1}; }
  static Generator even(std::string name, unsigned truncation = kDefaultTruncation) {
    return {std::move(name), Parity::Even, truncation};
  }

  std::size_t size() const { return entries_.size(); }
  const Generator& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Generator>& entries() const { return entries_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw AlgebraError(AlgebraError::Kind::UnknownGenerator,
                       "unknown generator '" + std::string(name) + "'");
  }

  friend bool operator==(const GeneratorTable& a, const GeneratorTable& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& x = a.entries_[i];
      const auto& y = b.entries_[i];
      if (x.name != y.name || x.parity != y.parity || x.truncation != y.truncation) return false;
    }
    return true;
  }

 private:
  explicit GeneratorTable(std::vector<Generator> entries) : entries_(std::move(entries)) {}
  std::vector<Generator> entries_;
};

using Exponents = std::vector<std::uint8_t>;

template <class Scalar>
class Multivector {
 public:
  using scalar_type = Scalar;
  using TermMap = std::map<Exponents, Scalar>;

  explicit Multivector(TablePtr table) : table_(std::move(table)) {}

  static Multivector scalar(TablePtr table, Scalar value) {
    Multivector m(std::move(table));
    m.add_term(Exponents(m.table_->size(), 0), std::move(value));
    return m;
  }

  static Multivector generator(TablePtr table, std::string_view name, Scalar coeff = Scalar(1)) {
    Multivector m(std::move(table));
    Exponents e(m.table_->size(), 0);
    e[m.table_->index_of(name)] = 1;
    m.add_term(std::move(e), std::move(coeff));
    return m;
  }

  /// Ordered product coeff * g1 * g2 * ... of the named generators.
  static Multivector word(TablePtr table, std::initializer_list<std::string_view> names,
                          Scalar coeff = Scalar(1)) {
    Multivector m = scalar(table, std::move(coeff));
    for (auto n : names) m = m * generator(table, n);
    return m;
  }

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar{} : it->second;
  }

  Scalar scalar_part() const { return coefficient(Exponents(table_->size(), 0)); }

  /// Coefficient of the ordered generator word (sign-adjusted to the normal form).
  Scalar coefficient_of(std::initializer_list<std::string_view> names) const {
    Multivector w = word(table_, names);
    if (w.is_zero()) return Scalar{};
    const auto& [exps, sign] = *w.terms_.begin();
    return coefficient(exps) * sign;
  }

  Parity term_parity(const Exponents& e) const {
    unsigned n = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if ((*table_)[i].parity == Parity::Odd) n += e[i];
    }
    return (n % 2) ? Parity::Odd : Parity::Even;
  }

  /// Parity if homogeneous; nullopt for mixed elements. Zero counts as even.
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [e, c] : terms_) {
      Parity q = term_parity(e);
      if (p && *p != q) return std::nullopt;
      p = q;
    }
    return p.value_or(Parity::Even);
  }

  /// Adds coeff * (normal-ordered monomial e). Powers above truncation vanish.
  void add_term(Exponents e, const Scalar& coeff) {
    if (e.size() != table_->size()) throw std::invalid_argument("exponent vector size mismatch");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > (*table_)[i].truncation) return;
    }
    if (spindeq::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), coeff);
    if (!inserted) {
      it->second += coeff;
      if (spindeq::is_zero(it->second)) terms_.erase(it);
    }
  }

  Multivector& operator+=(const Multivector& o) {
    check_table(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_table(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Multivector& operator*=(const Scalar& s) {
    if (spindeq::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= Scalar(-1); }
  friend Multivector operator*(Multivector a, const Scalar& s) { return a *= s; }
  friend Multivector operator*(const Scalar& s, Multivector a) { return a *= s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b) { return product(a, b); }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return *a.table_ == *b.table_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

  /// Graded-commutative product; sign counts odd generators of b passing odd generators of a.
  friend Multivector product(const Multivector& a, const Multivector& b) {
    a.check_table(b);
    const auto& tab = *a.table_;
    Multivector out(a.table_);
    Exponents e(tab.size());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        bool vanishes = false;
        unsigned swaps = 0;
        unsigned odd_after = 0;  // odd generators of a with index > current
        for (std::size_t k = tab.size(); k-- > 0;) {
          if (tab[k].parity == Parity::Odd) {
            if (ea[k] && eb[k]) {
              vanishes = true;
              break;
            }
            if (eb[k]) swaps += odd_after;
            if (ea[k]) ++odd_after;
          }
          e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
          if (e[k] > tab[k].truncation) {
            vanishes = true;
            break;
          }
        }
        if (vanishes) continue;
        Scalar c = ca * cb;
        if (swaps % 2) c = -c;
        out.add_term(e, c);
      }
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        os << "*" << (*table_)[i].name;
        if (e[i] > 1) os << "^" << int(e[i]);
      }
    }
    return os.str();
  }

  void check_table(const Multivector& o) const {
    if (table_ != o.table_ && !(*table_ == *o.table_)) {
      throw AlgebraError(AlgebraError::Kind::TableMismatch,
                         "multivectors belong to different generator tables");
    }
  }

 private:
  TablePtr table_;
  TermMap terms_;
};

template <class S>
Multivector<S> left_derivative(const Multivector<S>& a, std::string_view gen) {
  const auto& tab = *a.table();
  const std::size_t k = tab.index_of(gen);
  Multivector<S> out(a.table());
  for (const auto& [e, c] : a.terms()) {
    if (!e[k]) continue;
    Exponents d = e;
    --d[k];
    if (tab[k].parity == Parity::Odd) {
      unsigned before = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (tab[j].parity == Parity::Odd) before += e[j];
      }
      out.add_term(std::move(d), before % 2 ? S(-c) : c);
    } else {
      out.add_term(std::move(d), c * S(static_cast<long long>(e[k])));
    }
  }
  return out;
}

/// Iterated Berezin integral: the rightmost measure in `gens` acts first.
template <class S>
Multivector<S> berezin_integral(const Multivector<S>& a, const std::vector<std::string>& gens) {
  for (const auto& g : gens) {
    if ((*a.table())[a.table()->index_of(g)].parity != Parity::Odd) {
      throw AlgebraError(AlgebraError::Kind::EvenMeasure,
                         "Berezin integration over even generator '" + g + "'");
    }
  }
  Multivector<S> out = a;
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) out = left_derivative(out, *it);
  return out;
}

/// exp of an even element: exp(scalar part) times the terminating series of the nilpotent rest.
template <class S>
Multivector<S> graded_exp(const Multivector<S>& a) {
  auto p = a.parity();
  if (!p || *p != Parity::Even) {
    throw AlgebraError(AlgebraError::Kind::OddExponential,
                       "graded_exp requires an even element");
  }
  const S s = a.scalar_part();
  Multivector<S> nil = a - Multivector<S>::scalar(a.table(), s);
  Multivector<S> sum = Multivector<S>::scalar(a.table(), S(1));
  Multivector<S> power = sum;
  for (long long k = 1; !power.is_zero(); ++k) {
    power = power * nil;
    power *= S(1) / S(k);
    sum += power;
  }
  return sum * scalar_exp(s);
}

/// Simultaneous substitution of generators by elements of `target`. Generators
/// without an image map to the same-named generator of `target`.
template <class S>
Multivector<S> substitute(const Multivector<S>& a, const TablePtr& target,
                          const std::map<std::string, Multivector<S>>& images) {
  const auto& tab = *a.table();
  std::vector<Multivector<S>> image;
  image.reserve(tab.size());
  for (std::size_t i = 0; i < tab.size(); ++i) {
    auto it = images.find(tab[i].name);
    if (it == images.end()) {
      image.push_back(Multivector<S>::generator(target, tab[i].name));
      continue;
    }
    it->second.check_table(Multivector<S>(target));
    auto p = it->second.parity();
    if (!it->second.is_zero() && (!p || *p != tab[i].parity)) {
      throw AlgebraError(AlgebraError::Kind::ParityMismatch,
                         "image of '" + tab[i].name + "' has the wrong parity");
    }
    image.push_back(it->second);
  }
  Multivector<S> out(target);
  for (const auto& [e, c] : a.terms()) {
    Multivector<S> t = Multivector<S>::scalar(target, c);
    for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i) {
      for (unsigned r = 0; r < e[i]; ++r) t = t * image[i];
    }
    out += t;
  }
  return out;
}

template <class S>
Multivector<S> substitute(const Multivector<S>& a,
                          const std::map<std::string, Multivector<S>>& images) {
  return substitute(a, a.table(), images);
}

inline Multivector<std::complex<double>> to_numeric(const Multivector<ExactComplex>& a) {
  Multivector<std::complex<double>> out(a.table());
  for (const auto& [e, c] : a.terms()) out.add_term(e, c.to_complex());
  return out;
}

/// Largest coefficient modulus of a - b (for floating-point comparisons).
template <class S>
double max_abs_difference(const Multivector<S>& a, const Multivector<S>& b) {
  double m = 0;
  const Multivector<S> d = a - b;
  for (const auto& [e, c] : d.terms()) m = std::max(m, std::abs(to_complex(c)));
  return m;
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Multivector<S>& a) {
  return os << a.str();
}

}  // namespace spindeq
