#pragma once

// Spin 1/2 in the matrix and in the Grassmann representation. Wave functions
// are psi0 + psi1*xi; xi-hat multiplies by xi and xibar-hat is d/dxi.
// Ordered symbols are normal ordered (xi to the left of xibar).

#include <chrono>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "spindeq/grassmann.hpp"

namespace spindeq {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using SpinMultivector = Multivector<Complex>;

/// Generators used by symbols, kernels and their composition:
/// xi, xibar and the integration slots xi', xibar', xibar0.
inline const TablePtr& spin_table() {
  static const TablePtr table = GeneratorTable::make({
      GeneratorTable::odd("xi"),
      GeneratorTable::odd("xibar"),
      GeneratorTable::odd("xi_p"),
      GeneratorTable::odd("xibar_p"),
      GeneratorTable::odd("xibar_0"),
  });
  return table;
}

struct SpinState {
  Complex psi0;
  Complex psi1;

  double norm() const { return std::sqrt(std::norm(psi0) + std::norm(psi1)); }
  Eigen::Vector2cd vector() const { return {psi0, psi1}; }
  static SpinState from(const Eigen::Vector2cd& v) { return {v(0), v(1)}; }
};

struct MagneticField {
  double bx = 0;
  double by = 0;
  double bz = 0;
  double mu_b = 1;  // Bohr magneton e*hbar/(2mc)

  double magnitude() const { return std::sqrt(bx * bx + by * by + bz * bz); }
};

inline SpinMultivector to_wavefunction(const SpinState& s) {
  const auto& t = spin_table();
  return SpinMultivector::scalar(t, s.psi0) + SpinMultivector::generator(t, "xi", s.psi1);
}

/// Inverse of to_wavefunction; throws if the argument is not of the form a + b*xi.
inline SpinState from_wavefunction(const SpinMultivector& f) {
  SpinState s{f.scalar_part(), f.coefficient_of({"xi"})};
  if (max_abs_difference(to_wavefunction(s), f) > 1e-12 * (1 + s.norm())) {
    throw std::invalid_argument("not a spin wave function: " + f.str());
  }
  return s;
}

/// Polynomial in the two letters X (multiply by xi) and D (d/dxi).
class GrassmannOperator {
 public:
  enum class Letter { X, D };
  struct Word {
    Complex coeff;
    std::vector<Letter> letters;  // written left to right; the rightmost acts first
  };

  GrassmannOperator() = default;
  static GrassmannOperator identity(Complex c = 1) { return GrassmannOperator({{c, {}}}); }
  static GrassmannOperator xi() { return GrassmannOperator({{1, {Letter::X}}}); }
  static GrassmannOperator d_xi() { return GrassmannOperator({{1, {Letter::D}}}); }

  const std::vector<Word>& words() const { return words_; }

  SpinMultivector apply(const SpinMultivector& psi) const {
    SpinMultivector out(psi.table());
    const auto xi_gen = SpinMultivector::generator(psi.table(), "xi");
    for (const auto& w : words_) {
      SpinMultivector t = psi;
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        t = *it == Letter::X ? xi_gen * t : left_derivative(t, "xi");
      }
      out += t * w.coeff;
    }
    return out;
  }

  SpinState apply(const SpinState& s) const { return from_wavefunction(apply(to_wavefunction(s))); }

  /// Normal-ordered symbol: sum of c * xi^a xibar^b, from X X = D D = 0, D X = 1 - X D.
  SpinMultivector symbol() const {
    // coefficients indexed [a][b] of the normal-ordered form X^a D^b
    Complex total[2][2] = {};
    for (const auto& w : words_) {
      Complex cur[2][2] = {{w.coeff, 0}, {0, 0}};
      for (Letter l : w.letters) {
        Complex next[2][2] = {};
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            const Complex c = cur[a][b];
            if (c == Complex{}) continue;
            if (l == Letter::D) {
              if (b == 0) next[a][1] += c;
            } else if (b == 0) {
              if (a == 0) next[1][0] += c;
            } else {
              next[a][0] += c;  // X^a D X = X^a - X^{a+1} D
              if (a == 0) next[1][1] -= c;
            }
          }
        }
        std::copy(&next[0][0], &next[0][0] + 4, &cur[0][0]);
      }
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) total[a][b] += cur[a][b];
      }
    }
    const auto& t = spin_table();
    return SpinMultivector::scalar(t, total[0][0]) + SpinMultivector::word(t, {"xi"}, total[1][0]) +
           SpinMultivector::word(t, {"xibar"}, total[0][1]) +
           SpinMultivector::word(t, {"xi", "xibar"}, total[1][1]);
  }

  friend GrassmannOperator operator+(GrassmannOperator a, const GrassmannOperator& b) {
    a.words_.insert(a.words_.end(), b.words_.begin(), b.words_.end());
    return a;
  }
  friend GrassmannOperator operator-(GrassmannOperator a, const GrassmannOperator& b) {
    return a + b * Complex(-1);
  }
  friend GrassmannOperator operator*(GrassmannOperator a, Complex s) {
    for (auto& w : a.words_) w.coeff *= s;
    return a;
  }
  friend GrassmannOperator operator*(Complex s, GrassmannOperator a) { return a * s; }
  friend GrassmannOperator operator*(const GrassmannOperator& a, const GrassmannOperator& b) {
    GrassmannOperator out;
    for (const auto& wa : a.words_) {
      for (const auto& wb : b.words_) {
        Word w{wa.coeff * wb.coeff, wa.letters};
        w.letters.insert(w.letters.end(), wb.letters.begin(), wb.letters.end());
        out.words_.push_back(std::move(w));
      }
    }
    return out;
  }

 private:
  explicit GrassmannOperator(std::vector<Word> words) : words_(std::move(words)) {}
  std::vector<Word> words_;
};

struct SpinOperator {
  Matrix2 matrix;
  GrassmannOperator grassmann;

  SpinState apply_matrix(const SpinState& s) const { return SpinState::from(matrix * s.vector()); }
  SpinState apply_grassmann(const SpinState& s) const { return grassmann.apply(s); }

  friend SpinOperator operator*(const SpinOperator& a, const SpinOperator& b) {
    return {a.matrix * b.matrix, a.grassmann * b.grassmann};
  }
  friend SpinOperator operator-(const SpinOperator& a, const SpinOperator& b) {
    return {a.matrix - b.matrix, a.grassmann - b.grassmann};
  }
  friend SpinOperator operator*(Complex s, const SpinOperator& a) {
    return {s * a.matrix, s * a.grassmann};
  }
};

struct SpinOperators {
  SpinOperator sx, sy, sz, n;
};

inline SpinOperators spin_operators(double hbar = 1.0) {
  using G = GrassmannOperator;
  const Complex I(0, 1);
  Matrix2 sx, sy, n;
  sx << 0, 1, 1, 0;
  sy << 0, -I, I, 0;
  n << 0.5, 0, 0, -0.5;
  SpinOperators ops;
  ops.sx = {0.5 * hbar * sx, Complex(0.5 * hbar) * (G::d_xi() + G::xi())};
  ops.sy = {0.5 * hbar * sy, Complex(0, 0.5 * hbar) * (G::xi() - G::d_xi())};
  ops.n = {n, Complex(0.5) * (G::d_xi() * G::xi() - G::xi() * G::d_xi())};
  ops.sz = {hbar * n, Complex(hbar) * ops.n.grassmann};
  return ops;
}

/// -mu_B (B_z + (B_x + iB_y) xi + (B_x - iB_y) d/dxi - 2 B_z xi d/dxi), with the Pauli matrix form.
inline SpinOperator hamiltonian(const MagneticField& b) {
  using G = GrassmannOperator;
  const Complex I(0, 1);
  const double mu = b.mu_b;
  Matrix2 m;
  m << b.bz, b.bx - I * b.by, b.bx + I * b.by, -b.bz;
  G g = G::identity(b.bz) + Complex(b.bx, b.by) * G::xi() + Complex(b.bx, -b.by) * G::d_xi() -
        Complex(2 * b.bz) * (G::xi() * G::d_xi());
  return {-mu * m, Complex(-mu) * g};
}

/// -(e/mc) B.S with e/mc = 2 mu_B (hbar = 1).
inline SpinOperator hamiltonian_from_spin(const MagneticField& b) {
  auto s = spin_operators();
  const Complex k = -2.0 * b.mu_b;
  SpinOperator h{k * (b.bx * s.sx.matrix + b.by * s.sy.matrix + b.bz * s.sz.matrix),
                 k * (Complex(b.bx) * s.sx.grassmann + Complex(b.by) * s.sy.grassmann +
                      Complex(b.bz) * s.sz.grassmann)};
  return h;
}

/// Closed-form ordered symbol of the magnetic Hamiltonian.
inline SpinMultivector hamiltonian_symbol(const MagneticField& b) {
  const auto& t = spin_table();
  const double mu = b.mu_b;
  return SpinMultivector::scalar(t, -mu * b.bz) +
         SpinMultivector::word(t, {"xi"}, -mu * Complex(b.bx, b.by)) +
         SpinMultivector::word(t, {"xibar"}, -mu * Complex(b.bx, -b.by)) +
         SpinMultivector::word(t, {"xi", "xibar"}, 2 * mu * b.bz);
}

/// Closed-form integral kernel of the magnetic Hamiltonian, in (xi, xi').
inline SpinMultivector hamiltonian_kernel(const MagneticField& b) {
  const auto& t = spin_table();
  const double mu = b.mu_b;
  return SpinMultivector::scalar(t, -mu * Complex(b.bx, -b.by)) +
         SpinMultivector::word(t, {"xi"}, -mu * b.bz) + SpinMultivector::word(t, {"xi_p"}, -mu * b.bz) +
         SpinMultivector::word(t, {"xi", "xi_p"}, mu * Complex(b.bx, b.by));
}

inline SpinMultivector ordered_symbol(const SpinOperator& h) { return h.grassmann.symbol(); }

namespace detail {

inline SpinMultivector gen(std::string_view name) {
  return SpinMultivector::generator(spin_table(), name);
}

inline SpinMultivector rename(const SpinMultivector& f, const std::map<std::string, SpinMultivector>& m) {
  return substitute(f, m);
}

}  // namespace detail

/// Kernel(xi, xi') = Int dxibar Symbol(xi, xibar) exp(xibar (xi' - xi)).
inline SpinMultivector symbol_to_kernel(const SpinMultivector& symbol) {
  using detail::gen;
  SpinMultivector e = graded_exp(gen("xibar") * (gen("xi_p") - gen("xi")));
  return berezin_integral(symbol * e, {"xibar"});
}

inline SpinMultivector integral_kernel(const SpinOperator& h) { return symbol_to_kernel(ordered_symbol(h)); }

/// Int dxi' Kernel(xi, xi') psi(xi').
inline SpinMultivector apply_kernel(const SpinMultivector& kernel, const SpinMultivector& psi) {
  SpinMultivector shifted = detail::rename(psi, {{"xi", detail::gen("xi_p")}});
  return berezin_integral(kernel * shifted, {"xi_p"});
}

/// Int dxi' dxibar Symbol(xi, xibar) exp(xibar (xi' - xi)) psi(xi').
inline SpinMultivector apply_symbol(const SpinMultivector& symbol, const SpinMultivector& psi) {
  using detail::gen;
  SpinMultivector e = graded_exp(gen("xibar") * (gen("xi_p") - gen("xi")));
  SpinMultivector shifted = detail::rename(psi, {{"xi", gen("xi_p")}});
  return berezin_integral(symbol * e * shifted, {"xi_p", "xibar"});
}

/// Matrix of the operator with the given ordered symbol, columns = images of 1 and xi.
inline Matrix2 symbol_matrix(const SpinMultivector& symbol) {
  Matrix2 m;
  for (int col = 0; col < 2; ++col) {
    SpinState basis{col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0};
    SpinState img = from_wavefunction(apply_symbol(symbol, to_wavefunction(basis)));
    m(0, col) = img.psi0;
    m(1, col) = img.psi1;
  }
  return m;
}

/// Symbol of the product U1 U2:
/// Int dxi' dxibar' exp((xibar' - xibar0)(xi' - xi)) U1(xi, xibar') U2(xi', xibar0).
inline SpinMultivector compose_symbols(const SpinMultivector& u1, const SpinMultivector& u2) {
  using detail::gen;
  SpinMultivector left = detail::rename(u1, {{"xibar", gen("xibar_p")}});
  SpinMultivector right = detail::rename(u2, {{"xi", gen("xi_p")}, {"xibar", gen("xibar_0")}});
  SpinMultivector e = graded_exp((gen("xibar_p") - gen("xibar_0")) * (gen("xi_p") - gen("xi")));
  SpinMultivector composed = berezin_integral(e * left * right, {"xi_p", "xibar_p"});
  return detail::rename(composed, {{"xibar_0", gen("xibar")}});
}

/// exp(-i H_P t) in closed form: cos(mu|B|t) I + i sin(mu|B|t) (B/|B|).sigma.
inline Matrix2 pauli_propagator(const MagneticField& b, double t) {
  const double mag = b.magnitude();
  Matrix2 u = Matrix2::Identity();
  if (mag == 0) return u;
  const double angle = b.mu_b * mag * t;
  const Complex I(0, 1);
  Matrix2 ndots;
  ndots << b.bz, b.bx - I * b.by, b.bx + I * b.by, -b.bz;
  ndots /= mag;
  return std::cos(angle) * u + I * std::sin(angle) * ndots;
}

inline SpinState pauli_evolve(const SpinState& psi, const MagneticField& b, double t) {
  return SpinState::from(pauli_propagator(b, t) * psi.vector());
}

/// Ordered symbol of [1 - i eps H]^n composed slice by slice, eps = t/n.
inline SpinMultivector sliced_propagator_symbol(const MagneticField& b, double t, unsigned n) {
  if (n == 0) throw std::invalid_argument("slice count must be positive");
  const double eps = t / n;
  SpinMultivector slice =
      SpinMultivector::scalar(spin_table(), 1.0) + hamiltonian_symbol(b) * Complex(0, -eps);
  SpinMultivector u = slice;
  for (unsigned k = 1; k < n; ++k) u = compose_symbols(u, slice);
  return u;
}

inline Matrix2 sliced_propagator(const MagneticField& b, double t, unsigned n) {
  return symbol_matrix(sliced_propagator_symbol(b, t, n));
}

inline double max_element_error(const Matrix2& a, const Matrix2& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// psi(xi, t) = Int dxi0 U~(xi, t; xi0) psi(xi0) with the kernel of the sliced symbol.
inline SpinState propagate_with_kernel(const SpinMultivector& propagator_symbol, const SpinState& psi) {
  return from_wavefunction(apply_kernel(symbol_to_kernel(propagator_symbol), to_wavefunction(psi)));
}

struct ConvergencePoint {
  unsigned slices;
  double max_error;
  double wall_seconds;
};

inline std::vector<ConvergencePoint> propagator_sweep(const MagneticField& b, double t,
                                                      const std::vector<unsigned>& slices) {
  const Matrix2 exact = pauli_propagator(b, t);
  std::vector<ConvergencePoint> out;
  for (unsigned n : slices) {
    auto start = std::chrono::steady_clock::now();
    Matrix2 u = sliced_propagator(b, t, n);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    out.push_back({n, max_element_error(u, exact), dt.count()});
  }
  return out;
}

}  // namespace spindeq
