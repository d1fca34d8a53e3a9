#pragma once

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace spindeq {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational real and imaginary parts.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long long re) : re_(re) {}  // NOLINT: implicit from integers
  ExactComplex(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactComplex i() { return {0, 1}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re_), static_cast<double>(im_)};
  }

  ExactComplex conj() const { return {re_, -im_}; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  ExactComplex& operator/=(const ExactComplex& o) {
    Rational den = o.re_ * o.re_ + o.im_ * o.im_;
    if (den == 0) throw std::domain_error("exact complex division by zero");
    Rational r = (re_ * o.re_ + im_ * o.im_) / den;
    im_ = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(r);
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

  // Parseable text: "3/2", "-i", "(1/2 + 3*i)".
  std::string str() const {
    auto rat = [](const Rational& r) { return r.str(); };
    if (im_ == 0) return rat(re_);
    std::string im_part;
    if (im_ == 1) {
      im_part = "i";
    } else if (im_ == -1) {
      im_part = "-i";
    } else {
      im_part = rat(im_) + "*i";
    }
    if (re_ == 0) return im_part;
    if (im_ < 0) {
      Rational a = -im_;
      return "(" + rat(re_) + " - " + (a == 1 ? std::string("i") : rat(a) + "*i") + ")";
    }
    return "(" + rat(re_) + " + " + im_part + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << z.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

// Scalar hooks used by the templated algebra code.
inline bool is_zero(const ExactComplex& z) { return z.is_zero(); }
inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }

inline std::complex<double> to_complex(const ExactComplex& z) { return z.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

inline std::complex<double> scalar_exp(const std::complex<double>& z) { return std::exp(z); }
inline ExactComplex scalar_exp(const ExactComplex& z) {
  if (!z.is_zero()) {
    throw std::domain_error("exp of a nonzero exact scalar is not rational");
  }
  return ExactComplex(1);
}

}  // namespace spindeq
