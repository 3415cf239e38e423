#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>

namespace spinorlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

// Exact element of Q[i].
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(int r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational den = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << '(' << z.re << ", " << z.im << ')';
  }
};

inline bool is_zero(const GaussianRational& z) { return z.re == 0 && z.im == 0; }
inline bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }
inline Complex conj(const Complex& z) { return std::conj(z); }

inline Complex to_complex(const GaussianRational& z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}
inline Complex to_complex(const Complex& z) { return z; }

inline double magnitude(const GaussianRational& z) { return std::abs(to_complex(z)); }
inline double magnitude(const Complex& z) { return std::abs(z); }

inline std::string to_string(const Rational& q) { return q.str(); }

// Uniform construction for both scalar kinds.
template <class S>
S make_scalar(const Rational& re, const Rational& im = Rational(0));

template <>
inline GaussianRational make_scalar<GaussianRational>(const Rational& re, const Rational& im) {
  return {re, im};
}
template <>
inline Complex make_scalar<Complex>(const Rational& re, const Rational& im) {
  return {static_cast<double>(re), static_cast<double>(im)};
}

template <class S>
S imaginary_unit() {
  return make_scalar<S>(Rational(0), Rational(1));
}

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, GaussianRational>;

}  // namespace spinorlab
