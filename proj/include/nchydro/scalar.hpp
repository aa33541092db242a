#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "nchydro/error.hpp"

namespace nchydro {

using Complexd = std::complex<double>;

inline mpq_class make_rational(long num, long den) {
  if (den == 0) fail(Errc::invalid_argument, "rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Complex number with exact rational real and imaginary parts.  This is the
// scalar field used by the exact arithmetic mode; the float mode uses
// std::complex<double> through the same templates.
struct GaussianRational {
  mpq_class re;
  mpq_class im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long value) : re(value), im(0) {}  // NOLINT: implicit by design
  GaussianRational(mpq_class real_part, mpq_class imag_part = 0)
      : re(std::move(real_part)), im(std::move(imag_part)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational conj() const { return GaussianRational(re, -im); }

  GaussianRational operator-() const { return GaussianRational(-re, -im); }

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
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    mpq_class d = b.re * b.re + b.im * b.im;
    if (sgn(d) == 0) fail(Errc::invalid_argument, "division by zero scalar");
    return GaussianRational((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

// Uniform interface over the two scalar fields.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational zero() { return GaussianRational(); }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational imaginary_unit() { return GaussianRational(mpq_class(0), mpq_class(1)); }
  static GaussianRational from_long(long v) { return GaussianRational(v); }
  static GaussianRational from_fraction(long num, long den) {
    return GaussianRational(make_rational(num, den));
  }
  static GaussianRational conj(const GaussianRational& s) { return s.conj(); }
  static bool is_zero(const GaussianRational& s) { return s.is_zero(); }
  static double abs_sq(const GaussianRational& s) {
    mpq_class n = s.re * s.re + s.im * s.im;
    return n.get_d();
  }
  static double to_double_real(const GaussianRational& s) { return s.re.get_d(); }
  static double to_double_imag(const GaussianRational& s) { return s.im.get_d(); }
  static bool is_real(const GaussianRational& s) { return sgn(s.im) == 0; }
  static int sign_real(const GaussianRational& s) { return sgn(s.re); }
  static Complexd to_complexd(const GaussianRational& s) {
    return Complexd(s.re.get_d(), s.im.get_d());
  }
};

template <>
struct ScalarOps<Complexd> {
  static constexpr bool exact = false;
  static Complexd zero() { return Complexd(0.0, 0.0); }
  static Complexd one() { return Complexd(1.0, 0.0); }
  static Complexd imaginary_unit() { return Complexd(0.0, 1.0); }
  static Complexd from_long(long v) { return Complexd(static_cast<double>(v), 0.0); }
  static Complexd from_fraction(long num, long den) {
    return Complexd(static_cast<double>(num) / static_cast<double>(den), 0.0);
  }
  static Complexd conj(const Complexd& s) { return std::conj(s); }
  static bool is_zero(const Complexd& s) { return s.real() == 0.0 && s.imag() == 0.0; }
  static double abs_sq(const Complexd& s) { return std::norm(s); }
  static double to_double_real(const Complexd& s) { return s.real(); }
  static double to_double_imag(const Complexd& s) { return s.imag(); }
  static bool is_real(const Complexd& s) { return s.imag() == 0.0; }
  static int sign_real(const Complexd& s) { return s.real() > 0.0 ? 1 : (s.real() < 0.0 ? -1 : 0); }
  static Complexd to_complexd(const Complexd& s) { return s; }
};

inline Complexd to_complexd(const GaussianRational& s) {
  return ScalarOps<GaussianRational>::to_complexd(s);
}
inline Complexd to_complexd(const Complexd& s) { return s; }

}  // namespace nchydro
