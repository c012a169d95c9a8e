#pragma once

#include <mpfr.h>

#include <complex>
#include <utility>

namespace rsequil::detail {

/// Minimal arbitrary-precision real over mpfr. Binary operations produce
/// results at the precision of the left operand; every value in one
/// evaluation context is expected to share a single precision.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  MpReal(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  MpReal(const MpReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  MpReal& operator+=(const MpReal& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator-=(const MpReal& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator*=(const MpReal& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator/=(const MpReal& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator*=(double d) {
    mpfr_mul_d(v_, v_, d, MPFR_RNDN);
    return *this;
  }

  friend MpReal operator+(MpReal a, const MpReal& b) { return a += b; }
  friend MpReal operator-(MpReal a, const MpReal& b) { return a -= b; }
  friend MpReal operator*(MpReal a, const MpReal& b) { return a *= b; }
  friend MpReal operator/(MpReal a, const MpReal& b) { return a /= b; }
  friend MpReal operator-(MpReal a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

  friend MpReal abs(MpReal a) {
    mpfr_abs(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend MpReal sin(MpReal a) {
    mpfr_sin(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend MpReal cos(MpReal a) {
    mpfr_cos(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend MpReal sinh(MpReal a) {
    mpfr_sinh(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend MpReal cosh(MpReal a) {
    mpfr_cosh(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend MpReal exp(MpReal a) {
    mpfr_exp(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend MpReal hypot(MpReal a, const MpReal& b) {
    mpfr_hypot(a.v_, a.v_, b.v_, MPFR_RNDN);
    return a;
  }
  friend MpReal pow_si(MpReal a, long e) {
    mpfr_pow_si(a.v_, a.v_, e, MPFR_RNDN);
    return a;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

 private:
  mpfr_t v_;
};

struct MpComplex {
  MpReal re, im;

  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  MpComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
  MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
  MpComplex(std::complex<double> z, mpfr_prec_t prec)
      : re(z.real(), prec), im(z.imag(), prec) {}

  std::complex<double> to_cdouble() const {
    return {re.to_double(), im.to_double()};
  }

  MpComplex& operator+=(const MpComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  MpComplex& operator-=(const MpComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  MpComplex& operator*=(const MpComplex& o) {
    MpReal r = re * o.re - im * o.im;
    MpReal i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  MpComplex& operator*=(const MpReal& s) {
    re *= s;
    im *= s;
    return *this;
  }
  MpComplex& operator/=(const MpComplex& o) {
    MpReal n = o.re * o.re + o.im * o.im;
    MpReal r = (re * o.re + im * o.im) / n;
    MpReal i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  MpComplex& operator/=(const MpReal& s) {
    re /= s;
    im /= s;
    return *this;
  }

  friend MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
  friend MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
  friend MpComplex operator*(MpComplex a, const MpComplex& b) { return a *= b; }
  friend MpComplex operator*(MpComplex a, const MpReal& s) { return a *= s; }
  friend MpComplex operator/(MpComplex a, const MpComplex& b) { return a /= b; }

  friend MpReal abs(const MpComplex& a) { return hypot(a.re, a.im); }
};

/// sin(u + iv) = sin u cosh v + i cos u sinh v
inline MpComplex mp_sin(const MpComplex& z) {
  return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

/// cos(u + iv) = cos u cosh v - i sin u sinh v
inline MpComplex mp_cos(const MpComplex& z) {
  return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))};
}

/// exp(i t z) for real t: e^{-t Im z} (cos(t Re z) + i sin(t Re z))
inline MpComplex mp_exp_i(double t, const MpComplex& z) {
  MpReal mag = exp(-(z.im * MpReal(t, z.im.prec())));
  MpReal ph = z.re * MpReal(t, z.re.prec());
  return {cos(ph) * mag, sin(ph) * mag};
}

}  // namespace rsequil::detail
