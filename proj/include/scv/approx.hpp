#pragma once

#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "scv/scalar.hpp"

namespace scv {

inline constexpr long kMinPrecisionBits = 128;
inline constexpr long kDefaultPrecisionBits = 256;

/// Precision for the approximate backend; SCV_PRECISION_BITS overrides the
/// default (values below the minimum are clamped up).
inline long precision_bits_from_env() {
  if (const char* env = std::getenv("SCV_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0') return v < kMinPrecisionBits ? kMinPrecisionBits : v;
  }
  return kDefaultPrecisionBits;
}

namespace detail {

/// Owning mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(long bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mpfr(Mpfr&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }

 private:
  mpfr_t v_;
};

}  // namespace detail

/// Complex number with MPFR real and imaginary parts of a fixed precision.
class ApproxScalar {
 public:
  ApproxScalar() : ApproxScalar(kDefaultPrecisionBits) {}
  explicit ApproxScalar(long bits) : re_(check(bits)), im_(bits) {}
  ApproxScalar(long value, long bits) : ApproxScalar(bits) { mpfr_set_si(re_.get(), value, MPFR_RNDN); }  // NOLINT

  long precision_bits() const { return re_.bits(); }
  const detail::Mpfr& real() const { return re_; }
  const detail::Mpfr& imag() const { return im_; }
  detail::Mpfr& real() { return re_; }
  detail::Mpfr& imag() { return im_; }

  double real_double() const { return mpfr_get_d(re_.get(), MPFR_RNDN); }
  double imag_double() const { return mpfr_get_d(im_.get(), MPFR_RNDN); }

  bool is_zero() const { return mpfr_zero_p(re_.get()) && mpfr_zero_p(im_.get()); }

  /// |z| rounded to the working precision.
  detail::Mpfr magnitude() const {
    detail::Mpfr r(precision_bits());
    mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
    return r;
  }

  /// log2 |z|; -inf for zero.
  double log2_magnitude() const {
    if (is_zero()) return -1.0 / 0.0;
    detail::Mpfr m = magnitude();
    long exp = 0;
    double mant = mpfr_get_d_2exp(&exp, m.get(), MPFR_RNDN);
    return std::log2(mant) + static_cast<double>(exp);
  }

  ApproxScalar operator-() const {
    ApproxScalar r = *this;
    mpfr_neg(r.re_.get(), r.re_.get(), MPFR_RNDN);
    mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
    return r;
  }
  ApproxScalar& operator+=(const ApproxScalar& o) {
    mpfr_add(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_add(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    return *this;
  }
  ApproxScalar& operator-=(const ApproxScalar& o) {
    mpfr_sub(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_sub(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    return *this;
  }
  ApproxScalar& operator*=(const ApproxScalar& o) {
    const long p = precision_bits() + 16;
    detail::Mpfr ac(p), bd(p), ad(p), bc(p);
    mpfr_mul(ac.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_mul(bd.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_mul(ad.get(), re_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_mul(bc.get(), im_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_sub(re_.get(), ac.get(), bd.get(), MPFR_RNDN);
    mpfr_add(im_.get(), ad.get(), bc.get(), MPFR_RNDN);
    return *this;
  }
  ApproxScalar& operator/=(const ApproxScalar& o) {
    if (o.is_zero()) throw FieldError("division by zero");
    const long p = precision_bits() + 16;
    detail::Mpfr den(p), t(p), u(p), nre(p), nim(p);
    mpfr_sqr(den.get(), o.re_.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), o.im_.get(), MPFR_RNDN);
    mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
    // (a+bi)(c−di) / (c²+d²)
    mpfr_mul(t.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_mul(u.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_add(nre.get(), t.get(), u.get(), MPFR_RNDN);
    mpfr_mul(t.get(), im_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_mul(u.get(), re_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_sub(nim.get(), t.get(), u.get(), MPFR_RNDN);
    mpfr_div(re_.get(), nre.get(), den.get(), MPFR_RNDN);
    mpfr_div(im_.get(), nim.get(), den.get(), MPFR_RNDN);
    return *this;
  }

  friend ApproxScalar operator+(ApproxScalar a, const ApproxScalar& b) { return a += b; }
  friend ApproxScalar operator-(ApproxScalar a, const ApproxScalar& b) { return a -= b; }
  friend ApproxScalar operator*(ApproxScalar a, const ApproxScalar& b) { return a *= b; }
  friend ApproxScalar operator/(ApproxScalar a, const ApproxScalar& b) { return a /= b; }

  /// Exact comparison of the stored binary values.
  friend bool operator==(const ApproxScalar& a, const ApproxScalar& b) {
    return mpfr_equal_p(a.re_.get(), b.re_.get()) && mpfr_equal_p(a.im_.get(), b.im_.get());
  }

  std::string str(int digits = 30) const {
    auto fmt = [digits](mpfr_srcptr v) {
      char* buf = nullptr;
      mpfr_asprintf(&buf, "%.*Rg", digits, v);
      std::string s(buf);
      mpfr_free_str(buf);
      return s;
    };
    return fmt(re_.get()) + (mpfr_signbit(im_.get()) ? "-" : "+") + [&] {
      detail::Mpfr a(precision_bits());
      mpfr_abs(a.get(), im_.get(), MPFR_RNDN);
      return fmt(a.get());
    }() + "i";
  }

 private:
  static long check(long bits) {
    if (bits < kMinPrecisionBits)
      throw DomainError("approximate precision must be at least " + std::to_string(kMinPrecisionBits) + " bits");
    return bits;
  }

  detail::Mpfr re_;
  detail::Mpfr im_;
};

/// Rounds an exact Scalar to `bits` of precision with relative error at most
/// 2^(1−bits). A near-cancelling real sum rat + irr·√δ is evaluated as
/// norm / (rat − irr·√δ) so no digits are lost.
inline ApproxScalar approximate(const Scalar& x, long bits) {
  ApproxScalar out(bits);
  if (x.is_zero()) return out;
  const long work = bits + 32;
  detail::Mpfr rat(work), irr(work), root(work);
  mpfr_set_q(rat.get(), x.rat().get_mpq_t(), MPFR_RNDN);
  if (x.is_rational()) {
    mpfr_set(out.real().get(), rat.get(), MPFR_RNDN);
    return out;
  }
  mpfr_set_q(irr.get(), x.irr().get_mpq_t(), MPFR_RNDN);
  const long delta = x.delta();
  mpfr_set_si(root.get(), delta < 0 ? -delta : delta, MPFR_RNDN);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  mpfr_mul(irr.get(), irr.get(), root.get(), MPFR_RNDN);  // irr·√|δ|
  if (delta < 0) {
    mpfr_set(out.real().get(), rat.get(), MPFR_RNDN);
    mpfr_set(out.imag().get(), irr.get(), MPFR_RNDN);
    return out;
  }
  const bool cancels = sgn(x.rat()) != 0 && sgn(x.rat()) != sgn(x.irr());
  if (!cancels) {
    mpfr_add(out.real().get(), rat.get(), irr.get(), MPFR_RNDN);
    return out;
  }
  detail::Mpfr norm(work), den(work);
  Rational n = x.norm();
  mpfr_set_q(norm.get(), n.get_mpq_t(), MPFR_RNDN);
  mpfr_sub(den.get(), rat.get(), irr.get(), MPFR_RNDN);
  mpfr_div(out.real().get(), norm.get(), den.get(), MPFR_RNDN);
  return out;
}

}  // namespace scv
