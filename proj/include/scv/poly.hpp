#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scv/approx.hpp"
#include "scv/error.hpp"
#include "scv/matrix.hpp"
#include "scv/scalar.hpp"

namespace scv {

/// Univariate polynomial over ℚ(√δ), coefficients lowest degree first, no
/// trailing zeros (the zero polynomial is empty).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }
  static Polynomial constant(const Scalar& s) { return Polynomial({s}); }
  /// x − root
  static Polynomial linear_factor(const Scalar& root) { return Polynomial({-root, Scalar(1)}); }

  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& lead() const {
    if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return c_.back();
  }
  Scalar coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(0); }

  Polynomial monic() const {
    if (c_.empty()) return *this;
    const Scalar inv = Scalar(1) / c_.back();
    std::vector<Scalar> out = c_;
    for (auto& x : out) x *= inv;
    return Polynomial(std::move(out));
  }

  Polynomial derivative() const {
    std::vector<Scalar> out;
    for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(c_[k] * Scalar(static_cast<long>(k)));
    return Polynomial(std::move(out));
  }

  Polynomial conjugate() const {
    std::vector<Scalar> out;
    for (const auto& x : c_) out.push_back(x.conjugate());
    return Polynomial(std::move(out));
  }

  Scalar eval(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// p(M) by Horner's rule.
  ExactMatrix eval(const ExactMatrix& m) const {
    m.require_square("polynomial evaluation");
    const std::size_t n = m.rows();
    ExactMatrix acc(n, n, Scalar(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * m;
      for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] += b.c_[k];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] -= b.c_[k];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// (quotient, remainder) with deg remainder < deg b.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Scalar> r = a.c_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<Scalar> q(static_cast<std::size_t>(a.degree() - db + 1), Scalar(0));
    const Scalar inv = Scalar(1) / b.lead();
    for (int k = a.degree() - db; k >= 0; --k) {
      const Scalar f = r[static_cast<std::size_t>(k + db)] * inv;
      q[static_cast<std::size_t>(k)] = f;
      if (f.is_zero()) continue;
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  /// Monic gcd (zero if both are zero).
  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// p / gcd(p, p′), monic: same roots, each simple.
  Polynomial radical() const {
    if (degree() < 1) return monic();
    return divmod(*this, gcd(*this, derivative())).first.monic();
  }
  bool is_squarefree() const { return degree() < 1 || gcd(*this, derivative()).degree() == 0; }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[k].str() + ")";
      if (k) s += k == 1 ? "x" : "x^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

/// det(xI − A) as a Polynomial.
inline Polynomial charpoly(const ExactMatrix& a) { return Polynomial(characteristic_polynomial(a)); }

namespace detail {

/// Best rational approximation of x with denominator below 2^max_den_bits,
/// accepted only if it is within 2^tol_log2 of x.
inline std::optional<Rational> recognize_rational(const Mpfr& x, long tol_log2, long max_den_bits = 80) {
  if (!mpfr_number_p(x.get())) return std::nullopt;
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  Rational rest = q;
  Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents h/k
  for (int step = 0; step < 200; ++step) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer h2 = a * h0 + h1, k2 = a * k0 + k1;
    h1 = h0;
    k1 = k0;
    h0 = h2;
    k0 = k2;
    if (static_cast<long>(mpz_sizeinbase(k0.get_mpz_t(), 2)) > max_den_bits) return std::nullopt;
    Rational cand(h0, k0);
    cand.canonicalize();
    Rational err = abs(Rational(cand - q));
    if (sgn(err) == 0) return cand;
    Mpfr e(64);
    mpfr_set_q(e.get(), err.get_mpq_t(), MPFR_RNDN);
    if (mpfr_get_exp(e.get()) < tol_log2) return cand;
    rest -= Rational(a);
    if (sgn(rest) == 0) return cand;
    rest = 1 / rest;
  }
  return std::nullopt;
}

inline ApproxScalar approx_eval(const std::vector<ApproxScalar>& c, const ApproxScalar& z) {
  ApproxScalar acc(0, z.precision_bits());
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// All complex roots of a squarefree polynomial by Durand–Kerner iteration.
inline std::vector<ApproxScalar> numeric_roots(const Polynomial& p, long bits) {
  const Polynomial m = p.monic();
  const int n = m.degree();
  std::vector<ApproxScalar> c;
  for (const auto& x : m.coeffs()) c.push_back(approximate(x, bits));
  if (n < 1) return {};
  // Cauchy bound for the starting circle
  double bound = 1;
  for (int k = 0; k < n; ++k) {
    const double lg = c[static_cast<std::size_t>(k)].log2_magnitude();
    if (lg > -1e9) bound = std::max(bound, 1 + std::exp2(lg));
  }
  ApproxScalar seed(bits);
  mpfr_set_d(seed.real().get(), 0.4, MPFR_RNDN);
  mpfr_set_d(seed.imag().get(), 0.9, MPFR_RNDN);
  ApproxScalar radius(bits);
  mpfr_set_d(radius.real().get(), bound, MPFR_RNDN);
  std::vector<ApproxScalar> z;
  ApproxScalar pw(1, bits);
  for (int k = 0; k < n; ++k) {
    pw *= seed;
    z.push_back(pw * radius);
  }
  const double stop = -static_cast<double>(bits) + 24;
  for (int iter = 0; iter < 2000; ++iter) {
    double worst = -1e18;
    for (int i = 0; i < n; ++i) {
      ApproxScalar den(1, bits);
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      if (den.is_zero()) continue;
      const ApproxScalar step = approx_eval(c, z[static_cast<std::size_t>(i)]) / den;
      z[static_cast<std::size_t>(i)] -= step;
      worst = std::max(worst, step.log2_magnitude());
    }
    if (worst < stop) break;
  }
  return z;
}

}  // namespace detail

/// Distinct roots of p lying in ℚ(√δ), each verified exactly, in canonical order.
inline std::vector<Scalar> roots_in_field(const Polynomial& p, long delta, long bits = 512) {
  if (p.is_zero()) throw DomainError("zero polynomial has every root");
  std::vector<Scalar> out;
  auto push = [&](const Scalar& r) {
    const Scalar v = delta ? r.in_field(delta) : r;
    if (!p.eval(v).is_zero()) return;
    for (const auto& x : out)
      if (x == v) return;
    out.push_back(v);
  };
  Polynomial rad = p.radical();
  // Strip exact linear pieces first so later steps see small degrees.
  while (rad.degree() >= 1) {
    if (rad.degree() == 1) {
      push(-rad.coeff(0) / rad.coeff(1));
      break;
    }
    if (rad.degree() == 2) {
      const Scalar b = rad.coeff(1), c = rad.coeff(0);
      if (auto s = field_sqrt(b * b - Scalar(4) * c, delta)) {
        push((-b + *s) / Scalar(2));
        push((-b - *s) / Scalar(2));
      }
      break;
    }
    const auto zs = detail::numeric_roots(rad, bits);
    const auto ws = delta ? detail::numeric_roots(rad.conjugate(), bits) : zs;
    const long tol = -bits / 2;
    std::vector<Scalar> found;
    auto try_rational = [&](const ApproxScalar& z) {
      if (!z.is_zero() && mpfr_get_exp(z.imag().get()) > tol && !mpfr_zero_p(z.imag().get())) return;
      if (auto q = detail::recognize_rational(z.real(), tol)) found.emplace_back(*q);
    };
    for (const auto& z : zs) try_rational(z);
    if (delta)
      for (const auto& z : zs)
        for (const auto& w : ws) {
          const ApproxScalar sum = z + w, prod = z * w;
          auto imag_small = [&](const ApproxScalar& v) {
            return mpfr_zero_p(v.imag().get()) || mpfr_get_exp(v.imag().get()) < tol;
          };
          if (!imag_small(sum) || !imag_small(prod)) continue;
          auto s = detail::recognize_rational(sum.real(), tol);
          auto q = detail::recognize_rational(prod.real(), tol);
          if (!s || !q) continue;
          const Rational a = *s / 2;
          auto b = rational_sqrt((a * a - *q) / Rational(delta));
          if (!b || sgn(*b) == 0) continue;
          found.emplace_back(a, *b, delta);
          found.emplace_back(a, -*b, delta);
        }
    bool progressed = false;
    for (const auto& r : found) {
      const Scalar v = delta ? r.in_field(delta) : r;
      if (!rad.eval(v).is_zero()) continue;
      push(v);
      rad = divmod(rad, Polynomial::linear_factor(v)).first;
      progressed = true;
      break;
    }
    if (!progressed) break;
  }
  std::sort(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) { return canonical_order(a, b) < 0; });
  return out;
}

}  // namespace scv
