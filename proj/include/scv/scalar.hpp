#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "scv/error.hpp"

namespace scv {

using Rational = mpq_class;
using Integer = mpz_class;

/// True when |n| has no repeated prime factor. 0 and ±1 count as square-free
/// here; field constructors reject them separately.
inline bool is_square_free(long n) {
  if (n < 0) n = -n;
  if (n < 4) return true;
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

inline bool valid_discriminant(long delta) {
  return delta != 0 && delta != 1 && is_square_free(delta);
}

inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  Integer num = q.get_num();
  Integer den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

/// Element rat + irr·√δ of the quadratic field ℚ(√δ).
///
/// δ == 0 marks an untagged rational (irr is then always zero). Untagged values
/// combine with any field; combining two different nonzero δ throws.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : rat_(v) {}  // NOLINT: implicit from integer literals
  Scalar(Rational r) : rat_(std::move(r)) { rat_.canonicalize(); }  // NOLINT
  Scalar(Rational rat, Rational irr, long delta) : rat_(std::move(rat)), irr_(std::move(irr)), delta_(delta) {
    rat_.canonicalize();
    irr_.canonicalize();
    if (delta_ != 0 && !valid_discriminant(delta_))
      throw FieldError("discriminant " + std::to_string(delta_) + " is not a square-free integer other than 0, 1");
    if (delta_ == 0 && sgn(irr_) != 0) throw FieldError("irrational part without a discriminant");
  }

  static Scalar sqrt_delta(long delta) { return Scalar(0, 1, delta); }
  static Scalar ratio(long p, long q) { return Scalar(Rational(p, q)); }

  const Rational& rat() const { return rat_; }
  const Rational& irr() const { return irr_; }
  long delta() const { return delta_; }

  bool is_zero() const { return sgn(rat_) == 0 && sgn(irr_) == 0; }
  bool is_rational() const { return sgn(irr_) == 0; }

  /// Field norm rat² − δ·irr², a rational that vanishes only at zero.
  Rational norm() const { return rat_ * rat_ - Rational(delta_) * irr_ * irr_; }
  Scalar conjugate() const { return Scalar(rat_, -irr_, delta_); }

  Scalar operator-() const {
    Scalar r = *this;
    r.rat_ = -r.rat_;
    r.irr_ = -r.irr_;
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    delta_ = common_delta(delta_, o.delta_);
    if (sgn(o.rat_) != 0) rat_ += o.rat_;
    if (sgn(o.irr_) != 0) irr_ += o.irr_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    delta_ = common_delta(delta_, o.delta_);
    if (sgn(o.rat_) != 0) rat_ -= o.rat_;
    if (sgn(o.irr_) != 0) irr_ -= o.irr_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    const long d = common_delta(delta_, o.delta_);
    const bool irr_zero = sgn(irr_) == 0;
    if (sgn(o.irr_) == 0) {
      rat_ *= o.rat_;
      if (!irr_zero) irr_ *= o.rat_;
    } else if (irr_zero) {
      irr_ = rat_ * o.irr_;
      rat_ *= o.rat_;
    } else if (sgn(rat_) == 0 && sgn(o.rat_) == 0) {
      rat_ = Rational(d) * irr_ * o.irr_;
      irr_ = 0;
    } else {
      Rational r = rat_ * o.rat_ + Rational(d) * irr_ * o.irr_;
      Rational i = rat_ * o.irr_ + irr_ * o.rat_;
      rat_ = std::move(r);
      irr_ = std::move(i);
    }
    delta_ = d;
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    const long d = common_delta(delta_, o.delta_);
    if (o.is_zero()) throw FieldError("division by zero");
    if (sgn(o.irr_) == 0) {
      rat_ /= o.rat_;
      irr_ /= o.rat_;
      delta_ = d;
      return *this;
    }
    Scalar inv(o.rat_ / o.norm(), -o.irr_ / o.norm(), d);
    return *this *= inv;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Equality is structural; untagged rationals equal tagged values with zero
  /// irrational part.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.delta_ != 0 && b.delta_ != 0 && a.delta_ != b.delta_ && !(a.is_rational() && b.is_rational()))
      throw FieldError("comparison across fields Q(sqrt(" + std::to_string(a.delta_) + ")) and Q(sqrt(" +
                       std::to_string(b.delta_) + "))");
    return a.rat_ == b.rat_ && a.irr_ == b.irr_;
  }

  /// Total order used only for canonical output ordering (lexicographic on
  /// (rat, irr)); it is not a field order.
  friend std::strong_ordering canonical_order(const Scalar& a, const Scalar& b) {
    if (int c = cmp(a.rat_, b.rat_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(a.irr_, b.irr_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Canonical text: "p/q", "r/s*sqrt(δ)" or "p/q+r/s*sqrt(δ)".
  std::string str() const {
    if (sgn(irr_) == 0) return rat_.get_str();
    std::string irr_text = Rational(abs(irr_)).get_str() + "*sqrt(" + std::to_string(delta_) + ")";
    if (sgn(rat_) == 0) return (sgn(irr_) < 0 ? "-" : "") + irr_text;
    return rat_.get_str() + (sgn(irr_) < 0 ? "-" : "+") + irr_text;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

  /// Retags an untagged rational into ℚ(√δ); tagged values must already match.
  Scalar in_field(long delta) const {
    Scalar r = *this;
    r.delta_ = common_delta(delta_, delta);
    return r;
  }

 private:
  static long common_delta(long a, long b) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw FieldError("mixed quadratic fields Q(sqrt(" + std::to_string(a) + ")) and Q(sqrt(" + std::to_string(b) +
                     "))");
  }

  Rational rat_{0};
  Rational irr_{0};
  long delta_ = 0;
};

/// Square root inside ℚ(√δ) when one exists.
inline std::optional<Scalar> field_sqrt(const Scalar& x, long delta) {
  const Scalar v = x.in_field(delta);
  if (v.is_zero()) return Scalar(0).in_field(delta);
  if (v.is_rational()) {
    if (auto r = rational_sqrt(v.rat())) return Scalar(*r, 0, delta);
    if (auto r = rational_sqrt(v.rat() / Rational(delta))) return Scalar(0, *r, delta);
    return std::nullopt;
  }
  // (u + w√δ)² = x  ⇔  u² + δw² = rat, 2uw = irr; then u² − δw² = ±√norm.
  auto s = rational_sqrt(v.norm());
  if (!s) return std::nullopt;
  for (const Rational& sign_s : {*s, Rational(-*s)}) {
    Rational u2 = (v.rat() + sign_s) / 2;
    auto u = rational_sqrt(u2);
    if (!u || sgn(*u) == 0) continue;
    Rational w = v.irr() / (2 * *u);
    Scalar cand(*u, w, delta);
    if (cand * cand == v) return cand;
  }
  return std::nullopt;
}

/// Parses "p", "p/q", "r/s*sqrt(δ)", "p/q+r/s*sqrt(δ)" (whitespace ignored).
inline Scalar parse_scalar(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw ParseError("empty scalar string");

  auto parse_rational = [&](const std::string& t) -> Rational {
    if (t.empty() || t == "+" || t == "-") throw ParseError("malformed rational in scalar '" + std::string(text) + "'");
    std::string body = t;
    if (body[0] == '+') body.erase(0, 1);
    for (std::size_t k = 0; k < body.size(); ++k) {
      char c = body[k];
      bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && k == 0);
      if (!ok) throw ParseError("malformed rational '" + t + "' in scalar '" + std::string(text) + "'");
    }
    if (body.find('/') != std::string::npos && body.substr(body.find('/') + 1).empty())
      throw ParseError("malformed rational '" + t + "'");
    Rational r;
    if (r.set_str(body, 10) != 0) throw ParseError("malformed rational '" + t + "'");
    if (sgn(r.get_den()) == 0) throw ParseError("zero denominator in '" + t + "'");
    r.canonicalize();
    return r;
  };

  const auto sq = s.find("sqrt(");
  if (sq == std::string::npos) return Scalar(parse_rational(s));

  const auto close = s.find(')', sq);
  if (close == std::string::npos || close + 1 != s.size()) throw ParseError("malformed sqrt term in '" + s + "'");
  const std::string delta_text = s.substr(sq + 5, close - sq - 5);
  long delta = 0;
  try {
    std::size_t used = 0;
    delta = std::stol(delta_text, &used);
    if (used != delta_text.size()) throw ParseError("bad discriminant");
  } catch (const std::exception&) {
    throw ParseError("malformed discriminant '" + delta_text + "'");
  }
  if (!valid_discriminant(delta))
    throw ParseError("discriminant " + std::to_string(delta) + " is not square-free (or is 0/1)");

  std::string head = s.substr(0, sq);  // "[p/q](+|-)[r/s*]" or "[r/s*]"
  Rational coeff(1);
  if (!head.empty() && head.back() == '*') {
    head.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = head.size(); k-- > 1;) {
      if ((head[k] == '+' || head[k] == '-') && head[k - 1] != '/') {
        split = k;
        break;
      }
    }
    std::string rat_text = split == std::string::npos ? "" : head.substr(0, split);
    std::string irr_text = split == std::string::npos ? head : head.substr(split);
    coeff = parse_rational(irr_text);
    Rational rat = rat_text.empty() ? Rational(0) : parse_rational(rat_text);
    return Scalar(rat, coeff, delta);
  }
  // bare "sqrt(δ)", "-sqrt(δ)" or "p/q+sqrt(δ)"
  if (head.empty() || head == "+") return Scalar(0, 1, delta);
  if (head == "-") return Scalar(0, -1, delta);
  char sign = head.back();
  if (sign != '+' && sign != '-') throw ParseError("malformed scalar '" + s + "'");
  head.pop_back();
  return Scalar(parse_rational(head), sign == '+' ? 1 : -1, delta);
}

}  // namespace scv
