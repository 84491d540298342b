#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "helpers.hpp"
#include "scv/approx.hpp"
#include "scv/scalar.hpp"

using namespace scv;
using scv::testing::random_scalar;

namespace {

const Scalar r2 = Scalar::sqrt_delta(-2);

// |a − b| as log2, computed at a precision well above both operands.
double log2_distance(const ApproxScalar& a, const ApproxScalar& b) { return (a - b).log2_magnitude(); }

}  // namespace

TEST(Scalar, NormOfQuadraticElement) { EXPECT_EQ((Scalar(1) + r2) * (Scalar(1) - r2), Scalar(3)); }

TEST(Scalar, RationalizedInverse) { EXPECT_EQ(Scalar(1) / r2, Scalar(0, Rational(-1, 2), -2)); }

TEST(Scalar, RationalAddition) { EXPECT_EQ(Scalar::ratio(1, 6) + Scalar::ratio(-1, 15), Scalar::ratio(1, 10)); }

TEST(Scalar, DivisionByZeroThrows) {
  EXPECT_THROW(Scalar(1) / Scalar(0), FieldError);
  EXPECT_THROW(r2 / (r2 - r2), FieldError);
}

TEST(Scalar, MixedFieldsThrow) {
  EXPECT_THROW(r2 + Scalar::sqrt_delta(-1), FieldError);
  EXPECT_THROW(r2 * Scalar::sqrt_delta(3), FieldError);
}

TEST(Scalar, CanonicalFormIsStructural) {
  EXPECT_EQ(parse_scalar("2/4"), Scalar::ratio(1, 2));
  EXPECT_EQ(parse_scalar("-3/6").str(), "-1/2");
  EXPECT_THROW(parse_scalar("-3/-6"), ParseError);
  EXPECT_EQ(Scalar::ratio(6, -4).str(), "-3/2");
  EXPECT_EQ((r2 * r2).str(), "-2");
}

TEST(Scalar, ParseAndPrint) {
  EXPECT_EQ(parse_scalar("1/2+3/4*sqrt(-2)"), Scalar(Rational(1, 2), Rational(3, 4), -2));
  EXPECT_EQ(parse_scalar("-sqrt(-2)"), -r2);
  EXPECT_EQ(parse_scalar("5/3 - 1/3*sqrt(-2)").str(), "5/3-1/3*sqrt(-2)");
  for (const char* s : {"0", "7", "-1/3", "sqrt(-2)", "2*sqrt(-1)", "1/2-3/4*sqrt(5)"})
    EXPECT_EQ(parse_scalar(parse_scalar(s).str()), parse_scalar(s)) << s;
}

TEST(Scalar, ParseRejectsMalformed) {
  for (const char* s : {"", "1.5", "1/0", "abc", "1/2*sqrt(-8)", "sqrt(4)", "sqrt(1)", "1+", "1//2"})
    EXPECT_THROW(parse_scalar(s), Error) << s;
}

TEST(Scalar, FieldSqrt) {
  EXPECT_EQ(*field_sqrt(Scalar(-2), -2), r2);
  EXPECT_EQ(*field_sqrt(Scalar::ratio(9, 4), -2), Scalar::ratio(3, 2));
  const Scalar x = Scalar(1) + r2;
  auto s = field_sqrt(x * x, -2);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s * *s, x * x);
  EXPECT_FALSE(field_sqrt(Scalar(3), -2).has_value());
}

TEST(ScalarProperty, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (long delta : {-2L, -1L, 5L}) {
    for (int t = 0; t < 200; ++t) {
      const Scalar x = random_scalar(rng, delta), y = random_scalar(rng, delta), z = random_scalar(rng, delta);
      EXPECT_EQ((x + y) + z, x + (y + z));
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ(x + y, y + x);
      EXPECT_EQ(x * y, y * x);
      EXPECT_EQ(x - x, Scalar(0));
      if (!y.is_zero()) {
        EXPECT_EQ((x / y) * y, x);
        EXPECT_EQ(y * (Scalar(1) / y), Scalar(1));
      }
    }
  }
}

TEST(Approx, SqrtMinusTwo) {
  const ApproxScalar a = approximate(r2, 128);
  EXPECT_TRUE(mpfr_zero_p(a.real().get()));
  EXPECT_NEAR(a.imag_double(), 1.4142135623730951, 1e-15);
  EXPECT_EQ(a.str(10), "0+1.414213562i");
}

TEST(Approx, OneThird) { EXPECT_NEAR(approximate(Scalar::ratio(1, 3), 128).real_double(), 1.0 / 3.0, 1e-16); }

TEST(Approx, ZeroIsExact) { EXPECT_TRUE(approximate(Scalar(0), 128).is_zero()); }

TEST(Approx, PrecisionFloor) { EXPECT_THROW(ApproxScalar(64), DomainError); }

TEST(Approx, RelativeErrorBound) {
  std::mt19937_64 rng(5);
  for (long delta : {-2L, 3L}) {
    for (int t = 0; t < 100; ++t) {
      const Scalar x = random_scalar(rng, delta);
      if (x.is_zero()) continue;
      for (long bits : {128L, 256L}) {
        const ApproxScalar ref = approximate(x, 1024);
        ApproxScalar lo(1024);
        mpfr_set(lo.real().get(), approximate(x, bits).real().get(), MPFR_RNDN);
        mpfr_set(lo.imag().get(), approximate(x, bits).imag().get(), MPFR_RNDN);
        EXPECT_LE(log2_distance(lo, ref), 1.0 - bits + ref.log2_magnitude()) << x;
      }
    }
  }
}

TEST(Approx, NearCancellationKeepsDigits) {
  // 1 − (985/1393)√2 ≈ −2.6e−7: the rounding must not lose the leading digits.
  const Scalar x(Rational(1), Rational(-985, 1393), 2);
  const ApproxScalar ref = approximate(x, 1024);
  ApproxScalar lo(1024);
  mpfr_set(lo.real().get(), approximate(x, 128).real().get(), MPFR_RNDN);
  EXPECT_LE(log2_distance(lo, ref), 1.0 - 128 + ref.log2_magnitude());
}

TEST(ApproxProperty, RoundTripOfExpressions) {
  std::mt19937_64 rng(17);
  const long bits = 256;
  for (int t = 0; t < 200; ++t) {
    const Scalar x = random_scalar(rng, -2), y = random_scalar(rng, -2), z = random_scalar(rng, -2);
    const Scalar exact = x * y + z / (y.is_zero() ? Scalar(1) : y);
    const ApproxScalar ax = approximate(x, bits), ay = approximate(y, bits), az = approximate(z, bits);
    const ApproxScalar approx = ax * ay + az / (y.is_zero() ? ApproxScalar(1, bits) : ay);
    const ApproxScalar want = approximate(exact, bits);
    const double scale = std::max(1.0, std::max({ax.log2_magnitude(), ay.log2_magnitude(), az.log2_magnitude()}));
    EXPECT_LT(log2_distance(approx, want), -static_cast<double>(bits) + 8 + 3 * scale) << exact;
  }
}

TEST(Approx, PrecisionFromEnvironment) {
  setenv("SCV_PRECISION_BITS", "300", 1);
  EXPECT_EQ(precision_bits_from_env(), 300);
  setenv("SCV_PRECISION_BITS", "64", 1);
  EXPECT_EQ(precision_bits_from_env(), kMinPrecisionBits);
  unsetenv("SCV_PRECISION_BITS");
  EXPECT_EQ(precision_bits_from_env(), kDefaultPrecisionBits);
}
