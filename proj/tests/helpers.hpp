#pragma once

#include <random>
#include <string>

#include "scv/matrix.hpp"
#include "scv/scalar.hpp"

namespace scv::testing {

inline std::string data_path(const std::string& rel) { return std::string(SCV_TEST_DATA) + "/" + rel; }
inline std::string algebra_path(const std::string& rel) { return std::string(SCV_ALGEBRA_DATA) + "/" + rel; }

/// (p/q) + (r/s)√δ with small numerators and denominators.
template <class Rng>
Scalar random_scalar(Rng& rng, long delta, bool allow_irrational = true) {
  auto small = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
  Scalar s = Scalar::ratio(small(-9, 9), small(1, 7));
  if (allow_irrational) s += Scalar::ratio(small(-9, 9), small(1, 7)) * Scalar::sqrt_delta(delta);
  return s.in_field(delta);
}

template <class Rng>
ExactMatrix random_diagonal(Rng& rng) {
  auto pick = [&] { return Scalar::ratio(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 6) + 1); };
  return ExactMatrix::diagonal({pick(), pick(), pick()});
}

inline ExactMatrix diag(const Scalar& a, const Scalar& b, const Scalar& c) { return ExactMatrix::diagonal({a, b, c}); }

}  // namespace scv::testing
