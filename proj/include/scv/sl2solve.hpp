#pragma once

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scv/approx.hpp"
#include "scv/error.hpp"
#include "scv/liealg.hpp"
#include "scv/matrix.hpp"
#include "scv/poly.hpp"
#include "scv/scalar.hpp"
#include "scv/sceq.hpp"
#include "scv/weight2.hpp"

namespace scv {

inline constexpr long kSl2Delta = -2;

enum class Regime { Generic, Level0, Level1, Level4 };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::Generic: return "generic";
    case Regime::Level0: return "level0";
    case Regime::Level1: return "level1";
    case Regime::Level4: return "level4";
  }
  return "?";
}

inline Regime regime_of(const Scalar& level) {
  if (level == Scalar(0)) return Regime::Level0;
  if (level == Scalar(1)) return Regime::Level1;
  if (level == Scalar(4)) return Regime::Level4;
  return Regime::Generic;
}

/// The level-4 variety a₁+a₂+a₃ = e1, a₁a₂+a₁a₃+a₂a₃ = e2.
struct FamilyDescriptor {
  Scalar e1;
  Scalar e2;
};

struct DiagonalSolutionSet {
  Scalar level;
  Regime regime = Regime::Generic;
  std::vector<ExactMatrix> isolated;
  std::optional<FamilyDescriptor> family;
};

inline void require_noncritical_sl2(const Scalar& level) {
  if (!level.is_rational()) throw DomainError("level must be rational");
  if (level == Scalar(-2)) throw CriticalLevelError();
}

/// Left minus right sides of the three diagonal equations
/// 4(a₁a₂+a₁a₃−a₂a₃) + 2ℓa₁² = a₁ and their cyclic images.
inline std::array<Scalar, 3> eq44_residuals(const Scalar& l, const Scalar& a1, const Scalar& a2, const Scalar& a3) {
  const Scalar four(4), two(2);
  return {four * (a1 * a2 + a1 * a3 - a2 * a3) + two * l * a1 * a1 - a1,
          four * (a1 * a2 + a2 * a3 - a1 * a3) + two * l * a2 * a2 - a2,
          four * (a1 * a3 + a2 * a3 - a1 * a2) + two * l * a3 * a3 - a3};
}

inline bool satisfies_eq44(const Scalar& l, const std::vector<Scalar>& a) {
  if (a.size() != 3) throw DomainError("diagonal equations need three entries");
  for (const auto& r : eq44_residuals(l, a[0], a[1], a[2]))
    if (!r.is_zero()) return false;
  return true;
}

inline bool diagonal_less(const ExactMatrix& a, const ExactMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto c = canonical_order(a(i, i), b(i, i));
    if (c != 0) return c < 0;
  }
  return false;
}

inline ExactMatrix diag3(const Scalar& a1, const Scalar& a2, const Scalar& a3) {
  return ExactMatrix::diagonal({a1, a2, a3});
}

/// An exact or rational point of the level-4 variety.
inline bool level4_member(const Scalar& a1, const Scalar& a2, const Scalar& a3) {
  const Scalar e1 = a1 + a2 + a3, e2 = a1 * a2 + a1 * a3 + a2 * a3;
  if (e1 == Scalar::ratio(1, 8) && e2.is_zero()) return true;
  if (a1.is_zero() && a2.is_zero() && a3.is_zero()) return true;
  const Scalar w = Scalar::ratio(1, 12);
  return a1 == w && a2 == w && a3 == w;
}

/// Complete diagonal solution set by casework on which entries coincide:
/// (a_i − a_j)(8a_k + 2ℓ(a_i + a_j) − 1) = 0 for each pair.
inline DiagonalSolutionSet solve_diagonal(const Scalar& level) {
  require_noncritical_sl2(level);
  DiagonalSolutionSet out;
  out.level = level;
  out.regime = regime_of(level);
  const Scalar w = Scalar(1) / (Scalar(2) * (level + Scalar(2)));
  std::vector<std::vector<Scalar>> cands{{0, 0, 0}, {w, w, w}};
  if (out.regime == Regime::Level4) {
    // Every non-scalar solution lies on the variety e1 = 1/8, e2 = 0.
    out.family = FamilyDescriptor{Scalar::ratio(1, 8), Scalar(0)};
  } else if (!level.is_zero()) {
    // Two equal entries x, the third y: x ∈ {0, w}, 8x + 2ℓ(x + y) = 1.
    for (const Scalar& x : {Scalar(0), w}) {
      const Scalar y = (Scalar(1) - Scalar(8) * x - Scalar(2) * level * x) / (Scalar(2) * level);
      if (y == x) continue;
      cands.push_back({y, x, x});
      cands.push_back({x, y, x});
      cands.push_back({x, x, y});
    }
    // All distinct forces (8 − 2ℓ)(a_i − a_j) = 0, impossible away from ℓ = 4.
  }
  for (const auto& c : cands) {
    if (!satisfies_eq44(level, c)) continue;
    ExactMatrix m = diag3(c[0], c[1], c[2]);
    bool dup = false;
    for (const auto& e : out.isolated) dup = dup || e == m;
    if (!dup) out.isolated.push_back(std::move(m));
  }
  std::sort(out.isolated.begin(), out.isolated.end(), diagonal_less);
  return out;
}

/// Diagonal triple ∈ Sc per the solved set (isolated list or the family).
inline bool in_solution_set(const DiagonalSolutionSet& s, const std::vector<Scalar>& a) {
  const ExactMatrix m = diag3(a[0], a[1], a[2]);
  for (const auto& x : s.isolated)
    if (x == m) return true;
  if (s.family) {
    const Scalar e1 = a[0] + a[1] + a[2], e2 = a[0] * a[1] + a[0] * a[2] + a[1] * a[2];
    return e1 == s.family->e1 && e2 == s.family->e2;
  }
  return false;
}

struct Level4Point {
  bool approximate = false;
  std::vector<Scalar> exact;          // (t, a₂, a₃) when exact
  std::vector<ApproxScalar> approx;   // (t, a₂, a₃) otherwise
};

/// Points (t, a₂, a₃) of the level-4 variety: a₂, a₃ are the roots of
/// x² − (1/8 − t)x + (t² − t/8).
inline std::vector<Level4Point> level4_sample(const Scalar& t, long delta = kSl2Delta,
                                              long bits = precision_bits_from_env()) {
  const Scalar b = Scalar::ratio(1, 8) - t;
  const Scalar c = t * t - t * Scalar::ratio(1, 8);
  const Scalar disc = b * b - Scalar(4) * c;
  std::vector<Level4Point> out;
  if (auto s = field_sqrt(disc, delta)) {
    const Scalar r1 = (b + *s) / Scalar(2), r2 = (b - *s) / Scalar(2);
    out.push_back({false, {t, r1, r2}, {}});
    if (!(r1 == r2)) out.push_back({false, {t, r2, r1}, {}});
    return out;
  }
  const ApproxScalar at = approximate(t, bits), ab = approximate(b, bits), ad = approximate(disc, bits);
  ApproxScalar root(bits);  // √disc, real or imaginary
  if (mpfr_sgn(ad.real().get()) >= 0)
    mpfr_sqrt(root.real().get(), ad.real().get(), MPFR_RNDN);
  else {
    mpfr_neg(root.imag().get(), ad.real().get(), MPFR_RNDN);
    mpfr_sqrt(root.imag().get(), root.imag().get(), MPFR_RNDN);
  }
  const ApproxScalar half = ApproxScalar(1, bits) / ApproxScalar(2, bits);
  const ApproxScalar r1 = (ab + root) * half, r2 = (ab - root) * half;
  out.push_back({true, {}, {at, r1, r2}});
  out.push_back({true, {}, {at, r2, r1}});
  return out;
}

/// t = (16 − 2m)/(m² + 192) makes the discriminant 1/64 + t/4 − 3t² a
/// rational square, so level4_sample returns exact rational points.
inline Scalar level4_rational_parameter(long m) { return Scalar::ratio(16 - 2 * m, m * m + 192); }

struct OrbitDescriptor {
  Scalar e1, e2, e3;
  std::optional<ExactMatrix> representative;  // sorted diagonal when the eigenvalues lie in the field

  bool same_invariants(const OrbitDescriptor& o) const { return e1 == o.e1 && e2 == o.e2 && e3 == o.e3; }
};

/// The first quadratic field among the entries, or `fallback`.
inline long field_of(const ExactMatrix& m, long fallback = kSl2Delta) {
  for (const auto& x : m.data())
    if (x.delta() != 0) return x.delta();
  return fallback;
}

/// (e1, e2, e3) from det(xI − A) = x³ − e1x² + e2x − e3.
inline OrbitDescriptor orbit_invariants(const ExactMatrix& a) {
  if (a.rows() != 3 || a.cols() != 3) throw DomainError("orbit invariants need d = 3");
  const auto c = characteristic_polynomial(a);
  OrbitDescriptor o{-c[2], c[1], -c[0], std::nullopt};
  // Eigenvalues with multiplicity, when they all lie in the field.
  std::vector<Scalar> eig;
  Polynomial p(c);
  for (const auto& r : roots_in_field(p, field_of(a))) {
    while (p.degree() >= 1 && p.eval(r).is_zero()) {
      eig.push_back(r);
      p = divmod(p, Polynomial::linear_factor(r)).first;
    }
  }
  if (eig.size() == 3) {
    std::sort(eig.begin(), eig.end(), [](const Scalar& x, const Scalar& y) { return canonical_order(x, y) < 0; });
    o.representative = diag3(eig[0], eig[1], eig[2]);
  }
  return o;
}

/// Minimal polynomial is squarefree iff rad(χ_A)(A) = 0.
inline bool is_diagonalizable(const ExactMatrix& a) {
  return charpoly(a).radical().eval(a).is_zero_matrix();
}

enum class OrbitRelation { Same, Different, Undecided };

inline std::string to_string(OrbitRelation r) {
  switch (r) {
    case OrbitRelation::Same: return "same";
    case OrbitRelation::Different: return "different";
    case OrbitRelation::Undecided: return "undecided";
  }
  return "?";
}

inline OrbitRelation same_orbit(const ExactMatrix& a, const ExactMatrix& b) {
  const OrbitDescriptor da = orbit_invariants(a), db = orbit_invariants(b);
  if (!da.same_invariants(db)) return OrbitRelation::Different;
  if (is_diagonalizable(a) && is_diagonalizable(b)) return OrbitRelation::Same;
  return OrbitRelation::Undecided;
}

struct Orbit {
  ExactMatrix representative;  // lexicographically smallest sorted diagonal
  OrbitDescriptor descriptor;
  std::vector<ExactMatrix> members;
};

struct OrbitDecomposition {
  Scalar level;
  Regime regime = Regime::Generic;
  std::vector<Orbit> orbits;
  std::optional<FamilyDescriptor> family;  // ℓ = 4: one orbit per point of the affine line e3 = a₁a₂a₃
};

inline OrbitDecomposition classify(const Scalar& level) {
  const DiagonalSolutionSet s = solve_diagonal(level);
  OrbitDecomposition out;
  out.level = level;
  out.regime = s.regime;
  out.family = s.family;
  for (const auto& m : s.isolated) {
    bool placed = false;
    for (auto& o : out.orbits)
      if (same_orbit(o.representative, m) == OrbitRelation::Same) {
        o.members.push_back(m);
        if (diagonal_less(m, o.representative)) o.representative = m;
        placed = true;
        break;
      }
    if (!placed) out.orbits.push_back({m, orbit_invariants(m), {m}});
  }
  std::sort(out.orbits.begin(), out.orbits.end(),
            [](const Orbit& a, const Orbit& b) { return diagonal_less(a.representative, b.representative); });
  return out;
}

/// Exact family points used wherever the ℓ = 4 variety has to be sampled.
inline std::vector<ExactMatrix> level4_family_samples(int count = 6) {
  std::vector<ExactMatrix> out;
  for (long m = 0; static_cast<int>(out.size()) < count && m < 1000; ++m)
    for (const auto& p : level4_sample(level4_rational_parameter(m)))
      if (!p.approximate && static_cast<int>(out.size()) < count) out.push_back(diag3(p.exact[0], p.exact[1], p.exact[2]));
  return out;
}

struct MinimalReport {
  Scalar level;
  std::vector<ExactMatrix> representatives;  // one per minimal orbit
  bool family_minimal = false;               // ℓ = 4: every family point is minimal
  std::vector<ExactMatrix> family_samples;
};

/// Nonzero diagonal members with no other nonzero member below them.
inline MinimalReport minimal_vectors(const Scalar& level) {
  require_noncritical_sl2(level);
  if (level.is_zero()) throw DomainError("minimal vectors need a level other than 0");
  const AlgebraContext ctx = builtin_sl2(level);
  const DiagonalSolutionSet s = solve_diagonal(level);
  std::vector<ExactMatrix> pool;
  for (const auto& m : s.isolated)
    if (!m.is_zero_matrix()) pool.push_back(m);
  MinimalReport out;
  out.level = level;
  if (s.family) {
    out.family_samples = level4_family_samples();
    for (const auto& m : out.family_samples) pool.push_back(m);
  }
  std::vector<ExactMatrix> minimal;
  for (const auto& a : pool) {
    bool has_below = false;
    for (const auto& b : pool)
      if (!(a == b) && partial_order_diag(ctx, b, a)) {
        has_below = true;
        break;
      }
    if (!has_below) minimal.push_back(a);
  }
  if (s.family) {
    out.family_minimal = std::all_of(out.family_samples.begin(), out.family_samples.end(), [&](const ExactMatrix& f) {
      return std::any_of(minimal.begin(), minimal.end(), [&](const ExactMatrix& m) { return m == f; });
    });
  }
  for (const auto& m : minimal) {
    if (s.family) {
      const auto e = orbit_invariants(m);
      if (e.e1 == s.family->e1 && e.e2 == s.family->e2) continue;  // reported through the family
    }
    bool seen = false;
    for (const auto& r : out.representatives) seen = seen || same_orbit(r, m) == OrbitRelation::Same;
    if (!seen) out.representatives.push_back(*orbit_invariants(m).representative);
  }
  std::sort(out.representatives.begin(), out.representatives.end(), diagonal_less);
  return out;
}

/// Number of strict steps in the longest ⪯-chain among the isolated solutions.
inline int longest_chain(const Scalar& level) {
  const AlgebraContext ctx = builtin_sl2(level);
  const auto s = solve_diagonal(level);
  const auto& v = s.isolated;
  const std::size_t n = v.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) le[i][j] = i != j && partial_order_diag(ctx, v[i], v[j]);
  std::vector<int> depth(n, -1);
  // Longest path in the strict order (acyclic): memoized DFS.
  std::vector<int> state(n, 0);
  std::function<int(std::size_t)> go = [&](std::size_t i) -> int {
    if (depth[i] >= 0) return depth[i];
    if (state[i] == 1) throw DomainError("partial order relation has a cycle");
    state[i] = 1;
    int best = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (le[i][j]) best = std::max(best, 1 + go(j));
    state[i] = 2;
    return depth[i] = best;
  };
  int best = 0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, go(i));
  return best;
}

}  // namespace scv
