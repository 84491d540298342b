#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scv/error.hpp"
#include "scv/liealg.hpp"
#include "scv/matrix.hpp"
#include "scv/poly.hpp"
#include "scv/scalar.hpp"

namespace scv {

/// Throws unless m is a symmetric d×d matrix for ctx.
inline const ExactMatrix& require_candidate(const AlgebraContext& ctx, const ExactMatrix& m) {
  if (m.rows() != ctx.dim() || m.cols() != ctx.dim())
    throw DomainError("candidate is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                      ", algebra has d = " + std::to_string(ctx.dim()));
  if (!m.is_symmetric()) throw DomainError("candidate matrix is not symmetric");
  return m;
}

/// Σ a_ij u^i(−1)u^j(−1)𝟙 + Σ b_s u^s(−2)𝟙 with arbitrary a.
struct DegreeTwoVector {
  ExactMatrix quad;
  std::vector<Scalar> lin;
};

struct NormalForm {
  ExactMatrix sym;
  std::vector<Scalar> b_eff;

  bool in_kernel() const {
    for (const auto& b : b_eff)
      if (!b.is_zero()) return false;
    return true;
  }
};

/// Symmetric quadratic part plus the linear part absorbed from the
/// antisymmetric part via u^i(−1)u^j(−1)𝟙 = u^j(−1)u^i(−1)𝟙 + Σ_s γ_ij^s u^s(−2)𝟙.
inline NormalForm normal_form(const AlgebraContext& ctx, const DegreeTwoVector& v) {
  const std::size_t d = ctx.dim();
  if (v.quad.rows() != d || v.quad.cols() != d || v.lin.size() != d)
    throw DomainError("degree-two vector does not match d = " + std::to_string(d));
  const Scalar half = Scalar::ratio(1, 2);
  NormalForm nf{(v.quad + v.quad.transpose()) * half, v.lin};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Scalar w = (v.quad(i, j) - v.quad(j, i)) * half;
      if (w.is_zero()) continue;
      for (std::size_t l = 0; l < d; ++l) nf.b_eff[l] += w * ctx.gamma(i, j, l);
    }
  return nf;
}

inline bool in_kernel_l1(const AlgebraContext& ctx, const DegreeTwoVector& v) { return normal_form(ctx, v).in_kernel(); }

/// A_ω = 1/(2(ℓ + h∨))·I.
inline ExactMatrix conformal_candidate(const AlgebraContext& ctx) {
  const Scalar denom = Scalar(2) * (ctx.level() + Scalar(ctx.h_dual()));
  if (denom.is_zero()) throw CriticalLevelError();
  return ExactMatrix::identity(ctx.dim(), Scalar(0)) * (Scalar(1) / denom);
}

/// A_ω − A.
inline ExactMatrix complement(const AlgebraContext& ctx, const ExactMatrix& a) {
  return conformal_candidate(ctx) - require_candidate(ctx, a);
}

inline bool is_special_orthogonal(const ExactMatrix& g) {
  if (!g.square()) return false;
  return g * g.transpose() == ExactMatrix::identity(g.rows(), Scalar(0)) && determinant(g) == Scalar(1);
}

/// gAgᵗ for special-orthogonal g.
inline ExactMatrix congruence_act(const AlgebraContext& ctx, const ExactMatrix& g, const ExactMatrix& a) {
  require_candidate(ctx, a);
  if (g.rows() != ctx.dim() || g.cols() != ctx.dim()) throw DomainError("g has the wrong shape");
  if (!is_special_orthogonal(g)) throw DomainError("g is not special orthogonal");
  return g * a * g.transpose();
}

/// Rational rotation in the (i,j)-plane with cos = (1−t²)/(1+t²), sin = 2t/(1+t²).
inline ExactMatrix givens(std::size_t d, std::size_t i, std::size_t j, const Scalar& t) {
  if (i >= d || j >= d || i == j) throw DomainError("givens plane out of range");
  const Scalar den = Scalar(1) + t * t;
  if (den.is_zero()) throw DomainError("givens parameter gives 1 + t^2 = 0");
  const Scalar c = (Scalar(1) - t * t) / den, s = Scalar(2) * t / den;
  ExactMatrix g = ExactMatrix::identity(d, Scalar(0));
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -s;
  g(j, i) = s;
  return g;
}

/// Product of `steps` Givens rotations with random planes and t = p/q, 1 ≤ |p|,q ≤ 5.
template <class Rng>
ExactMatrix random_special_orthogonal(std::size_t d, Rng& rng, int steps = 4) {
  ExactMatrix g = ExactMatrix::identity(d, Scalar(0));
  for (int k = 0; k < steps; ++k) {
    const std::size_t i = rng() % d;
    std::size_t j = rng() % (d - 1);
    if (j >= i) ++j;
    long p = static_cast<long>(rng() % 5) + 1;
    if (rng() % 2) p = -p;
    const long q = static_cast<long>(rng() % 5) + 1;
    g = givens(d, i, j, Scalar::ratio(p, q)) * g;
  }
  return g;
}

namespace detail {

using Vec = std::vector<Scalar>;

inline Scalar dot(const Vec& a, const Vec& b) {
  Scalar s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// Basis of the null space of m (columns returned as vectors).
inline std::vector<Vec> null_space(ExactMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = rows;
    for (std::size_t k = r; k < rows; ++k)
      if (!m(k, c).is_zero()) {
        p = k;
        break;
      }
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(p, j));
    const Scalar inv = Scalar(1) / m(r, c);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || m(k, c).is_zero()) continue;
      const Scalar f = m(k, c);
      for (std::size_t j = 0; j < cols; ++j) m(k, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Vec> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Vec v(cols, Scalar(0));
    v[free] = Scalar(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
    out.push_back(std::move(v));
  }
  return out;
}

/// Maximal linearly independent subset, keeping the earliest vectors.
inline std::vector<Vec> independent_subset(const std::vector<Vec>& vs) {
  std::vector<Vec> kept, reduced;
  std::vector<std::size_t> pivot_of;
  for (const auto& v : vs) {
    Vec w = v;
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      const Scalar f = w[pivot_of[r]];
      if (f.is_zero()) continue;
      for (std::size_t e = 0; e < w.size(); ++e) w[e] -= f * reduced[r][e];
    }
    std::size_t p = w.size();
    for (std::size_t e = 0; e < w.size(); ++e)
      if (!w[e].is_zero()) {
        p = e;
        break;
      }
    if (p == w.size()) continue;
    const Scalar inv = Scalar(1) / w[p];
    for (auto& x : w) x *= inv;
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      const Scalar f = reduced[r][p];
      if (f.is_zero()) continue;
      for (std::size_t e = 0; e < w.size(); ++e) reduced[r][e] -= f * w[e];
    }
    reduced.push_back(std::move(w));
    pivot_of.push_back(p);
    kept.push_back(v);
  }
  return kept;
}

/// Orthonormal basis of span(basis) for the bilinear form Σ v_i w_i, using
/// small integer combinations to reach vectors of square norm.
inline std::optional<std::vector<Vec>> orthonormal_basis(std::vector<Vec> basis, long delta) {
  std::vector<Vec> done;
  constexpr int kRange = 6;
  while (!basis.empty()) {
    std::optional<Vec> unit;
    const std::size_t k = basis.size();
    std::vector<int> coef(std::min<std::size_t>(k, 3), 0);
    auto try_vec = [&](const Vec& v) -> bool {
      const Scalar n = dot(v, v);
      if (n.is_zero()) return false;
      auto s = field_sqrt(n, delta);
      if (!s) return false;
      Vec u = v;
      const Scalar inv = Scalar(1) / *s;
      for (auto& x : u) x *= inv;
      unit = std::move(u);
      return true;
    };
    // Triples, pairs and singles of the leading vectors; coefficients in [−kRange, kRange].
    const std::size_t m = coef.size();
    long total = 1;
    for (std::size_t t = 0; t < m; ++t) total *= 2 * kRange + 1;
    std::vector<std::vector<int>> combos;
    for (long code = 0; code < total; ++code) {
      long c = code;
      std::vector<int> cs(m);
      bool nonzero = false;
      for (std::size_t t = 0; t < m; ++t) {
        cs[t] = static_cast<int>(c % (2 * kRange + 1)) - kRange;
        c /= 2 * kRange + 1;
        nonzero = nonzero || cs[t] != 0;
      }
      if (nonzero) combos.push_back(std::move(cs));
    }
    std::stable_sort(combos.begin(), combos.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
      int ha = 0, hb = 0;
      for (int x : a) ha += std::abs(x);
      for (int x : b) hb += std::abs(x);
      return ha < hb;
    });
    for (const auto& cs : combos) {
      Vec v(basis.front().size(), Scalar(0));
      for (std::size_t t = 0; t < m; ++t)
        if (cs[t])
          for (std::size_t e = 0; e < v.size(); ++e) v[e] += Scalar(cs[t]) * basis[t][e];
      if (try_vec(v)) break;
    }
    if (!unit) return std::nullopt;
    for (auto& b : basis) {
      const Scalar p = dot(b, *unit);
      for (std::size_t e = 0; e < b.size(); ++e) b[e] -= p * (*unit)[e];
    }
    std::vector<Vec> rest = independent_subset(basis);
    if (rest.size() + 1 != k) return std::nullopt;
    done.push_back(std::move(*unit));
    basis = std::move(rest);
  }
  return done;
}

/// Orthogonal Q whose first columns are the given orthonormal vectors, built
/// from reflections I − 2wwᵗ/⟨w,w⟩.
inline std::optional<ExactMatrix> complete_orthonormal(const std::vector<Vec>& units, std::size_t d) {
  ExactMatrix q = ExactMatrix::identity(d, Scalar(0));
  for (std::size_t k = 0; k < units.size(); ++k) {
    Vec v(d, Scalar(0));  // Qᵗ u_k
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) v[r] += q(c, r) * units[k][c];
    bool done = true;
    for (std::size_t r = 0; r < d; ++r) done = done && v[r] == (r == k ? Scalar(1) : Scalar(0));
    if (done) continue;
    // Reflect e_k to v, or to −v and flip that column afterwards.
    for (int sign : {1, -1}) {
      Vec w = v;
      if (sign < 0)
        for (auto& x : w) x = -x;
      w[k] -= Scalar(1);
      const Scalar n = dot(w, w);
      if (n.is_zero()) continue;
      ExactMatrix h = ExactMatrix::identity(d, Scalar(0));
      const Scalar f = Scalar(2) / n;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) h(r, c) -= f * w[r] * w[c];
      if (sign < 0)
        for (std::size_t r = 0; r < d; ++r) h(r, k) = -h(r, k);
      q = q * h;
      done = true;
      break;
    }
    if (!done) return std::nullopt;
  }
  return q;
}

}  // namespace detail

/// Special-orthogonal g over ℚ(√δ) with g·M·gᵗ diagonal for every M in ms, or
/// nothing when the matrices do not commute, an eigenvalue leaves the field,
/// or no orthonormal eigenbasis is found.
inline std::optional<ExactMatrix> orthogonal_diagonalizer(const std::vector<ExactMatrix>& ms, long delta) {
  if (ms.empty()) throw DomainError("nothing to diagonalize");
  const std::size_t d = ms.front().rows();
  for (const auto& m : ms)
    if (m.rows() != d || !m.is_symmetric()) throw DomainError("diagonalizer expects symmetric d x d matrices");
  for (std::size_t a = 0; a < ms.size(); ++a)
    for (std::size_t b = a + 1; b < ms.size(); ++b)
      if (!(ms[a] * ms[b] == ms[b] * ms[a])) return std::nullopt;

  using detail::Vec;
  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> full;
    for (std::size_t i = 0; i < d; ++i) {
      Vec e(d, Scalar(0));
      e[i] = Scalar(1);
      full.push_back(std::move(e));
    }
    spaces.push_back(std::move(full));
  }
  for (const auto& m : ms) {
    const auto roots = roots_in_field(charpoly(m), delta);
    std::vector<std::vector<Vec>> next;
    for (const auto& space : spaces) {
      ExactMatrix basis(d, space.size(), Scalar(0));
      for (std::size_t c = 0; c < space.size(); ++c)
        for (std::size_t r = 0; r < d; ++r) basis(r, c) = space[c][r];
      std::size_t covered = 0;
      for (const auto& lam : roots) {
        ExactMatrix shifted = m;
        for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= lam;
        auto coords = detail::null_space(shifted * basis);
        if (coords.empty()) continue;
        std::vector<Vec> sub;
        for (const auto& x : coords) {
          Vec v(d, Scalar(0));
          for (std::size_t c = 0; c < space.size(); ++c)
            for (std::size_t r = 0; r < d; ++r) v[r] += basis(r, c) * x[c];
          sub.push_back(std::move(v));
        }
        covered += sub.size();
        next.push_back(std::move(sub));
      }
      if (covered != space.size()) return std::nullopt;
    }
    spaces = std::move(next);
  }
  // Orthonormal bases for all eigenspaces but the largest one; the largest is
  // the orthogonal complement of the rest and comes from Householder completion.
  std::size_t largest = 0;
  for (std::size_t k = 0; k < spaces.size(); ++k)
    if (spaces[k].size() >= spaces[largest].size()) largest = k;
  std::vector<Vec> units;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    if (k == largest) continue;
    auto on = detail::orthonormal_basis(spaces[k], delta);
    if (!on) return std::nullopt;
    for (auto& v : *on) units.push_back(std::move(v));
  }
  auto q = detail::complete_orthonormal(units, d);
  if (!q) return std::nullopt;
  ExactMatrix g = q->transpose();
  if (determinant(g) == Scalar(-1))
    for (std::size_t c = 0; c < d; ++c) g(0, c) = -g(0, c);
  if (!is_special_orthogonal(g)) return std::nullopt;
  for (const auto& m : ms)
    if (!(g * m * g.transpose()).is_diagonal()) return std::nullopt;
  return g;
}

/// {"matrix": [["p/q", …], …]}; entries may also be JSON integers.
inline ExactMatrix parse_matrix(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const std::size_t n = rows.size();
  ExactMatrix m(n, n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = rows[i][j];
      if (e.is_string())
        m(i, j) = parse_scalar(e.get<std::string>());
      else if (e.is_number_integer())
        m(i, j) = Scalar(e.get<long>());
      else
        throw ParseError("matrix entries must be scalar strings, got " + e.dump());
    }
  }
  return m;
}

inline ExactMatrix candidate_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("matrix")) throw ParseError("candidate document needs a \"matrix\" field");
  ExactMatrix m = parse_matrix(doc.at("matrix"));
  if (!m.is_symmetric()) throw ParseError("candidate matrix is not symmetric");
  return m;
}

inline ExactMatrix load_candidate_file(const std::string& path) { return candidate_from_json(read_json_file(path)); }

inline nlohmann::json matrix_to_json(const ExactMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(r);
  }
  return rows;
}

inline nlohmann::json candidate_to_json(const ExactMatrix& m) { return {{"matrix", matrix_to_json(m)}}; }

inline nlohmann::json vector_to_json(const std::vector<Scalar>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

}  // namespace scv
