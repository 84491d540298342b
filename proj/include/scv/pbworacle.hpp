#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scv/error.hpp"
#include "scv/liealg.hpp"
#include "scv/matrix.hpp"
#include "scv/scalar.hpp"
#include "scv/sceq.hpp"

namespace scv {

/// One creation operator u^index(mode), mode < 0, index 0-based.
struct Factor {
  int index;
  int mode;

  /// Canonical order: modes non-increasing, then indices non-decreasing.
  friend auto operator<=>(const Factor& a, const Factor& b) {
    if (auto c = b.mode <=> a.mode; c != 0) return c;
    return a.index <=> b.index;
  }
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Normal-ordered PBW monomial applied to the vacuum; empty means 𝟙.
struct PBWMonomial {
  std::vector<Factor> factors;

  int weight() const {
    int w = 0;
    for (const auto& f : factors) w -= f.mode;
    return w;
  }
  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;

  /// "u1(-1)u3(-2)|0>" with 1-based indices.
  std::string str() const {
    std::string s;
    for (const auto& f : factors) s += "u" + std::to_string(f.index + 1) + "(" + std::to_string(f.mode) + ")";
    return s + "|0>";
  }
};

inline PBWMonomial monomial(std::vector<Factor> fs) {
  std::sort(fs.begin(), fs.end());
  return PBWMonomial{std::move(fs)};
}

/// Finitely supported PBWMonomial → T map without stored zeros.
template <class T>
class FockVector {
 public:
  using Map = std::map<PBWMonomial, T>;

  FockVector() = default;
  static FockVector vacuum(const T& one) {
    FockVector v;
    v.terms_.emplace(PBWMonomial{}, one);
    return v;
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_weight() const {
    int w = 0;
    for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
    return w;
  }

  void add(const PBWMonomial& m, const T& c) {
    if (scv::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (scv::is_zero(it->second)) terms_.erase(it);
  }
  void add(const FockVector& o, const T& scale) {
    for (const auto& [m, c] : o.terms_) add(m, c * scale);
  }
  FockVector& operator+=(const FockVector& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  FockVector scaled(const T& s) const {
    FockVector r;
    r.add(*this, s);
    return r;
  }

  /// Coefficient of m (zero when absent); `zero` supplies the backend.
  T coeff(const PBWMonomial& m, const T& zero) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? zero : it->second;
  }

  friend bool operator==(const FockVector& a, const FockVector& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")" + m.str();
    }
    return s;
  }

 private:
  Map terms_;
};

inline constexpr int kDefaultWeightCap = 3;

/// Graded PBW model of V(ℓ,0) with exact mode actions; memoizes monomial
/// actions for its frame.
template <class T>
class PBWOracle {
 public:
  explicit PBWOracle(Frame<T> frame, int weight_cap = kDefaultWeightCap)
      : frame_(std::move(frame)), cap_(weight_cap) {}

  const Frame<T>& frame() const { return frame_; }
  int weight_cap() const { return cap_; }
  T zero() const { return frame_.zero(); }
  T one() const { return from_int(1, frame_.zero()); }
  FockVector<T> vacuum() const { return FockVector<T>::vacuum(one()); }

  /// u^i(n)·v, i 0-based.
  FockVector<T> mode_action(std::size_t i, int n, const FockVector<T>& v) {
    if (i >= frame_.dim()) throw DomainError("basis index out of range");
    FockVector<T> out;
    for (const auto& [m, c] : v.terms()) {
      if (m.weight() - n > cap_)
        throw CapExceededError("u" + std::to_string(i + 1) + "(" + std::to_string(n) + ") on " + m.str() +
                               " exceeds weight cap " + std::to_string(cap_));
      out.add(act_monomial(static_cast<int>(i), n, m), c);
    }
    return out;
  }

  /// ω_A = Σ_pq a_pq u^p(−1)u^q(−1)𝟙 in PBW form.
  FockVector<T> omega(const Matrix<T>& a) {
    require_candidate_shape(frame_, a);
    FockVector<T> out;
    const FockVector<T> vac = vacuum();
    for (std::size_t p = 0; p < frame_.dim(); ++p)
      for (std::size_t q = 0; q < frame_.dim(); ++q) {
        if (is_zero(a(p, q))) continue;
        out.add(mode_action(p, -1, mode_action(q, -1, vac)), a(p, q));
      }
    return out;
  }

  /// Σ_ij a_ij u^i(−1)u^j(−1)𝟙 + Σ_s b_s u^s(−2)𝟙.
  FockVector<T> degree_two(const Matrix<T>& a, const std::vector<T>& b) {
    FockVector<T> out = omega(a);
    if (b.size() != frame_.dim()) throw DomainError("linear part has wrong length");
    for (std::size_t s = 0; s < b.size(); ++s) out.add(PBWMonomial{{Factor{static_cast<int>(s), -2}}}, b[s]);
    return out;
  }

  /// L'(n) = Σ_pq a_pq [Σ_{k<0} u^p(k)u^q(n−k) + Σ_{k≥0} u^q(n−k)u^p(k)].
  FockVector<T> virasoro_mode(const Matrix<T>& a, int n, const FockVector<T>& v) {
    require_candidate_shape(frame_, a);
    if (n < -1) throw DomainError("virasoro_mode supports n >= -1");
    const std::size_t d = frame_.dim();
    const int w = v.max_weight();
    FockVector<T> out;
    // k < 0: inner u^q(n−k) needs n−k ≤ w.
    for (int k = n - w; k < 0; ++k) {
      std::vector<FockVector<T>> inner(d);
      for (std::size_t q = 0; q < d; ++q) inner[q] = mode_action(q, n - k, v);
      for (std::size_t p = 0; p < d; ++p) {
        FockVector<T> wp;
        for (std::size_t q = 0; q < d; ++q)
          if (!is_zero(a(p, q))) wp.add(inner[q], a(p, q));
        if (!wp.is_zero()) out += mode_action(p, k, wp);
      }
    }
    // k ≥ 0: inner u^p(k) needs k ≤ w.
    for (int k = 0; k <= w; ++k) {
      std::vector<FockVector<T>> inner(d);
      for (std::size_t p = 0; p < d; ++p) inner[p] = mode_action(p, k, v);
      for (std::size_t q = 0; q < d; ++q) {
        FockVector<T> wq;
        for (std::size_t p = 0; p < d; ++p)
          if (!is_zero(a(p, q))) wq.add(inner[p], a(p, q));
        if (!wq.is_zero()) out += mode_action(q, n - k, wq);
      }
    }
    return out;
  }

  /// A_ω = 1/(2(ℓ + h∨))·I.
  Matrix<T> conformal_matrix(long h_dual) const {
    const T denom = from_int(2, zero()) * (frame_.level() + from_int(h_dual, zero()));
    if (is_zero(denom)) throw CriticalLevelError();
    return Matrix<T>::identity(frame_.dim(), zero()) * (one() / denom);
  }

 private:
  using Key = std::tuple<int, int, PBWMonomial>;

  const FockVector<T>& act_monomial(int i, int n, const PBWMonomial& m) {
    Key key{i, n, m};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    FockVector<T> res = compute(i, n, m);
    return cache_.emplace(std::move(key), std::move(res)).first->second;
  }

  FockVector<T> compute(int i, int n, const PBWMonomial& m) {
    FockVector<T> res;
    if (m.factors.empty()) {
      if (n < 0) res.add(PBWMonomial{{Factor{i, n}}}, one());
      return res;
    }
    const Factor head = m.factors.front();
    if (n < 0 && !(head < Factor{i, n})) {
      PBWMonomial out;
      out.factors.reserve(m.factors.size() + 1);
      out.factors.push_back(Factor{i, n});
      out.factors.insert(out.factors.end(), m.factors.begin(), m.factors.end());
      res.add(out, one());
      return res;
    }
    PBWMonomial rest{std::vector<Factor>(m.factors.begin() + 1, m.factors.end())};
    // u^i(n) u^j(m) = u^j(m) u^i(n) + [u^i,u^j](n+m) + n δ_{n+m,0} δ_ij ℓ
    const FockVector<T> moved = act_monomial(i, n, rest);
    for (const auto& [mm, c] : moved.terms()) res.add(act_monomial(head.index, head.mode, mm), c);
    for (const auto& term : frame_.bracket(static_cast<std::size_t>(i), static_cast<std::size_t>(head.index)))
      res.add(act_monomial(static_cast<int>(term.s), n + head.mode, rest), term.coeff);
    if (n + head.mode == 0 && i == head.index) res.add(rest, frame_.level() * from_int(n, zero()));
    return res;
  }

  Frame<T> frame_;
  int cap_;
  std::map<Key, FockVector<T>> cache_;
};

using ExactOracle = PBWOracle<Scalar>;

/// Coefficients of a weight-2 state, read as the symmetric quadratic matrix
/// S (S_ii of u^i(−1)²𝟙, S_ij = half the u^i(−1)u^j(−1)𝟙 coefficient for
/// i < j) and the u^s(−2)𝟙 coefficients.
template <class T>
struct WeightTwoCoefficients {
  Matrix<T> quad;
  std::vector<T> lin;
};

template <class T>
WeightTwoCoefficients<T> weight_two_coefficients(const Frame<T>& f, const FockVector<T>& v) {
  const std::size_t d = f.dim();
  const T zero = f.zero();
  WeightTwoCoefficients<T> out{Matrix<T>(d, d, zero), std::vector<T>(d, zero)};
  const T half = from_int(1, zero) / from_int(2, zero);
  for (const auto& [m, c] : v.terms()) {
    if (m.weight() != 2) throw DomainError("state has a component of weight " + std::to_string(m.weight()));
    if (m.factors.size() == 1) {
      out.lin[m.factors[0].index] += c;
    } else {
      const auto i = static_cast<std::size_t>(m.factors[0].index), j = static_cast<std::size_t>(m.factors[1].index);
      if (i == j) {
        out.quad(i, i) += c;
      } else {
        out.quad(i, j) += c * half;
        out.quad(j, i) += c * half;
      }
    }
  }
  return out;
}

/// Residuals read off the oracle, in the same normalization as sceq:
/// r34 = L'(1)ω_A, r35 = ½S and r36 = u(−2) part (after antisymmetric
/// rearrangement) of L'(0)ω_A − 2ω_A, r38 = ℓ tr A − ⟨L'(2)ω_A⟩.
template <class T>
struct OracleResiduals {
  Matrix<T> r34;
  Matrix<T> r35;
  Matrix<T> r36;
  T r38;
  FockVector<T> l1_conformal;  // L(1)ω_A
  FockVector<T> l0_defect;     // L'(0)ω_A − 2ω_A
  FockVector<T> l1_defect;     // L'(1)ω_A
  FockVector<T> l2_defect;     // L'(2)ω_A − ℓ tr A·𝟙
};

template <class T>
OracleResiduals<T> oracle_residuals(PBWOracle<T>& o, const Matrix<T>& a, long h_dual) {
  const Frame<T>& f = o.frame();
  const std::size_t d = f.dim();
  const T zero = f.zero();
  OracleResiduals<T> out;
  const FockVector<T> w = o.omega(a);
  out.l1_conformal = o.virasoro_mode(o.conformal_matrix(h_dual), 1, w);
  out.l0_defect = o.virasoro_mode(a, 0, w) - w.scaled(from_int(2, zero));
  out.l1_defect = o.virasoro_mode(a, 1, w);
  FockVector<T> l2 = o.virasoro_mode(a, 2, w);
  const T vac = l2.coeff(PBWMonomial{}, zero);
  out.r38 = f.level() * a.trace() - vac;
  out.l2_defect = l2 - o.vacuum().scaled(f.level() * a.trace());

  out.r34 = Matrix<T>(d, 1, zero);
  for (const auto& [m, c] : out.l1_defect.terms()) {
    if (m.factors.size() != 1 || m.factors[0].mode != -1) throw DomainError("L'(1) left weight 1");
    out.r34(m.factors[0].index, 0) += c;
  }
  auto co = weight_two_coefficients(f, out.l0_defect);
  out.r35 = co.quad * (from_int(1, zero) / from_int(2, zero));
  out.r36 = Matrix<T>(d, 1, zero);
  for (std::size_t l = 0; l < d; ++l) {
    T b = co.lin[l];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) b += co.quad(i, j) * f.gamma(i, j, l);
    out.r36(l, 0) = b;
  }
  return out;
}

struct OracleVerdict {
  bool member = false;
  std::string witness;  // first failing condition and its state; empty for members
};

/// Kills L(1)ω_A, L'(0)ω_A = 2ω_A, L'(1)ω_A = 0, L'(2)ω_A = ℓ tr(A)·𝟙.
template <class T>
OracleVerdict oracle_semi_conformal(PBWOracle<T>& o, const Matrix<T>& a, long h_dual) {
  if (!a.is_symmetric()) throw DomainError("candidate matrix is not symmetric");
  const OracleResiduals<T> r = oracle_residuals(o, a, h_dual);
  if (!r.l1_conformal.is_zero()) return {false, "L(1)w_A = " + r.l1_conformal.str()};
  if (!r.l0_defect.is_zero()) return {false, "L'(0)w_A - 2w_A = " + r.l0_defect.str()};
  if (!r.l1_defect.is_zero()) return {false, "L'(1)w_A = " + r.l1_defect.str()};
  if (!r.l2_defect.is_zero()) return {false, "L'(2)w_A - (c'/2)|0> = " + r.l2_defect.str()};
  return {true, ""};
}

inline OracleVerdict oracle_semi_conformal(const AlgebraContext& ctx, const ExactMatrix& a) {
  ExactOracle o(ctx.frame());
  return oracle_semi_conformal(o, a, ctx.h_dual());
}

/// Symmetric matrix with entries drawn from {−2,…,2}/{1,2,3}.
template <class Rng>
ExactMatrix random_small_symmetric(std::size_t d, Rng& rng) {
  ExactMatrix a(d, d, Scalar(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const long num = static_cast<long>(rng() % 5) - 2;
      const long den = static_cast<long>(rng() % 3) + 1;
      a(i, j) = a(j, i) = Scalar::ratio(num, den);
    }
  return a;
}

struct CalibrationReport {
  std::string algebra;
  int trials = 0;
  std::uint64_t seed = 0;
  struct Eq35Entry {
    Eq35Final final_term;
    Eq35TraceSign trace_sign;
    int agree;
  };
  struct Eq38Entry {
    Eq38Middle middle;
    int agree;
  };
  std::vector<Eq35Entry> eq35;
  std::vector<Eq38Entry> eq38;
  int eq34_agree = 0;
  int eq36_agree = 0;

  std::vector<Eq35Entry> eq35_winners() const {
    std::vector<Eq35Entry> w;
    for (const auto& e : eq35)
      if (e.agree == trials) w.push_back(e);
    return w;
  }
  std::vector<Eq38Entry> eq38_winners() const {
    std::vector<Eq38Entry> w;
    for (const auto& e : eq38)
      if (e.agree == trials) w.push_back(e);
    return w;
  }
};

inline constexpr Eq35Final kEq35Finals[] = {Eq35Final::ConventionSeven, Eq35Final::AsPrinted, Eq35Final::Transposed};
inline constexpr Eq35TraceSign kEq35Signs[] = {Eq35TraceSign::Plus, Eq35TraceSign::Minus};
inline constexpr Eq38Middle kEq38Middles[] = {Eq38Middle::RowColumn, Eq38Middle::ColumnRow, Eq38Middle::TraceOfSquares};

/// Scores every reading against oracle-extracted residuals: a trial agrees
/// when the reading's residual equals the oracle residual exactly.
inline CalibrationReport calibrate_equations(const AlgebraContext& ctx, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("calibration needs at least one trial");
  CalibrationReport rep;
  rep.algebra = ctx.name();
  rep.trials = trials;
  rep.seed = seed;
  for (auto f : kEq35Finals)
    for (auto s : kEq35Signs) rep.eq35.push_back({f, s, 0});
  for (auto m : kEq38Middles) rep.eq38.push_back({m, 0});

  std::vector<long> levels;
  for (long l = 1; l <= 7; ++l)
    if (l != -ctx.h_dual()) levels.push_back(l);
  std::mt19937_64 rng(seed);
  std::map<long, ExactOracle> oracles;
  for (int t = 0; t < trials; ++t) {
    const long level = levels[rng() % levels.size()];
    const ExactMatrix a = random_small_symmetric(ctx.dim(), rng);
    const AlgebraContext c = ctx.with_level(Scalar(level));
    auto it = oracles.find(level);
    if (it == oracles.end()) it = oracles.emplace(level, ExactOracle(c.frame())).first;
    const ExactFrame& f = it->second.frame();
    const OracleResiduals<Scalar> o = oracle_residuals(it->second, a, c.h_dual());
    if (residual_eq34(f, a) == o.r34) ++rep.eq34_agree;
    if (residual_eq36(f, a) == o.r36) ++rep.eq36_agree;
    const Eq35Parts<Scalar> p35 = eq35_parts(f, a);
    for (auto& e : rep.eq35) {
      Readings rd;
      rd.final_term = e.final_term;
      rd.trace_sign = e.trace_sign;
      if (p35.combine(rd) == o.r35) ++e.agree;
    }
    const Eq38Parts<Scalar> p38 = eq38_parts(f, a);
    for (auto& e : rep.eq38) {
      Readings rd;
      rd.middle = e.middle;
      if (p38.combine(rd) == o.r38) ++e.agree;
    }
  }
  return rep;
}

}  // namespace scv
