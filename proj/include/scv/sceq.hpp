#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "scv/approx.hpp"
#include "scv/error.hpp"
#include "scv/liealg.hpp"
#include "scv/matrix.hpp"
#include "scv/scalar.hpp"
#include "scv/weight2.hpp"

namespace scv {

/// Final term of the L'(0) matrix equation.
/// AsPrinted: (i,j) ↦ Σ_rs (AR^s)_ir (AR^j)_sr. ConventionSeven:
/// Σ_rs (AR^s)_ir (AR^j)_rs. Transposed: the AsPrinted entry at (j,i).
enum class Eq35Final { ConventionSeven, AsPrinted, Transposed };
/// Sign carried by the trace term M1_ij = Σ_rs (AR^i)_rs (AR^j)_sr.
enum class Eq35TraceSign { Plus, Minus };
/// Middle term of the L'(2) scalar equation.
/// RowColumn: 2Σ_ij (AR^jAR^i)_ij − Σ_i tr(A²(R^i)²). ColumnRow: same with
/// (j,i). TraceOfSquares: Σ_i tr((AR^i)²).
enum class Eq38Middle { RowColumn, ColumnRow, TraceOfSquares };

struct Readings {
  Eq35Final final_term = Eq35Final::Transposed;
  Eq35TraceSign trace_sign = Eq35TraceSign::Minus;
  Eq38Middle middle = Eq38Middle::TraceOfSquares;

  friend bool operator==(const Readings&, const Readings&) = default;
};

inline std::string to_string(Eq35Final f) {
  switch (f) {
    case Eq35Final::ConventionSeven: return "convention_seven";
    case Eq35Final::AsPrinted: return "as_printed";
    case Eq35Final::Transposed: return "transposed";
  }
  return "?";
}
inline std::string to_string(Eq35TraceSign s) { return s == Eq35TraceSign::Plus ? "plus" : "minus"; }
inline std::string to_string(Eq38Middle m) {
  switch (m) {
    case Eq38Middle::RowColumn: return "row_column";
    case Eq38Middle::ColumnRow: return "column_row";
    case Eq38Middle::TraceOfSquares: return "trace_of_squares";
  }
  return "?";
}

template <class T>
void require_candidate_shape(const Frame<T>& f, const Matrix<T>& a) {
  if (a.rows() != f.dim() || a.cols() != f.dim())
    throw DomainError("candidate is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", algebra has d = " +
                      std::to_string(f.dim()));
}

/// L'(1) condition: component s is Σ_j R^s_{*j}[Σ_l (AR^lA)R^j_{l*} + ℓ(A²)_j].
template <class T>
Matrix<T> residual_eq34(const Frame<T>& f, const Matrix<T>& a) {
  require_candidate_shape(f, a);
  const std::size_t d = f.dim();
  const T zero = f.zero();
  std::vector<Matrix<T>> arla;
  arla.reserve(d);
  for (std::size_t l = 0; l < d; ++l) arla.push_back(a * f.r(l) * a);
  const Matrix<T> a2 = a * a;
  Matrix<T> out(d, 1, zero);
  for (std::size_t j = 0; j < d; ++j) {
    // column vector Σ_l (AR^lA)·[γ_l1^j … γ_ld^j]ᵗ + ℓ·(A²)_{·j}
    Matrix<T> col(d, 1, zero);
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t r = 0; r < d; ++r) {
        const T& g = f.gamma(l, r, j);
        if (is_zero(g)) continue;
        for (std::size_t i = 0; i < d; ++i) col(i, 0) += arla[l](i, r) * g;
      }
    for (std::size_t i = 0; i < d; ++i) col(i, 0) += f.level() * a2(i, j);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t i = 0; i < d; ++i) out(s, 0) += f.gamma(i, j, s) * col(i, 0);
  }
  return out;
}

/// Reading-independent pieces of the L'(0) matrix equation: base =
/// 2ℓA² + Σ_m AR^mAR*_m − A, the trace term M1 and both index placements
/// of the final term.
template <class T>
struct Eq35Parts {
  Matrix<T> base;
  Matrix<T> m1;
  Matrix<T> printed;
  Matrix<T> convention_seven;

  Matrix<T> combine(const Readings& rd) const {
    Matrix<T> out = base;
    if (rd.trace_sign == Eq35TraceSign::Plus)
      out += m1;
    else
      out -= m1;
    switch (rd.final_term) {
      case Eq35Final::ConventionSeven: out += convention_seven; break;
      case Eq35Final::AsPrinted: out += printed; break;
      case Eq35Final::Transposed: out += printed.transpose(); break;
    }
    return out;
  }
};

template <class T>
Eq35Parts<T> eq35_parts(const Frame<T>& f, const Matrix<T>& a) {
  require_candidate_shape(f, a);
  const std::size_t d = f.dim();
  const T zero = f.zero();
  std::vector<Matrix<T>> p;  // P^m = A R^m
  p.reserve(d);
  for (std::size_t m = 0; m < d; ++m) p.push_back(a * f.r(m));

  Eq35Parts<T> out{a * a * (from_int(2, zero) * f.level()), Matrix<T>(d, d, zero), Matrix<T>(d, d, zero),
                   Matrix<T>(d, d, zero)};
  for (std::size_t m = 0; m < d; ++m) out.base += p[m] * a * f.r_star(m);
  out.base -= a;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      T t = zero;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) {
          const T& x = p[i](r, s);
          if (!is_zero(x)) t += x * p[j](s, r);
        }
      out.m1(i, j) = t;
      out.m1(j, i) = t;
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      T printed = zero, seven = zero;
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t r = 0; r < d; ++r) {
          const T& x = p[s](i, r);
          if (is_zero(x)) continue;
          printed += x * p[j](s, r);
          seven += x * p[j](r, s);
        }
      out.printed(i, j) = printed;
      out.convention_seven(i, j) = seven;
    }
  return out;
}

/// Matrix part 2ℓA² + Σ_m AR^mAR*_m ± M1 + M2 − A of the L'(0) condition.
template <class T>
Matrix<T> residual_eq35(const Frame<T>& f, const Matrix<T>& a, const Readings& rd = {}) {
  return eq35_parts(f, a).combine(rd);
}

/// Vector part ℓ·A·(Σ_i R^i A_i), A_i the i-th column of A.
template <class T>
Matrix<T> residual_eq36(const Frame<T>& f, const Matrix<T>& a) {
  require_candidate_shape(f, a);
  const std::size_t d = f.dim();
  Matrix<T> v(d, 1, f.zero());
  for (std::size_t i = 0; i < d; ++i) v += f.r(i) * a.column(i);
  return a * v * f.level();
}

/// c' = 2ℓ·tr(A).
template <class T>
T central_charge(const Frame<T>& f, const Matrix<T>& a) {
  require_candidate_shape(f, a);
  return from_int(2, f.zero()) * f.level() * a.trace();
}

/// Pieces of the L'(2) scalar equation: ℓ tr A − 2ℓ² tr A², Σ_i tr((AR^i)²),
/// the two placements Σ_ij (AR^jAR^i)_ij and Σ_ij (AR^jAR^i)_ji, and
/// Σ_i tr(A²(R^i)²).
template <class T>
struct Eq38Parts {
  T level;
  T base;
  T trace_of_squares;
  T row_column;
  T column_row;
  T last;

  T combine(const Readings& rd) const {
    switch (rd.middle) {
      case Eq38Middle::TraceOfSquares: return base - level * trace_of_squares;
      case Eq38Middle::RowColumn: return base - from_int(2, level) * level * row_column + level * last;
      case Eq38Middle::ColumnRow: return base - from_int(2, level) * level * column_row + level * last;
    }
    return base;
  }
};

template <class T>
Eq38Parts<T> eq38_parts(const Frame<T>& f, const Matrix<T>& a) {
  require_candidate_shape(f, a);
  const std::size_t d = f.dim();
  const T zero = f.zero();
  const T& l = f.level();
  const Matrix<T> a2 = a * a;
  std::vector<Matrix<T>> p;
  for (std::size_t m = 0; m < d; ++m) p.push_back(a * f.r(m));
  Eq38Parts<T> out{l, l * a.trace() - from_int(2, zero) * l * l * a2.trace(), zero, zero, zero, zero};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        if (!is_zero(p[j](i, k))) out.row_column += p[j](i, k) * p[i](k, j);
        if (!is_zero(p[j](j, k))) out.column_row += p[j](j, k) * p[i](k, i);
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (!is_zero(p[i](r, c))) out.trace_of_squares += p[i](r, c) * p[i](c, r);
  for (std::size_t i = 0; i < d; ++i) {
    const Matrix<T> ri = f.r(i);
    out.last += (a2 * ri * ri).trace();
  }
  return out;
}

/// Left side minus right side of the L'(2) scalar equation.
template <class T>
T residual_eq38(const Frame<T>& f, const Matrix<T>& a, const Readings& rd = {}) {
  return eq38_parts(f, a).combine(rd);
}

template <class T>
struct ResidualReport {
  Matrix<T> r34;
  Matrix<T> r35;
  Matrix<T> r36;
  T r37_charge;
  T r38;
  bool is_member = false;
  bool eq34_zero = false;
  bool eq35_zero = false;
  bool eq36_zero = false;
  bool eq38_zero = false;
};

/// Magnitude below which an approximate residual counts as zero.
inline constexpr long kApproxZeroLog2 = -100;

namespace detail {

inline bool residual_vanishes(const Scalar& x, const Scalar&) { return x.is_zero(); }
inline bool residual_vanishes(const ApproxScalar& x, const ApproxScalar& scale) {
  if (x.is_zero()) return true;
  return (x / scale).log2_magnitude() < static_cast<double>(kApproxZeroLog2);
}

template <class T>
bool matrix_vanishes(const Matrix<T>& m, const T& scale) {
  for (const auto& x : m.data())
    if (!residual_vanishes(x, scale)) return false;
  return true;
}

inline Scalar residual_scale(const ExactMatrix& a) { return a.zero(); }
/// max(1, max|a_ij|)²: the residuals are quadratic in A.
inline ApproxScalar residual_scale(const ApproxMatrix& a) {
  const long bits = a.rows() ? a(0, 0).precision_bits() : kDefaultPrecisionBits;
  double best = 0;
  ApproxScalar scale(1, bits);
  for (const auto& x : a.data()) {
    double lg = x.log2_magnitude();
    if (lg > best) {
      best = lg;
      detail::Mpfr m = x.magnitude();
      ApproxScalar s(bits);
      mpfr_set(s.real().get(), m.get(), MPFR_RNDN);
      scale = s;
    }
  }
  return scale * scale;
}

}  // namespace detail

/// All residuals, the central charge and the membership verdict.
template <class T>
ResidualReport<T> is_semi_conformal(const Frame<T>& f, const Matrix<T>& a, const Readings& rd = {}) {
  require_candidate_shape(f, a);
  if (!a.is_symmetric()) throw DomainError("candidate matrix is not symmetric");
  ResidualReport<T> rep;
  rep.r34 = residual_eq34(f, a);
  rep.r35 = residual_eq35(f, a, rd);
  rep.r36 = residual_eq36(f, a);
  rep.r37_charge = central_charge(f, a);
  rep.r38 = residual_eq38(f, a, rd);
  const T scale = detail::residual_scale(a);
  rep.eq34_zero = detail::matrix_vanishes(rep.r34, scale);
  rep.eq35_zero = detail::matrix_vanishes(rep.r35, scale);
  rep.eq36_zero = detail::matrix_vanishes(rep.r36, scale);
  rep.eq38_zero = detail::residual_vanishes(rep.r38, scale);
  rep.is_member = rep.eq34_zero && rep.eq35_zero && rep.eq36_zero && rep.eq38_zero;
  return rep;
}

inline ResidualReport<Scalar> is_semi_conformal(const AlgebraContext& ctx, const ExactMatrix& a,
                                                const Readings& rd = {}) {
  return is_semi_conformal(ctx.frame(), a, rd);
}
inline ResidualReport<ApproxScalar> is_semi_conformal_approx(const AlgebraContext& ctx, const ExactMatrix& a,
                                                             long bits = precision_bits_from_env(),
                                                             const Readings& rd = {}) {
  return is_semi_conformal(ctx.approx_frame(bits), approximate(a, bits), rd);
}

/// True when ctx carries the built-in sl₂ structure constants.
inline bool is_builtin_sl2_frame(const AlgebraContext& ctx) {
  return ctx.dim() == 3 && ctx.h_dual() == 2 && ctx.gamma_data() == builtin_sl2(Scalar(0)).gamma_data();
}

/// The seven pairing relations for diagonal sl₂ members; index r is 0-based.
inline std::vector<Scalar> partial_order_relations(const Scalar& l, const std::vector<Scalar>& a,
                                                   const std::vector<Scalar>& b) {
  const Scalar &a1 = a[0], &a2 = a[1], &a3 = a[2], &b1 = b[0], &b2 = b[1], &b3 = b[2];
  const Scalar two(2), four(4);
  const Scalar tl = two * l;
  return {
      two * (a1 * b2 + a2 * b1 + a1 * b3 + a3 * b1 - a2 * b3 - a3 * b2) + tl * a1 * b1 - a1,
      two * (a1 * b2 + a2 * b1 + a2 * b3 + a3 * b2 - a1 * b3 - a3 * b1) + tl * a2 * b2 - a2,
      two * (a1 * b3 + a3 * b1 + a2 * b3 + a3 * b2 - a1 * b2 - a2 * b1) + tl * a3 * b3 - a3,
      tl * a1 * b1 + four * (b1 * a2 + b3 * a1 - b3 * a2) - (tl * a1 * a1 + four * (a1 * a2 + a1 * a3 - a2 * a3)),
      tl * a2 * b2 + four * (b2 * a1 - b3 * a1 + b3 * a2) - (tl * a2 * a2 + four * (a1 * a2 + a2 * a3 - a1 * a3)),
      tl * a3 * b3 + four * (b3 * a1 + b2 * a3 - b2 * a1) - (tl * a3 * a3 + four * (a1 * a3 + a2 * a3 - a1 * a2)),
      b1 * a2 - b2 * a1 + b3 * a1 - b1 * a3 + b2 * a3 - b3 * a2,
  };
}

/// ω_A ⪯ ω_B for diagonal sl₂ members A, B.
inline bool partial_order_diag(const AlgebraContext& ctx, const ExactMatrix& a, const ExactMatrix& b) {
  if (!is_builtin_sl2_frame(ctx)) throw DomainError("diagonal partial order needs the sl2 frame");
  require_candidate_shape(ctx.frame(), a);
  require_candidate_shape(ctx.frame(), b);
  if (!a.is_diagonal() || !b.is_diagonal()) throw DomainError("partial order input is not diagonal");
  if (!is_semi_conformal(ctx, a).is_member) throw DomainError("first argument is not semi-conformal");
  if (!is_semi_conformal(ctx, b).is_member) throw DomainError("second argument is not semi-conformal");
  for (const auto& r : partial_order_relations(ctx.level(), a.diagonal_entries(), b.diagonal_entries()))
    if (!r.is_zero()) return false;
  return true;
}

/// ω_A ⪯ ω_B for sl₂ members; non-diagonal pairs are first brought to
/// diagonal form by one special-orthogonal g over ℚ(√δ).
inline bool partial_order(const AlgebraContext& ctx, const ExactMatrix& a, const ExactMatrix& b) {
  if (a.is_diagonal() && b.is_diagonal()) return partial_order_diag(ctx, a, b);
  require_candidate(ctx, a);
  require_candidate(ctx, b);
  const auto g = orthogonal_diagonalizer({a, b}, ctx.delta());
  if (!g) throw DomainError("no special-orthogonal diagonalizer over Q(sqrt(" + std::to_string(ctx.delta()) + ")) for this pair");
  return partial_order_diag(ctx, *g * a * g->transpose(), *g * b * g->transpose());
}

}  // namespace scv
