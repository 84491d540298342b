#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scv/error.hpp"
#include "scv/matrix.hpp"
#include "scv/scalar.hpp"

namespace scv {

/// Sparse bracket [u^i, u^j] = Σ_s coeff·u^s.
template <class T>
struct BracketTerm {
  std::size_t s;
  T coeff;
};

/// Structure constants and level in a backend T. The exact context converts
/// to this for the residual equations and the oracle.
template <class T>
class Frame {
 public:
  Frame() = default;
  Frame(std::size_t dim, std::vector<T> g, T level, long delta)
      : dim_(dim), gamma_(std::move(g)), level_(std::move(level)), delta_(delta), brackets_(dim * dim) {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t s = 0; s < dim_; ++s)
          if (!is_zero(gamma(i, j, s))) brackets_[i * dim_ + j].push_back({s, gamma(i, j, s)});
  }

  std::size_t dim() const { return dim_; }
  const T& level() const { return level_; }
  long delta() const { return delta_; }
  const T& gamma(std::size_t i, std::size_t j, std::size_t s) const { return gamma_[(i * dim_ + j) * dim_ + s]; }
  const std::vector<BracketTerm<T>>& bracket(std::size_t i, std::size_t j) const { return brackets_[i * dim_ + j]; }
  T zero() const { return from_int(0, level_); }

  /// R^m with (i,j) entry γ_ij^m.
  Matrix<T> r(std::size_t m) const {
    Matrix<T> out(dim_, dim_, zero());
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) = gamma(i, j, m);
    return out;
  }
  /// R*_m with (i,j) entry γ_mi^j.
  Matrix<T> r_star(std::size_t m) const {
    Matrix<T> out(dim_, dim_, zero());
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) = gamma(m, i, j);
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<T> gamma_;
  T level_{};
  long delta_ = 0;
  std::vector<std::vector<BracketTerm<T>>> brackets_;
};

using ExactFrame = Frame<Scalar>;
using ApproxFrame = Frame<ApproxScalar>;

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
  }
  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c.name);
    return out;
  }
  const ValidationCheck& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw DomainError("no validation check named " + name);
  }
  std::string summary() const {
    std::string out;
    for (const auto& c : checks) {
      if (c.passed) continue;
      if (!out.empty()) out += "; ";
      out += c.name + ": " + c.detail;
    }
    return out;
  }
};

/// Simple Lie algebra in an orthonormal frame plus the level ℓ.
/// Indices are 0-based here; documents and messages use 1-based indices.
class AlgebraContext {
 public:
  AlgebraContext() = default;
  AlgebraContext(std::string name, std::size_t dim, long h_dual, long delta, std::vector<Scalar> gamma,
                 Scalar level = Scalar(0))
      : name_(std::move(name)), dim_(dim), h_dual_(h_dual), delta_(delta), gamma_(std::move(gamma)) {
    if (gamma_.size() != dim_ * dim_ * dim_) throw DomainError("structure tensor has wrong size");
    if (delta_ != 0 && !valid_discriminant(delta_))
      throw FieldError("discriminant " + std::to_string(delta_) + " is not square-free");
    for (auto& g : gamma_) g = g.in_field(delta_);
    set_level(std::move(level));
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  long h_dual() const { return h_dual_; }
  long delta() const { return delta_; }
  const Scalar& level() const { return level_; }
  const std::vector<Scalar>& gamma_data() const { return gamma_; }
  const Scalar& gamma(std::size_t i, std::size_t j, std::size_t s) const { return gamma_[(i * dim_ + j) * dim_ + s]; }

  AlgebraContext with_level(const Scalar& level) const {
    AlgebraContext c = *this;
    c.set_level(level);
    return c;
  }

  ExactFrame frame() const { return ExactFrame(dim_, gamma_, level_, delta_); }
  ApproxFrame approx_frame(long bits) const {
    std::vector<ApproxScalar> g;
    g.reserve(gamma_.size());
    for (const auto& x : gamma_) g.push_back(approximate(x, bits));
    return ApproxFrame(dim_, std::move(g), approximate(level_, bits), delta_);
  }

  friend bool operator==(const AlgebraContext& a, const AlgebraContext& b) {
    return a.name_ == b.name_ && a.dim_ == b.dim_ && a.h_dual_ == b.h_dual_ && a.delta_ == b.delta_ &&
           a.gamma_ == b.gamma_ && a.level_ == b.level_;
  }

 private:
  void set_level(Scalar level) {
    if (!level.is_rational()) throw DomainError("level must be rational");
    if (level == Scalar(-h_dual_)) throw CriticalLevelError();
    level_ = std::move(level);
  }

  std::string name_;
  std::size_t dim_ = 0;
  long h_dual_ = 0;
  long delta_ = 0;
  std::vector<Scalar> gamma_;
  Scalar level_;
};

/// sl₂ in the frame with γ_12^3 = γ_23^1 = γ_31^2 = √−2.
inline AlgebraContext builtin_sl2(const Scalar& level) {
  std::vector<Scalar> g(27, Scalar(0));
  auto at = [&](int i, int j, int s) -> Scalar& { return g[(i * 3 + j) * 3 + s]; };
  const Scalar r = Scalar::sqrt_delta(-2);
  for (auto [i, j, s] : {std::tuple{0, 1, 2}, std::tuple{1, 2, 0}, std::tuple{2, 0, 1}}) {
    at(i, j, s) = r;
    at(j, i, s) = -r;
  }
  return AlgebraContext("sl2", 3, 2, -2, std::move(g), level);
}

/// so(n), n ≥ 5, in the frame u = i(E_ab − E_ba), a < b, orthonormal for ½tr(xy).
inline AlgebraContext builtin_so(int n, const Scalar& level) {
  if (n < 5) throw DomainError("builtin so(n) needs n >= 5");
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  const std::size_t d = pairs.size();
  std::map<std::pair<int, int>, std::size_t> index;
  for (std::size_t k = 0; k < d; ++k) index[pairs[k]] = k;
  // With A_ab = E_ab − E_ba: [A_ab, A_bc] = A_ac, so [u_ab, u_bc] = i·u_ac.
  // Generic form: [A_ab, A_cd] = δ_bc A_ad − δ_ac A_bd − δ_bd A_ac + δ_ad A_bc.
  std::vector<Scalar> g(d * d * d, Scalar(0));
  const Scalar unit = Scalar::sqrt_delta(-1);
  auto add = [&](std::size_t i, std::size_t j, int p, int q, int sign) {
    if (p == q) return;
    int s = sign;
    if (p > q) {
      std::swap(p, q);
      s = -s;
    }
    g[(i * d + j) * d + index[{p, q}]] += unit * Scalar(s);
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto [a, b] = pairs[i];
      auto [c, e] = pairs[j];
      if (b == c) add(i, j, a, e, 1);
      if (a == c) add(i, j, b, e, -1);
      if (b == e) add(i, j, a, c, -1);
      if (a == e) add(i, j, b, c, 1);
    }
  return AlgebraContext("so" + std::to_string(n), d, n - 2, -1, std::move(g), level);
}

namespace detail {

inline std::string triple(std::size_t i, std::size_t j, std::size_t s) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(s + 1) + ")";
}

}  // namespace detail

/// Four independent frame conditions; together they say the tensor is the
/// totally antisymmetric structure tensor of a Lie algebra with Casimir 2h∨.
inline ValidationReport validate(const AlgebraContext& ctx) {
  const std::size_t d = ctx.dim();
  const auto& g = [&](std::size_t i, std::size_t j, std::size_t s) -> const Scalar& { return ctx.gamma(i, j, s); };
  ValidationReport rep;

  ValidationCheck anti{"antisymmetry", true, ""};
  for (std::size_t i = 0; i < d && anti.passed; ++i)
    for (std::size_t j = 0; j < d && anti.passed; ++j)
      for (std::size_t s = 0; s < d && anti.passed; ++s)
        if (!(g(i, j, s) + g(j, i, s)).is_zero()) {
          anti.passed = false;
          anti.detail = "gamma" + detail::triple(i, j, s) + " != -gamma" + detail::triple(j, i, s);
        }
  rep.checks.push_back(anti);

  ValidationCheck jac{"jacobi", true, ""};
  for (std::size_t i = 0; i < d && jac.passed; ++i)
    for (std::size_t j = i + 1; j < d && jac.passed; ++j)
      for (std::size_t k = j + 1; k < d && jac.passed; ++k)
        for (std::size_t s = 0; s < d && jac.passed; ++s) {
          Scalar v(0);
          for (std::size_t m = 0; m < d; ++m)
            v += g(j, k, m) * g(i, m, s) + g(k, i, m) * g(j, m, s) + g(i, j, m) * g(k, m, s);
          if (!v.is_zero()) {
            jac.passed = false;
            jac.detail = "fails at (i,j,k,s) = (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                         std::to_string(k + 1) + "," + std::to_string(s + 1) + ") with value " + v.str();
          }
        }
  rep.checks.push_back(jac);

  ValidationCheck inv{"total_antisymmetry", true, ""};
  for (std::size_t i = 0; i < d && inv.passed; ++i)
    for (std::size_t j = 0; j < d && inv.passed; ++j)
      for (std::size_t s = 0; s < d && inv.passed; ++s)
        if (!(g(i, j, s) == g(j, s, i))) {
          inv.passed = false;
          inv.detail = "gamma" + detail::triple(i, j, s) + " != gamma" + detail::triple(j, s, i);
        }
  rep.checks.push_back(inv);

  ValidationCheck cas{"casimir", true, ""};
  const Scalar target(2 * ctx.h_dual());
  for (std::size_t s = 0; s < d && cas.passed; ++s)
    for (std::size_t k = 0; k < d && cas.passed; ++k) {
      Scalar v(0);
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t j = 0; j < d; ++j) v += g(m, j, s) * g(m, k, j);
      const Scalar want = s == k ? target : Scalar(0);
      if (!(v == want)) {
        cas.passed = false;
        cas.detail = "entry (" + std::to_string(s + 1) + "," + std::to_string(k + 1) + ") is " + v.str() +
                     ", expected " + want.str();
      }
    }
  rep.checks.push_back(cas);
  return rep;
}

enum class SliceKind { RowSJ, ColJK, MatrixM, MatrixStarM };

/// Paper-convention views of the tensor; indices are 1-based.
/// RowSJ(s,j): 1×d row [γ_1j^s … γ_dj^s]. ColJK(j,k): d×1 column
/// [γ_k1^j … γ_kd^j]. MatrixM(m): R^m = (γ_ij^m). MatrixStarM(m): (γ_mi^j).
inline ExactMatrix slice(const AlgebraContext& ctx, SliceKind kind, std::vector<std::size_t> idx) {
  const std::size_t d = ctx.dim();
  const std::size_t want = (kind == SliceKind::RowSJ || kind == SliceKind::ColJK) ? 2 : 1;
  if (idx.size() != want) throw DomainError("slice expects " + std::to_string(want) + " indices");
  for (auto& x : idx) {
    if (x < 1 || x > d) throw DomainError("slice index " + std::to_string(x) + " out of range 1.." + std::to_string(d));
    --x;
  }
  switch (kind) {
    case SliceKind::RowSJ: {
      ExactMatrix out(1, d, Scalar(0));
      for (std::size_t i = 0; i < d; ++i) out(0, i) = ctx.gamma(i, idx[1], idx[0]);
      return out;
    }
    case SliceKind::ColJK: {
      ExactMatrix out(d, 1, Scalar(0));
      for (std::size_t i = 0; i < d; ++i) out(i, 0) = ctx.gamma(idx[1], i, idx[0]);
      return out;
    }
    case SliceKind::MatrixM:
      return ctx.frame().r(idx[0]);
    case SliceKind::MatrixStarM:
      return ctx.frame().r_star(idx[0]);
  }
  throw DomainError("unknown slice kind");
}

/// Parses a structure-constant document without validating it.
inline AlgebraContext parse_algebra(const nlohmann::json& doc, const Scalar& level = Scalar(0)) {
  try {
    const std::string name = doc.at("name").get<std::string>();
    const long dim = doc.at("dim").get<long>();
    const long h_dual = doc.at("h_dual").get<long>();
    const long delta = doc.at("discriminant").get<long>();
    if (dim < 1) throw ParseError("dim must be positive");
    if (h_dual < 1) throw ParseError("h_dual must be a positive integer");
    if (!valid_discriminant(delta))
      throw ParseError("discriminant " + std::to_string(delta) + " is not square-free (or is 0/1)");
    const auto d = static_cast<std::size_t>(dim);
    std::vector<Scalar> g(d * d * d, Scalar(0));
    std::vector<bool> seen(d * d * d, false);
    for (const auto& e : doc.at("gamma")) {
      if (!e.is_array() || e.size() != 4) throw ParseError("gamma entries are [i, j, s, \"scalar\"]");
      const long i = e[0].get<long>(), j = e[1].get<long>(), s = e[2].get<long>();
      if (i < 1 || j < 1 || s < 1 || i > dim || j > dim || s > dim)
        throw ParseError("gamma index out of range in " + e.dump());
      if (i >= j) throw ParseError("gamma entries must have i < j: " + e.dump());
      Scalar v = parse_scalar(e[3].get<std::string>());
      if (v.delta() != 0 && v.delta() != delta)
        throw ParseError("gamma entry " + e.dump() + " leaves Q(sqrt(" + std::to_string(delta) + "))");
      const std::size_t a = i - 1, b = j - 1, c = s - 1;
      if (seen[(a * d + b) * d + c]) throw ParseError("duplicate gamma entry " + e.dump());
      seen[(a * d + b) * d + c] = true;
      g[(a * d + b) * d + c] = v;
      g[(b * d + a) * d + c] = -v;
    }
    return AlgebraContext(name, d, h_dual, delta, std::move(g), level);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed algebra document: ") + ex.what());
  } catch (const FieldError& ex) {
    throw ParseError(ex.what());
  }
}

/// Parses and validates; any failed check aborts with the per-check detail.
inline AlgebraContext load_algebra(const nlohmann::json& doc, const Scalar& level = Scalar(0)) {
  AlgebraContext ctx = parse_algebra(doc, level);
  ValidationReport rep = validate(ctx);
  if (!rep.ok()) throw ValidationError("algebra '" + ctx.name() + "' failed validation: " + rep.summary());
  return ctx;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(path + ": " + ex.what());
  }
}

inline AlgebraContext load_algebra_file(const std::string& path, const Scalar& level = Scalar(0)) {
  return load_algebra(read_json_file(path), level);
}

/// Structure-constant document listing nonzero entries with i < j.
inline nlohmann::json algebra_to_json(const AlgebraContext& ctx) {
  nlohmann::json doc;
  doc["name"] = ctx.name();
  doc["dim"] = ctx.dim();
  doc["h_dual"] = ctx.h_dual();
  doc["discriminant"] = ctx.delta();
  nlohmann::json gamma = nlohmann::json::array();
  const std::size_t d = ctx.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t s = 0; s < d; ++s)
        if (!ctx.gamma(i, j, s).is_zero()) gamma.push_back({i + 1, j + 1, s + 1, ctx.gamma(i, j, s).str()});
  doc["gamma"] = gamma;
  return doc;
}

/// "sl2", "so5" (…"soN") or a path to a structure-constant file.
inline AlgebraContext resolve_algebra(const std::string& spec, const Scalar& level) {
  if (spec == "sl2") return builtin_sl2(level);
  if (spec.size() > 2 && spec.rfind("so", 0) == 0 &&
      std::all_of(spec.begin() + 2, spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return builtin_so(std::stoi(spec.substr(2)), level);
  return load_algebra_file(spec, level);
}

}  // namespace scv
