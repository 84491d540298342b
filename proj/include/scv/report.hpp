#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "scv/liealg.hpp"
#include "scv/matrix.hpp"
#include "scv/pbworacle.hpp"
#include "scv/sceq.hpp"
#include "scv/sl2solve.hpp"
#include "scv/weight2.hpp"

// JSON views of the library's result types. Scalars are exact strings.
namespace scv {

using nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

inline std::string scalar_text(const Scalar& s) { return s.str(); }
inline std::string scalar_text(const ApproxScalar& s) { return s.str(40); }

template <class T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(scalar_text(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

template <class T>
json column_json(const Matrix<T>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(scalar_text(m(i, 0)));
  return out;
}

inline json diagonal_json(const ExactMatrix& m) { return vector_to_json(m.diagonal_entries()); }

inline json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"ok", r.ok()}, {"checks", checks}};
}

inline json to_json(const Readings& rd) {
  return {{"eq35_final_term", to_string(rd.final_term)},
          {"eq35_trace_sign", to_string(rd.trace_sign)},
          {"eq38_middle", to_string(rd.middle)}};
}

template <class T>
json to_json(const ResidualReport<T>& r) {
  return {{"r34", column_json(r.r34)},
          {"r35", matrix_json(r.r35)},
          {"r36", column_json(r.r36)},
          {"r37_charge", scalar_text(r.r37_charge)},
          {"r38", scalar_text(r.r38)},
          {"eq34_zero", r.eq34_zero},
          {"eq35_zero", r.eq35_zero},
          {"eq36_zero", r.eq36_zero},
          {"eq38_zero", r.eq38_zero},
          {"is_member", r.is_member}};
}

inline json to_json(const FamilyDescriptor& f) { return {{"e1", f.e1.str()}, {"e2", f.e2.str()}}; }

inline json to_json(const DiagonalSolutionSet& s) {
  json iso = json::array();
  for (const auto& m : s.isolated) iso.push_back(diagonal_json(m));
  return {{"level", s.level.str()},
          {"regime", to_string(s.regime)},
          {"isolated", iso},
          {"family", s.family ? to_json(*s.family) : json(nullptr)}};
}

inline json to_json(const OrbitDescriptor& o) {
  return {{"e1", o.e1.str()},
          {"e2", o.e2.str()},
          {"e3", o.e3.str()},
          {"representative", o.representative ? diagonal_json(*o.representative) : json(nullptr)}};
}

inline json to_json(const OrbitDecomposition& d) {
  json orbits = json::array();
  for (const auto& o : d.orbits) {
    json members = json::array();
    for (const auto& m : o.members) members.push_back(diagonal_json(m));
    orbits.push_back({{"representative", diagonal_json(o.representative)},
                      {"invariants", to_json(o.descriptor)},
                      {"members", members}});
  }
  json out = {{"level", d.level.str()},
              {"regime", to_string(d.regime)},
              {"orbit_count", d.orbits.size()},
              {"orbits", orbits},
              {"family", nullptr}};
  if (d.family)
    out["family"] = {{"e1", d.family->e1.str()},
                     {"e2", d.family->e2.str()},
                     {"quotient", "S3 on diagonal entries"},
                     {"parameter", "e3 = a1*a2*a3 (affine line)"}};
  return out;
}

inline json to_json(const MinimalReport& r) {
  json reps = json::array();
  for (const auto& m : r.representatives) reps.push_back(diagonal_json(m));
  json samples = json::array();
  for (const auto& m : r.family_samples) samples.push_back(diagonal_json(m));
  return {{"level", r.level.str()},
          {"representatives", reps},
          {"family_minimal", r.family_minimal},
          {"family_samples", samples}};
}

inline json to_json(const CalibrationReport& r) {
  json e35 = json::array(), e38 = json::array();
  for (const auto& e : r.eq35)
    e35.push_back({{"final_term", to_string(e.final_term)}, {"trace_sign", to_string(e.trace_sign)}, {"agree", e.agree}});
  for (const auto& e : r.eq38) e38.push_back({{"middle", to_string(e.middle)}, {"agree", e.agree}});
  json w35 = json::array(), w38 = json::array();
  for (const auto& e : r.eq35_winners()) w35.push_back(to_string(e.final_term) + "/" + to_string(e.trace_sign));
  for (const auto& e : r.eq38_winners()) w38.push_back(to_string(e.middle));
  return {{"algebra", r.algebra}, {"trials", r.trials},       {"seed", r.seed},          {"eq34_agree", r.eq34_agree},
          {"eq36_agree", r.eq36_agree}, {"eq35", e35},         {"eq38", e38},             {"eq35_winners", w35},
          {"eq38_winners", w38}};
}

inline json to_json(const OracleVerdict& v) { return {{"member", v.member}, {"witness", v.witness}}; }

inline json envelope(const std::string& command, json inputs, json result) {
  return {{"tool_version", kToolVersion}, {"command", command}, {"inputs", std::move(inputs)}, {"result", std::move(result)}};
}

}  // namespace scv
