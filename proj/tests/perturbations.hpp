#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "scv/liealg.hpp"

namespace scv::testing {

/// Tensors that each break exactly one validation check.
struct Perturbation {
  std::string target;
  AlgebraContext ctx;
};

/// sl₂ cycle entries 4/3 + (1/3)√−2, reversed entries 4/3 − (1/3)√−2.
inline AlgebraContext antisymmetry_perturbed() {
  std::vector<Scalar> g(27, Scalar(0));
  const Scalar fwd(Rational(4, 3), Rational(1, 3), -2), rev(Rational(4, 3), Rational(-1, 3), -2);
  for (auto [i, j, s] : {std::tuple{0, 1, 2}, std::tuple{1, 2, 0}, std::tuple{2, 0, 1}}) {
    g[(i * 3 + j) * 3 + s] = fwd;
    g[(j * 3 + i) * 3 + s] = rev;
  }
  return AlgebraContext("sl2_antisymmetry_broken", 3, 2, -2, g);
}

inline std::vector<Perturbation> separating_perturbations(const std::string& data_dir) {
  return {
      {"antisymmetry", antisymmetry_perturbed()},
      {"jacobi", parse_algebra(read_json_file(data_dir + "/bad/jacobi_violation.json"))},
      {"total_antisymmetry", parse_algebra(read_json_file(data_dir + "/perturbed/frame_sheared.json"))},
      {"casimir", parse_algebra(read_json_file(data_dir + "/perturbed/casimir_scaled.json"))},
  };
}

}  // namespace scv::testing
