// Mode-by-mode check of ω_A for the Heisenberg matrix at ℓ = 3.

#include <iostream>

#include "scv/report.hpp"

using namespace scv;

int main() {
  const auto ctx = builtin_sl2(Scalar(3));
  const ExactMatrix a = ExactMatrix::diagonal({Scalar::ratio(1, 6), Scalar(0), Scalar(0)});
  ExactOracle o(ctx.frame());

  const auto w = o.omega(a);
  std::cout << "w_A        = " << w.str() << "\n";
  std::cout << "L(1)w_A    = " << o.virasoro_mode(conformal_candidate(ctx), 1, w).str() << "\n";
  for (int n = 0; n <= 2; ++n) std::cout << "L'(" << n << ")w_A   = " << o.virasoro_mode(a, n, w).str() << "\n";

  const auto v = oracle_semi_conformal(o, a, ctx.h_dual());
  const auto r = is_semi_conformal(ctx, a);
  std::cout << "oracle: " << (v.member ? "member" : "not member: " + v.witness) << "\n";
  std::cout << "equations: " << (r.is_member ? "member" : "not member") << ", c' = " << r.r37_charge << "\n";

  const ExactMatrix b = a * Scalar(2);
  const auto vb = oracle_semi_conformal(o, b, ctx.h_dual());
  std::cout << "2A: " << (vb.member ? "member" : "not member: " + vb.witness) << "\n";
}
