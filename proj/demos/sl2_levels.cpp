// Diagonal semi-conformal vectors of V(ℓ,0) for sl2 across levels.

#include <iostream>

#include "scv/report.hpp"

using namespace scv;

int main(int argc, char** argv) {
  std::vector<Scalar> levels;
  for (int i = 1; i < argc; ++i) levels.push_back(parse_scalar(argv[i]));
  if (levels.empty()) levels = {Scalar(0), Scalar(1), Scalar(3), Scalar(4), Scalar::ratio(1, 2)};

  for (const auto& l : levels) {
    const auto d = classify(l);
    std::cout << "level " << l << " (" << to_string(d.regime) << "): " << d.orbits.size() << " orbits\n";
    const auto ctx = builtin_sl2(l);
    for (const auto& o : d.orbits) {
      std::cout << "  rep " << diagonal_json(o.representative).dump() << "  c' = " << central_charge(ctx.frame(), o.representative)
                << "  members " << o.members.size() << "\n";
    }
    if (d.family) std::cout << "  family e1 = " << d.family->e1 << ", e2 = " << d.family->e2 << "\n";
    if (!l.is_zero()) {
      const auto m = minimal_vectors(l);
      std::cout << "  minimal " << m.representatives.size() << " orbit(s)" << (m.family_minimal ? " plus the family" : "")
                << ", longest chain " << longest_chain(l) << "\n";
    }
  }
}
