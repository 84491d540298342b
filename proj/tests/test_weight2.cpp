#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "scv/pbworacle.hpp"
#include "scv/sceq.hpp"
#include "scv/sl2solve.hpp"
#include "scv/weight2.hpp"

using namespace scv;
using scv::testing::diag;

namespace {

const Scalar r2 = Scalar::sqrt_delta(-2);

std::vector<Scalar> sorted_diag(const ExactMatrix& m) {
  auto d = m.diagonal_entries();
  std::sort(d.begin(), d.end(), [](const Scalar& a, const Scalar& b) { return canonical_order(a, b) < 0; });
  return d;
}

ExactMatrix s1() { return {{Scalar(0), Scalar(1), Scalar(0)}, {Scalar(-1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}}; }

}  // namespace

TEST(NormalForm, SymmetricQuadraticIsInKernel) {
  const auto ctx = builtin_sl2(Scalar(3));
  const ExactMatrix a = {{Scalar(1), Scalar(2), Scalar(0)}, {Scalar(2), Scalar(0), Scalar(-1)}, {Scalar(0), Scalar(-1), Scalar(3)}};
  const auto nf = normal_form(ctx, {a, std::vector<Scalar>(3, Scalar(0))});
  EXPECT_EQ(nf.sym, a);
  EXPECT_EQ(nf.b_eff, std::vector<Scalar>(3, Scalar(0)));
  EXPECT_TRUE(nf.in_kernel());
}

TEST(NormalForm, PureLinearVectorIsNotInKernel) {
  const auto ctx = builtin_sl2(Scalar(3));
  const DegreeTwoVector v{ExactMatrix(3, 3, Scalar(0)), {Scalar(1), Scalar(0), Scalar(0)}};
  const auto nf = normal_form(ctx, v);
  EXPECT_EQ(nf.b_eff, (std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(0)}));
  EXPECT_FALSE(in_kernel_l1(ctx, v));
}

TEST(NormalForm, AntisymmetricPartCancelsLinearPart) {
  const auto ctx = builtin_sl2(Scalar(3));
  ExactMatrix a(3, 3, Scalar(0));
  a(0, 1) = Scalar(1);
  a(1, 0) = Scalar(-1);
  const DegreeTwoVector v{a, {Scalar(0), Scalar(0), -r2}};
  const auto nf = normal_form(ctx, v);
  EXPECT_TRUE(nf.sym.is_zero_matrix());
  EXPECT_EQ(nf.b_eff, std::vector<Scalar>(3, Scalar(0)));
  EXPECT_TRUE(in_kernel_l1(ctx, v));
}

TEST(NormalForm, ShapeMismatch) {
  EXPECT_THROW(normal_form(builtin_sl2(Scalar(1)), {ExactMatrix(2, 2, Scalar(0)), {}}), DomainError);
}

TEST(NormalFormProperty, ReexpansionGivesTheSameState) {
  std::mt19937_64 rng(31);
  for (const auto& ctx : {builtin_sl2(Scalar(3)), builtin_so(5, Scalar(2))}) {
    ExactOracle o(ctx.frame());
    for (int t = 0; t < 25; ++t) {
      const std::size_t d = ctx.dim();
      ExactMatrix a(d, d, Scalar(0));
      std::vector<Scalar> b(d, Scalar(0));
      for (std::size_t i = 0; i < d; ++i) {
        b[i] = scv::testing::random_scalar(rng, ctx.delta());
        for (std::size_t j = 0; j < d; ++j)
          if (rng() % 3 == 0) a(i, j) = scv::testing::random_scalar(rng, ctx.delta(), false);
      }
      const auto nf = normal_form(ctx, {a, b});
      EXPECT_EQ(o.degree_two(a, b) - o.degree_two(nf.sym, nf.b_eff), FockVector<Scalar>());
    }
  }
}

TEST(InKernelProperty, AgreesWithOracleL1) {
  std::mt19937_64 rng(37);
  const auto ctx = builtin_sl2(Scalar(5));
  ExactOracle o(ctx.frame());
  const ExactMatrix aw = conformal_candidate(ctx);
  int in_kernel = 0;
  for (int t = 0; t < 60; ++t) {
    ExactMatrix a(3, 3, Scalar(0));
    std::vector<Scalar> b(3, Scalar(0));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = Scalar(static_cast<long>(rng() % 5) - 2);
    // Half the trials pick b so that the antisymmetric part cancels it.
    if (t % 2 == 0) {
      for (std::size_t l = 0; l < 3; ++l)
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = i + 1; j < 3; ++j) b[l] -= (a(i, j) - a(j, i)) * Scalar::ratio(1, 2) * ctx.gamma(i, j, l);
    } else {
      for (auto& x : b) x = Scalar(static_cast<long>(rng() % 3) - 1) * r2;
    }
    const DegreeTwoVector v{a, b};
    const bool oracle = o.virasoro_mode(aw, 1, o.degree_two(a, b)).is_zero();
    EXPECT_EQ(in_kernel_l1(ctx, v), oracle);
    in_kernel += oracle;
  }
  EXPECT_GE(in_kernel, 30);
}

TEST(Conformal, Values) {
  EXPECT_EQ(conformal_candidate(builtin_sl2(Scalar(4))), diag(Scalar::ratio(1, 12), Scalar::ratio(1, 12), Scalar::ratio(1, 12)));
  EXPECT_EQ(conformal_candidate(builtin_sl2(Scalar(0))), diag(Scalar::ratio(1, 4), Scalar::ratio(1, 4), Scalar::ratio(1, 4)));
  EXPECT_EQ(conformal_candidate(builtin_sl2(Scalar(3))), diag(Scalar::ratio(1, 10), Scalar::ratio(1, 10), Scalar::ratio(1, 10)));
}

TEST(Complement, ConformalGoesToZero) {
  const auto ctx = builtin_sl2(Scalar(3));
  EXPECT_TRUE(complement(ctx, conformal_candidate(ctx)).is_zero_matrix());
}

TEST(Complement, LevelFourFamilyPoint) {
  const auto ctx = builtin_sl2(Scalar(4));
  EXPECT_EQ(complement(ctx, diag(Scalar::ratio(1, 8), 0, 0)), diag(Scalar::ratio(-1, 24), Scalar::ratio(1, 12), Scalar::ratio(1, 12)));
}

TEST(Complement, HeisenbergGoesToParafermion) {
  for (const Scalar& l : {Scalar(1), Scalar(2), Scalar(3), Scalar(7), Scalar::ratio(1, 2), Scalar::ratio(-1, 3)}) {
    const auto ctx = builtin_sl2(l);
    const ExactMatrix a1 = diag(Scalar(1) / (Scalar(2) * l), 0, 0);
    const Scalar w = Scalar(1) / (Scalar(2) * (l + Scalar(2)));
    const ExactMatrix a4 = diag(Scalar(-1) / (l * (l + Scalar(2))), w, w);
    EXPECT_EQ(sorted_diag(complement(ctx, a1)), sorted_diag(a4)) << l;
  }
}

TEST(ComplementProperty, Involution) {
  std::mt19937_64 rng(41);
  const auto ctx = builtin_sl2(Scalar::ratio(5, 3));
  for (int t = 0; t < 50; ++t) {
    const ExactMatrix a = random_small_symmetric(3, rng);
    EXPECT_EQ(complement(ctx, complement(ctx, a)), a);
  }
}

TEST(Complement, RejectsNonSymmetric) {
  ExactMatrix a(3, 3, Scalar(0));
  a(0, 1) = Scalar(1);
  EXPECT_THROW(complement(builtin_sl2(Scalar(3)), a), DomainError);
}

TEST(Congruence, IdentityLeavesUnchanged) {
  const auto ctx = builtin_sl2(Scalar(3));
  const ExactMatrix a = diag(Scalar::ratio(1, 6), 0, 0);
  EXPECT_EQ(congruence_act(ctx, ExactMatrix::identity(3, Scalar(0)), a), a);
}

TEST(Congruence, SignedPermutationMovesA1ToA2) {
  const auto ctx = builtin_sl2(Scalar(3));
  EXPECT_EQ(congruence_act(ctx, s1(), diag(Scalar::ratio(1, 6), 0, 0)), diag(0, Scalar::ratio(1, 6), 0));
}

TEST(Congruence, RejectsNonSpecialOrthogonal) {
  const auto ctx = builtin_sl2(Scalar(3));
  const ExactMatrix a = diag(1, 2, 3);
  EXPECT_THROW(congruence_act(ctx, diag(-1, 1, 1), a), DomainError);
  EXPECT_THROW(congruence_act(ctx, diag(2, 1, Scalar::ratio(1, 2)), a), DomainError);
}

TEST(Congruence, GivensIsSpecialOrthogonal) {
  for (const Scalar& t : {Scalar(0), Scalar(1), Scalar::ratio(-2, 3), Scalar(1) + r2})
    EXPECT_TRUE(is_special_orthogonal(givens(3, 0, 2, t))) << t;
}

TEST(CongruenceProperty, EquivarianceAndCharpoly) {
  std::mt19937_64 rng(43);
  const auto ctx = builtin_sl2(Scalar(3));
  const auto sols = solve_diagonal(Scalar(3)).isolated;
  for (int t = 0; t < 25; ++t) {
    const ExactMatrix g = random_special_orthogonal(3, rng);
    const ExactMatrix a = random_small_symmetric(3, rng);
    const ExactMatrix b = congruence_act(ctx, g, a);
    EXPECT_TRUE(b.is_symmetric());
    EXPECT_EQ(characteristic_polynomial(b), characteristic_polynomial(a));
    EXPECT_EQ(is_semi_conformal(ctx, b).is_member, is_semi_conformal(ctx, a).is_member);
    const ExactMatrix& s = sols[static_cast<std::size_t>(t) % sols.size()];
    EXPECT_TRUE(is_semi_conformal(ctx, congruence_act(ctx, g, s)).is_member);
  }
}

TEST(Diagonalizer, UndoesRationalRotation) {
  std::mt19937_64 rng(47);
  const auto ctx = builtin_sl2(Scalar(3));
  for (int t = 0; t < 20; ++t) {
    const ExactMatrix g = random_special_orthogonal(3, rng);
    const ExactMatrix a = congruence_act(ctx, g, diag(Scalar::ratio(1, 6), 0, 0));
    const ExactMatrix w = conformal_candidate(ctx);
    const auto h = orthogonal_diagonalizer({a, w}, -2);
    ASSERT_TRUE(h.has_value());
    EXPECT_TRUE(is_special_orthogonal(*h));
    EXPECT_TRUE((*h * a * h->transpose()).is_diagonal());
  }
}

TEST(Diagonalizer, RejectsNonCommutingPair) {
  const ExactMatrix a = diag(1, 2, 3);
  ExactMatrix b(3, 3, Scalar(0));
  b(0, 1) = b(1, 0) = Scalar(1);
  EXPECT_FALSE(orthogonal_diagonalizer({a, b}, -2).has_value());
}

TEST(Diagonalizer, RejectsNilpotentSymmetric) {
  // [[1, i], [i, −1]] with i = √−1 is symmetric, nonzero and squares to zero.
  const Scalar i = Scalar::sqrt_delta(-1);
  const ExactMatrix n = {{Scalar(1), i, Scalar(0)}, {i, Scalar(-1), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(0)}};
  EXPECT_TRUE((n * n).is_zero_matrix());
  EXPECT_FALSE(orthogonal_diagonalizer({n}, -1).has_value());
}

TEST(CandidateJson, RoundTripAndSymmetry) {
  const ExactMatrix a = diag(Scalar::ratio(1, 6), 0, r2);
  EXPECT_EQ(candidate_from_json(candidate_to_json(a)), a);
  EXPECT_THROW(load_candidate_file(scv::testing::data_path("candidates/not_symmetric.json")), ParseError);
  EXPECT_EQ(load_candidate_file(scv::testing::data_path("candidates/a1_level3.json")), diag(Scalar::ratio(1, 6), 0, 0));
  EXPECT_THROW(candidate_from_json(nlohmann::json::parse(R"({"matrix": [["1", 0.5], ["0", "1"]]})")), ParseError);
  EXPECT_THROW(candidate_from_json(nlohmann::json::parse(R"({"matrix": [["1", "0"]]})")), ParseError);
}
