#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "scv/pbworacle.hpp"
#include "scv/sceq.hpp"
#include "scv/sl2solve.hpp"
#include "scv/weight2.hpp"

using namespace scv;
using scv::testing::diag;

namespace {

ExactMatrix a1(const Scalar& l) { return diag(Scalar(1) / (Scalar(2) * l), 0, 0); }
ExactMatrix a4(const Scalar& l) {
  const Scalar w = Scalar(1) / (Scalar(2) * (l + Scalar(2)));
  return diag(Scalar(-1) / (l * (l + Scalar(2))), w, w);
}

/// A random isolated solution at ℓ, or a family point at ℓ = 4.
template <class Rng>
ExactMatrix pick_solution(const Scalar& l, Rng& rng) {
  auto pool = solve_diagonal(l).isolated;
  if (l == Scalar(4))
    for (const auto& m : level4_family_samples(4)) pool.push_back(m);
  return pool[rng() % pool.size()];
}

}  // namespace

TEST(Eq34, Examples) {
  const auto ctx = builtin_sl2(Scalar(3));
  const auto f = ctx.frame();
  EXPECT_TRUE(residual_eq34(f, ExactMatrix(3, 3, Scalar(0))).is_zero_matrix());
  EXPECT_TRUE(residual_eq34(f, conformal_candidate(ctx)).is_zero_matrix());
  EXPECT_TRUE(residual_eq34(f, diag(Scalar::ratio(1, 6), 0, 0)).is_zero_matrix());
}

TEST(Eq35, Examples) {
  const auto f = builtin_sl2(Scalar(3)).frame();
  EXPECT_TRUE(residual_eq35(f, ExactMatrix(3, 3, Scalar(0))).is_zero_matrix());
  EXPECT_TRUE(residual_eq36(f, ExactMatrix(3, 3, Scalar(0))).is_zero_matrix());
  const ExactMatrix m = diag(Scalar::ratio(-1, 15), Scalar::ratio(1, 10), Scalar::ratio(1, 10));
  EXPECT_TRUE(residual_eq35(f, m).is_zero_matrix());
  EXPECT_TRUE(residual_eq36(f, m).is_zero_matrix());
  EXPECT_FALSE(residual_eq35(f, diag(1, 0, 0)).is_zero_matrix());
}

TEST(Eq35, DiagonalReductionLineOne) {
  // For diag(1,0,0) at ℓ = 3 the (1,1) entry is 2ℓa₁² − a₁ = 5.
  const auto f = builtin_sl2(Scalar(3)).frame();
  EXPECT_EQ(residual_eq35(f, diag(1, 0, 0))(0, 0), Scalar(5));
}

TEST(Eq35, ReadingsDifferOffDiagonal) {
  const auto ctx = builtin_so(5, Scalar(2));
  std::mt19937_64 rng(5);
  const ExactMatrix a = random_small_symmetric(ctx.dim(), rng);
  const auto f = ctx.frame();
  const Readings printed{Eq35Final::AsPrinted, Eq35TraceSign::Minus, Eq38Middle::TraceOfSquares};
  EXPECT_FALSE(residual_eq35(f, a) == residual_eq35(f, a, printed));
}

TEST(CentralCharge, Examples) {
  for (long li : {1, 2, 3, 5, 7}) {
    const Scalar l(li);
    const auto ctx = builtin_sl2(l);
    const auto f = ctx.frame();
    EXPECT_EQ(central_charge(f, ExactMatrix(3, 3, Scalar(0))), Scalar(0));
    EXPECT_EQ(central_charge(f, a1(l)), Scalar(1));
    EXPECT_EQ(central_charge(f, conformal_candidate(ctx)), Scalar(3) * l / (l + Scalar(2)));
    EXPECT_EQ(central_charge(f, a4(l)), Scalar(2) * (l - Scalar(1)) / (l + Scalar(2)));
  }
}

TEST(Eq38, Examples) {
  const auto ctx = builtin_sl2(Scalar(3));
  const auto f = ctx.frame();
  EXPECT_EQ(residual_eq38(f, ExactMatrix(3, 3, Scalar(0))), Scalar(0));
  EXPECT_EQ(residual_eq38(f, conformal_candidate(ctx)), Scalar(0));
  EXPECT_EQ(residual_eq38(f, diag(Scalar::ratio(1, 6), 0, 0)), Scalar(0));
  EXPECT_NE(residual_eq38(f, diag(1, 0, 0)), Scalar(0));
}

TEST(EqShape, DimensionMismatch) {
  const auto f = builtin_sl2(Scalar(3)).frame();
  const ExactMatrix bad(2, 2, Scalar(0));
  EXPECT_THROW(residual_eq34(f, bad), DomainError);
  EXPECT_THROW(residual_eq35(f, bad), DomainError);
  EXPECT_THROW(residual_eq36(f, bad), DomainError);
  EXPECT_THROW(residual_eq38(f, bad), DomainError);
}

TEST(Membership, Examples) {
  const auto ctx3 = builtin_sl2(Scalar(3));
  const auto rep = is_semi_conformal(ctx3, a1(Scalar(3)));
  EXPECT_TRUE(rep.is_member);
  EXPECT_EQ(rep.r37_charge, Scalar(1));
  EXPECT_FALSE(is_semi_conformal(ctx3, conformal_candidate(ctx3) * Scalar::ratio(1, 2)).is_member);
  EXPECT_TRUE(is_semi_conformal(builtin_sl2(Scalar(4)), diag(0, 0, Scalar::ratio(1, 8))).is_member);
  EXPECT_TRUE(is_semi_conformal(builtin_sl2(Scalar(4)), diag(Scalar::ratio(1, 12), Scalar::ratio(1, 12), Scalar::ratio(-1, 24))).is_member);
}

TEST(Membership, LevelZeroConformal) {
  const auto ctx = builtin_sl2(Scalar(0));
  EXPECT_TRUE(is_semi_conformal(ctx, conformal_candidate(ctx)).is_member);
  EXPECT_FALSE(is_semi_conformal(ctx, diag(1, 0, 0)).is_member);
}

TEST(Membership, So5Conformal) {
  const auto ctx = builtin_so(5, Scalar(1));
  EXPECT_TRUE(is_semi_conformal(ctx, conformal_candidate(ctx)).is_member);
  EXPECT_TRUE(is_semi_conformal(ctx, ExactMatrix(10, 10, Scalar(0))).is_member);
}

TEST(ApproxBackend, AgreesWithExact) {
  std::mt19937_64 rng(13);
  const auto sols = solve_diagonal(Scalar(3)).isolated;
  const auto ctx = builtin_sl2(Scalar(3));
  for (const auto& s : sols) {
    const auto rep = is_semi_conformal_approx(ctx, s, 256);
    EXPECT_TRUE(rep.is_member);
    EXPECT_EQ(rep.r37_charge.str(8), approximate(central_charge(ctx.frame(), s), 256).str(8));
  }
  for (int t = 0; t < 30; ++t) {
    const ExactMatrix a = random_small_symmetric(3, rng);
    EXPECT_EQ(is_semi_conformal_approx(ctx, a, 128).is_member, is_semi_conformal(ctx, a).is_member);
  }
}

TEST(ApproxBackend, SmallScaleStillDecided) {
  // The threshold is relative, so a tiny non-member stays a non-member.
  const auto ctx = builtin_sl2(Scalar(3));
  const ExactMatrix a = diag(Scalar::ratio(1, 6), 0, 0) * Scalar(Rational(1, 1000000000));
  EXPECT_FALSE(is_semi_conformal_approx(ctx, a, 256).is_member);
  EXPECT_FALSE(is_semi_conformal(ctx, a).is_member);
}

TEST(PartialOrder, Examples) {
  const Scalar l(3);
  const auto ctx = builtin_sl2(l);
  const ExactMatrix zero(3, 3, Scalar(0));
  const ExactMatrix w = conformal_candidate(ctx);
  for (const auto& b : solve_diagonal(l).isolated) EXPECT_TRUE(partial_order_diag(ctx, zero, b));
  EXPECT_TRUE(partial_order_diag(ctx, a1(l), w));
  EXPECT_TRUE(partial_order_diag(ctx, a4(l), w));
  EXPECT_FALSE(partial_order_diag(ctx, a1(l), a4(l)));
  EXPECT_FALSE(partial_order_diag(ctx, a4(l), a1(l)));
  EXPECT_FALSE(partial_order_diag(ctx, w, a1(l)));
}

TEST(PartialOrder, Errors) {
  const auto ctx = builtin_sl2(Scalar(3));
  ExactMatrix nd = a1(Scalar(3));
  nd(0, 1) = nd(1, 0) = Scalar(1);
  EXPECT_THROW(partial_order_diag(ctx, nd, a1(Scalar(3))), DomainError);
  EXPECT_THROW(partial_order_diag(ctx, diag(1, 0, 0), a1(Scalar(3))), DomainError);
  EXPECT_THROW(partial_order_diag(ctx, a1(Scalar(3)), diag(1, 0, 0)), DomainError);
  EXPECT_THROW(partial_order_diag(builtin_so(5, Scalar(3)), ExactMatrix(10, 10, Scalar(0)), ExactMatrix(10, 10, Scalar(0))),
               DomainError);
}

TEST(PartialOrder, RotatedPairIsDiagonalizedFirst) {
  std::mt19937_64 rng(17);
  const Scalar l(3);
  const auto ctx = builtin_sl2(l);
  for (int t = 0; t < 10; ++t) {
    const ExactMatrix g = random_special_orthogonal(3, rng);
    const ExactMatrix ga = congruence_act(ctx, g, a1(l));
    EXPECT_TRUE(partial_order(ctx, ga, conformal_candidate(ctx)));
    EXPECT_FALSE(partial_order(ctx, ga, congruence_act(ctx, g, a4(l))));
  }
}

TEST(PartialOrder, NonCommutingPairRejected) {
  const Scalar l(3);
  const auto ctx = builtin_sl2(l);
  const ExactMatrix g = givens(3, 0, 1, Scalar::ratio(1, 2));
  EXPECT_THROW(partial_order(ctx, congruence_act(ctx, g, a1(l)), a1(l)), DomainError);
}

TEST(ScalingRigidity, NonzeroSolutionsAtLevelThree) {
  const auto ctx = builtin_sl2(Scalar(3));
  for (const auto& s : solve_diagonal(Scalar(3)).isolated) {
    if (s.is_zero_matrix()) continue;
    for (const Scalar& alpha : {Scalar(-1), Scalar::ratio(1, 2), Scalar(2), Scalar::ratio(3, 2)})
      EXPECT_FALSE(is_semi_conformal(ctx, s * alpha).is_member);
    EXPECT_TRUE(is_semi_conformal(ctx, s * Scalar(1)).is_member);
  }
}

TEST(ComplementClosure, ChargesSumToConformalCharge) {
  for (long li : {3, 4}) {
    const Scalar l(li);
    const auto ctx = builtin_sl2(l);
    auto members = solve_diagonal(l).isolated;
    if (li == 4) for (const auto& m : level4_family_samples(6)) members.push_back(m);
    for (const auto& m : members) {
      const ExactMatrix c = complement(ctx, m);
      EXPECT_TRUE(is_semi_conformal(ctx, c).is_member);
      EXPECT_EQ(central_charge(ctx.frame(), m) + central_charge(ctx.frame(), c), Scalar(3) * l / (l + Scalar(2)));
    }
  }
}

TEST(CongruenceEquivariance, RandomTrials) {
  std::mt19937_64 rng(19);
  const auto ctx = builtin_sl2(Scalar(5));
  for (int t = 0; t < 30; ++t) {
    const ExactMatrix g = random_special_orthogonal(3, rng);
    const ExactMatrix a = t % 3 == 0 ? solve_diagonal(Scalar(5)).isolated[static_cast<std::size_t>(t) % 8]
                                     : random_small_symmetric(3, rng);
    EXPECT_EQ(is_semi_conformal(ctx, congruence_act(ctx, g, a)).is_member, is_semi_conformal(ctx, a).is_member);
  }
}

TEST(OracleEquivalence, PerResidualSl2) {
  std::mt19937_64 rng(2024);
  int members = 0;
  for (int t = 0; t < 100; ++t) {
    const Scalar l(static_cast<long>(rng() % 7) + 1);
    const auto ctx = builtin_sl2(l);
    ExactMatrix a = random_small_symmetric(3, rng);
    // Mix in known members so both verdicts are exercised.
    if (t % 4 == 0) a = pick_solution(l, rng);
    if (t % 4 == 1) a = congruence_act(ctx, random_special_orthogonal(3, rng), pick_solution(l, rng));
    const auto rep = is_semi_conformal(ctx, a);
    ExactOracle o(ctx.frame());
    const auto r = oracle_residuals(o, a, ctx.h_dual());
    EXPECT_EQ(rep.eq34_zero, r.l1_defect.is_zero());
    EXPECT_EQ(rep.eq35_zero && rep.eq36_zero, r.l0_defect.is_zero());
    EXPECT_EQ(rep.eq38_zero, r.l2_defect.is_zero());
    EXPECT_EQ(rep.r34, r.r34);
    EXPECT_EQ(rep.r35, r.r35);
    EXPECT_EQ(rep.r36, r.r36);
    EXPECT_EQ(rep.r38, r.r38);
    EXPECT_EQ(rep.is_member, oracle_semi_conformal(o, a, ctx.h_dual()).member);
    members += rep.is_member;
  }
  EXPECT_GE(members, 40);
}

TEST(OracleEquivalence, RationalLevels) {
  std::mt19937_64 rng(77);
  for (const Scalar& l : {Scalar::ratio(1, 2), Scalar::ratio(-1, 3), Scalar::ratio(7, 5), Scalar(-5)}) {
    const auto ctx = builtin_sl2(l);
    ExactOracle o(ctx.frame());
    for (int t = 0; t < 5; ++t) {
      const ExactMatrix a = t == 0 ? a4(l) : random_small_symmetric(3, rng);
      EXPECT_EQ(is_semi_conformal(ctx, a).is_member, oracle_semi_conformal(o, a, ctx.h_dual()).member);
    }
  }
}

TEST(OracleEquivalence, So5) {
  std::mt19937_64 rng(88);
  const auto ctx = builtin_so(5, Scalar(2));
  ExactOracle o(ctx.frame());
  for (int t = 0; t < 8; ++t) {
    const ExactMatrix a = random_small_symmetric(10, rng);
    const auto rep = is_semi_conformal(ctx, a);
    const auto r = oracle_residuals(o, a, ctx.h_dual());
    EXPECT_EQ(rep.r34, r.r34);
    EXPECT_EQ(rep.r35, r.r35);
    EXPECT_EQ(rep.r36, r.r36);
    EXPECT_EQ(rep.r38, r.r38);
  }
}
