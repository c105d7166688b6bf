#include "banditrank/learners.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace banditrank {
namespace {

using testing::instance_from_rows;
using testing::random_instance;
using testing::random_vector;

TEST(Schedule, Rates) {
  EXPECT_DOUBLE_EQ((LearningRateSchedule{ScheduleKind::kConstant, 0.3}.rate(9)), 0.3);
  EXPECT_DOUBLE_EQ((LearningRateSchedule{ScheduleKind::kInverseT, 2.0}.rate(0)), 2.0);
  EXPECT_DOUBLE_EQ((LearningRateSchedule{ScheduleKind::kInverseT, 2.0}.rate(3)), 0.5);
  EXPECT_DOUBLE_EQ((LearningRateSchedule{ScheduleKind::kInverseSqrtT, 1.0}.rate(3)), 0.5);
}

TEST(Schedule, Validity) {
  const ScheduleReport inv = schedule_validity({ScheduleKind::kInverseT, 1.0});
  EXPECT_TRUE(inv.nonneg && inv.divergent_sum && inv.convergent_sq_sum);
  const ScheduleReport sqrt = schedule_validity({ScheduleKind::kInverseSqrtT, 1.0});
  EXPECT_TRUE(sqrt.nonneg && sqrt.divergent_sum);
  EXPECT_FALSE(sqrt.convergent_sq_sum);
  const ScheduleReport constant = schedule_validity({ScheduleKind::kConstant, 0.1});
  EXPECT_TRUE(constant.nonneg && constant.divergent_sum);
  EXPECT_FALSE(constant.convergent_sq_sum);
}

TEST(Schedule, ParseNames) {
  EXPECT_EQ(parse_schedule_kind("inverse-sqrt-t"), ScheduleKind::kInverseSqrtT);
  EXPECT_EQ(to_string(ScheduleKind::kConstant), "constant");
  EXPECT_THROW(parse_schedule_kind("adagrad"), Error);
}

TEST(BanditStep, ZeroLossLeavesWeightsUnchanged) {
  std::mt19937_64 gen(1);
  const Instance inst = random_instance(gen, 5, 3);
  LossTableOracle oracle;
  oracle.set_instance(inst, {0, 0, 0, 0, 0});
  const Vector w0 = random_vector(gen, 3, -1, 1);
  BanditLearnerState state{w0, 0, {ScheduleKind::kConstant, 10.0}, Rng(2)};
  for (int i = 0; i < 50; ++i) {
    const BanditStepRecord r = bandit_step(state, inst, oracle);
    EXPECT_EQ(r.update_norm, 0.0);
  }
  EXPECT_TRUE(state.w == w0);
  EXPECT_EQ(state.t, 50u);
}

TEST(BanditStep, SingleCandidateNeverMoves) {
  const Instance inst = instance_from_rows({{0.3, -0.7}});
  LossTableOracle oracle;
  oracle.set_instance(inst, {0.8});
  BanditLearnerState state{Vector{{0.1, 0.2}}, 0, {ScheduleKind::kConstant, 1.0}, Rng(3)};
  bandit_step(state, inst, oracle);
  EXPECT_NEAR(state.w(0), 0.1, 1e-15);
  EXPECT_NEAR(state.w(1), 0.2, 1e-15);
}

TEST(BanditStep, HandComputedUpdate) {
  // w = 0: x̄ = (φ1 + φ2)/2 = (0.5, 1.0). Δ1 = 0.2, Δ2 = 0.6, γ = 0.5.
  const Instance inst = instance_from_rows({{1.0, 0.0}, {0.0, 2.0}});
  LossTableOracle oracle;
  oracle.set_instance(inst, {0.2, 0.6});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BanditLearnerState state{Vector::Zero(2), 0, {ScheduleKind::kConstant, 0.5}, Rng(seed)};
    const BanditStepRecord r = bandit_step(state, inst, oracle);
    Vector expected(2);
    if (r.sampled == 0) {
      expected << -0.5 * 0.2 * 0.5, -0.5 * 0.2 * -1.0;
    } else {
      expected << -0.5 * 0.6 * -0.5, -0.5 * 0.6 * 1.0;
    }
    EXPECT_NEAR((state.w - expected).norm(), 0.0, 1e-15) << "sampled " << r.sampled;
    EXPECT_EQ(r.rate, 0.5);
    EXPECT_NEAR(r.update_norm, expected.norm(), 1e-15);
  }
}

TEST(BanditStep, RejectsOutOfRangeFeedback) {
  const Instance inst = instance_from_rows({{1.0}, {0.0}});
  LossTableOracle oracle;
  oracle.set_instance(inst, {1.5, 1.5});
  BanditLearnerState state{Vector::Zero(1), 0, {}, Rng(4)};
  EXPECT_THROW(bandit_step(state, inst, oracle), Error);
  LossTableOracle negative;
  negative.set_instance(inst, {-0.1, -0.1});
  EXPECT_THROW(bandit_step(state, inst, negative), Error);
}

TEST(BanditStep, DeterministicTrajectories) {
  std::mt19937_64 gen(5);
  const Instance inst = random_instance(gen, 8, 4);
  LossTableOracle oracle;
  oracle.set_instance(inst, {0.1, 0.9, 0.4, 0.3, 0.7, 0.2, 0.5, 0.6});
  BanditLearnerState a{Vector::Zero(4), 0, {ScheduleKind::kInverseT, 1.0}, Rng(77)};
  BanditLearnerState b = a;
  for (int i = 0; i < 200; ++i) {
    bandit_step(a, inst, oracle);
    bandit_step(b, inst, oracle);
    ASSERT_TRUE(a.w == b.w);
  }
}

TEST(BanditExpectedUpdate, ConstantLossIsZero) {
  std::mt19937_64 gen(6);
  const Instance inst = random_instance(gen, 6, 3);
  const Vector g = bandit_expected_update(inst, random_vector(gen, 3, -1, 1), Vector::Constant(6, 0.4));
  EXPECT_LT(g.norm(), 1e-15);
  EXPECT_LT(bandit_expected_update(instance_from_rows({{1.0, 2.0}}), Vector::Zero(2), Vector{{0.9}}).norm(), 1e-15);
  EXPECT_THROW(bandit_expected_update(inst, Vector::Zero(3), Vector::Zero(5)), DimensionError);
}

TEST(BanditExpectedUpdate, MatchesFiniteDifferences) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance(gen, 3, 1 + trial % 5);
    const Vector w = random_vector(gen, inst.dim(), -1, 1);
    const Vector losses = random_vector(gen, 3, 0, 1);
    const Vector g = bandit_expected_update(inst, w, losses);
    const Vector fd = testing::finite_difference_gradient(inst, w, losses, 1e-5);
    EXPECT_LT((fd - g).norm() / g.norm(), 1e-4);
  }
}

TEST(BanditExpectedUpdate, UpdateDirectionAveragesToExpectation) {
  std::mt19937_64 gen(8);
  const Instance inst = random_instance(gen, 4, 2);
  const Vector w = random_vector(gen, 2, -1, 1);
  const Vector losses{{0.1, 0.7, 0.4, 0.9}};
  const Vector p = gibbs_probabilities(inst, w);
  Vector exact_mean = Vector::Zero(2);
  for (std::size_t i = 0; i < 4; ++i) {
    exact_mean += p(static_cast<Eigen::Index>(i)) *
                  bandit_update_direction(inst, w, i, losses(static_cast<Eigen::Index>(i)));
  }
  EXPECT_LT((exact_mean - bandit_expected_update(inst, w, losses)).norm(), 1e-15);
}

TEST(DuelingStep, IdenticalPredictionsTie) {
  // Features tied along every direction: MAP is always candidate 0.
  const Instance inst = instance_from_rows({{1.0, 1.0}, {1.0, 1.0}});
  LossTableOracle oracle;
  oracle.set(0, {"c0"}, 0.5);
  oracle.set(0, {"c1"}, 0.1);
  DuelingLearnerState state{Vector::Zero(2), 0, 1.0, 0.3, Rng(9)};
  for (int i = 0; i < 20; ++i) {
    const DuelingStepRecord r = dueling_step(state, inst, oracle);
    EXPECT_EQ(r.incumbent, r.challenger);
    EXPECT_EQ(r.outcome.winner, DuelWinner::kTie);
    EXPECT_FALSE(r.moved);
  }
  EXPECT_TRUE(state.w == Vector::Zero(2));
  EXPECT_EQ(oracle.query_report().two_point_count, 20u);
}

TEST(DuelingStep, StepNormIsZeroOrGamma) {
  std::mt19937_64 gen(10);
  const Instance inst = random_instance(gen, 10, 4);
  LossTableOracle oracle;
  oracle.set_instance(inst, {0.9, 0.1, 0.5, 0.3, 0.7, 0.2, 0.8, 0.4, 0.6, 0.0});
  DuelingLearnerState state{Vector::Zero(4), 0, 0.8, 0.25, Rng(11)};
  int moves = 0;
  for (int i = 0; i < 500; ++i) {
    const Vector before = state.w;
    const DuelingStepRecord r = dueling_step(state, inst, oracle);
    const double step = (state.w - before).norm();
    if (r.moved) {
      ++moves;
      EXPECT_NEAR(step, 0.25, 1e-12);
      EXPECT_EQ(r.outcome.winner, DuelWinner::kB);
    } else {
      EXPECT_EQ(step, 0.0);
    }
  }
  EXPECT_GT(moves, 0);
}

TEST(DuelingStep, MovesAlongUOnChallengerWin) {
  // φ1 = (1, 0) has loss 0.9, φ2 = (0, 1) has loss 0.1. At w = (1, 0) the MAP
  // is candidate 0; w + δu picks candidate 1 whenever u_2 − u_1 > 1/δ.
  const Instance inst = instance_from_rows({{1.0, 0.0}, {0.0, 1.0}});
  LossTableOracle oracle;
  oracle.set_instance(inst, {0.9, 0.1});
  const double delta = 2.0, gamma = 0.5;
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    DuelingLearnerState state{Vector{{1.0, 0.0}}, 0, delta, gamma, Rng(seed)};
    Rng replay(seed);
    const Vector u = sample_unit_vector(2, replay);
    const Vector w_prime = Vector{{1.0, 0.0}} + delta * u;
    const bool flips = w_prime(1) > w_prime(0);  // brute-force MAP at w'
    const DuelingStepRecord r = dueling_step(state, inst, oracle);
    EXPECT_EQ(r.challenger, flips ? 1u : 0u);
    if (flips) {
      ++wins;
      EXPECT_LT((state.w - (Vector{{1.0, 0.0}} + gamma * u)).norm(), 1e-15);
    } else {
      EXPECT_TRUE(state.w == Vector(Vector{{1.0, 0.0}}));
    }
  }
  EXPECT_GT(wins, 10);
}

TEST(DuelingStep, RejectsBadRadii) {
  const Instance inst = instance_from_rows({{1.0}});
  LossTableOracle oracle;
  oracle.set_instance(inst, {0.0});
  DuelingLearnerState state{Vector::Zero(1), 0, 0.0, 1.0, Rng(1)};
  EXPECT_THROW(dueling_step(state, inst, oracle), Error);
}

TEST(SampleUnitVector, HasUnitNormAndNoPreferredDirection) {
  Rng rng(12);
  Vector mean = Vector::Zero(3);
  for (int i = 0; i < 20000; ++i) {
    const Vector u = sample_unit_vector(3, rng);
    ASSERT_NEAR(u.norm(), 1.0, 1e-12);
    mean += u;
  }
  mean /= 20000.0;
  // Each coordinate has variance 1/3; 4 standard errors.
  EXPECT_LT(mean.cwiseAbs().maxCoeff(), 4.0 * std::sqrt(1.0 / 3.0 / 20000.0));
}

TEST(FullInfoGradient, EqualsExpectedUpdateWithSameLosses) {
  std::vector<Candidate> cands = {{{"a", "b", "c"}, Vector{{1.0, 0.0}}, 0.0},
                                  {{"a", "b", "d"}, Vector{{0.0, 1.0}}, 0.0},
                                  {{"x", "y"}, Vector{{0.5, 0.5}}, 0.0}};
  const Instance inst = make_instance(0, cands, Tokens{"a", "b", "c"});
  const BleuLoss loss;
  const Vector w{{0.3, -0.2}};
  const Vector losses = candidate_losses(inst, loss);
  EXPECT_EQ(losses(0), 0.0);
  EXPECT_TRUE(full_info_gradient(inst, w, loss) == bandit_expected_update(inst, w, losses));
  const Vector fd = testing::finite_difference_gradient(inst, w, losses, 1e-5);
  const Vector g = full_info_gradient(inst, w, loss);
  EXPECT_LT((fd - g).norm() / g.norm(), 1e-4);
}

TEST(FullInfoGradient, EqualLossesGiveZeroAndMissingReferenceThrows) {
  std::vector<Candidate> cands = {{{"p"}, Vector{{1.0}}, 0.0}, {{"q"}, Vector{{-1.0}}, 0.0}};
  const Instance inst = make_instance(0, cands, Tokens{"z"});
  EXPECT_LT(full_info_gradient(inst, Vector{{0.7}}, ZeroOneLoss{}).norm(), 1e-15);
  const Instance no_ref = make_instance(0, cands);
  EXPECT_THROW(full_info_gradient(no_ref, Vector{{0.7}}, ZeroOneLoss{}), Error);
}

TEST(FullInfoStep, DescendsOnExpectedLoss) {
  std::mt19937_64 gen(13);
  const Instance inst = random_instance(gen, 6, 3);
  const Vector losses = random_vector(gen, 6, 0, 1);
  FullInfoLearnerState state{Vector::Zero(3), 0, {ScheduleKind::kConstant, 0.5}};
  const double before = expected_loss(inst, state.w, losses);
  for (int i = 0; i < 50; ++i) full_info_step(state, inst, losses);
  EXPECT_LT(expected_loss(inst, state.w, losses), before);
}

}  // namespace
}  // namespace banditrank
