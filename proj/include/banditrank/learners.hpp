#ifndef BANDITRANK_LEARNERS_HPP_
#define BANDITRANK_LEARNERS_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "banditrank/feedback.hpp"
#include "banditrank/gibbs.hpp"
#include "banditrank/losses.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Learning-rate schedules

enum class ScheduleKind { kConstant, kInverseT, kInverseSqrtT };

ScheduleKind parse_schedule_kind(std::string_view name);
std::string to_string(ScheduleKind kind);

/// γ_t = c, c/(t+1) or c/sqrt(t+1); t counts from 0.
struct LearningRateSchedule {
  ScheduleKind kind = ScheduleKind::kInverseT;
  double base = 1.0;

  double rate(std::size_t t) const;
};

struct ScheduleReport {
  bool nonneg = false;
  bool divergent_sum = false;
  bool convergent_sq_sum = false;

  bool all() const { return nonneg && divergent_sum && convergent_sq_sum; }
};

/// Analytic check of γ_t ≥ 0, Σγ_t = ∞, Σγ_t² < ∞.
ScheduleReport schedule_validity(const LearningRateSchedule& schedule);

// ---------------------------------------------------------------------------
// One-point feedback learner

struct BanditLearnerState {
  WeightVector w;
  std::size_t t = 0;
  LearningRateSchedule schedule;
  Rng rng;
};

struct BanditStepRecord {
  std::size_t t = 0;  // step index before the update
  std::size_t sampled = 0;
  double loss = 0.0;
  double rate = 0.0;
  double update_norm = 0.0;
};

/// s = Δ · (φ_sampled − E_p[φ]), the stochastic update direction.
Vector bandit_update_direction(const Instance& inst, const WeightVector& w, std::size_t sampled, double loss);

/// Samples a candidate from the Gibbs model, asks the oracle for its loss
/// once and moves w by −γ_t · s.
BanditStepRecord bandit_step(BanditLearnerState& state, const Instance& inst, FeedbackOracle& feedback);

/// Σ_i p_i Δ_i (φ_i − E_p[φ]): the exact expectation of the bandit update
/// direction, which is also the gradient of Σ_i Δ_i p_i(w).
Vector bandit_expected_update(const Instance& inst, const WeightVector& w, const Vector& losses);

/// Σ_i Δ_i p_i(w).
double expected_loss(const Instance& inst, const WeightVector& w, const Vector& losses);

// ---------------------------------------------------------------------------
// Two-point feedback learner

struct DuelingLearnerState {
  WeightVector w;
  std::size_t t = 0;
  double delta = 1.0;  // exploration radius
  double gamma = 0.1;  // exploitation step
  Rng rng;
};

struct DuelingStepRecord {
  std::size_t t = 0;
  std::size_t incumbent = 0;   // MAP index under w
  std::size_t challenger = 0;  // MAP index under w + δu
  DuelOutcome outcome;
  bool moved = false;
};

/// Uniform direction on the unit sphere in R^d (normalized standard normal).
Vector sample_unit_vector(std::size_t d, Rng& rng);

/// Probes w' = w + δu and steps w += γu only if the challenger's MAP output
/// has strictly lower loss. Only the duel winner is used.
DuelingStepRecord dueling_step(DuelingLearnerState& state, const Instance& inst, FeedbackOracle& feedback);

// ---------------------------------------------------------------------------
// Full-information baseline

/// Δ(candidate_i, reference) for every candidate; the instance must carry its
/// reference.
Vector candidate_losses(const Instance& inst, const SentenceLoss& loss);

/// Gradient of the per-instance expected loss with the reference revealed.
Vector full_info_gradient(const Instance& inst, const WeightVector& w, const SentenceLoss& loss);

struct FullInfoLearnerState {
  WeightVector w;
  std::size_t t = 0;
  LearningRateSchedule schedule;
};

struct FullInfoStepRecord {
  std::size_t t = 0;
  double expected_loss = 0.0;  // before the update
  double rate = 0.0;
  double update_norm = 0.0;
};

/// w -= γ_t · gradient, with losses supplied per candidate.
FullInfoStepRecord full_info_step(FullInfoLearnerState& state, const Instance& inst, const Vector& losses);

}  // namespace banditrank

#endif  // BANDITRANK_LEARNERS_HPP_
