#include "banditrank/learners.hpp"

#include <cmath>

namespace banditrank {

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "constant") return ScheduleKind::kConstant;
  if (name == "inverse-t") return ScheduleKind::kInverseT;
  if (name == "inverse-sqrt-t") return ScheduleKind::kInverseSqrtT;
  throw Error("unknown schedule '" + std::string(name) + "' (expected constant, inverse-t, inverse-sqrt-t)");
}

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kConstant: return "constant";
    case ScheduleKind::kInverseT: return "inverse-t";
    case ScheduleKind::kInverseSqrtT: return "inverse-sqrt-t";
  }
  return "unknown";
}

double LearningRateSchedule::rate(std::size_t t) const {
  const double step = static_cast<double>(t) + 1.0;
  switch (kind) {
    case ScheduleKind::kConstant: return base;
    case ScheduleKind::kInverseT: return base / step;
    case ScheduleKind::kInverseSqrtT: return base / std::sqrt(step);
  }
  return 0.0;
}

ScheduleReport schedule_validity(const LearningRateSchedule& schedule) {
  ScheduleReport report;
  report.nonneg = schedule.base >= 0.0;
  // With c = 0 every series is zero: no divergence, trivially summable.
  const bool positive = schedule.base > 0.0;
  switch (schedule.kind) {
    case ScheduleKind::kConstant:
      report.divergent_sum = positive;
      report.convergent_sq_sum = !positive;
      break;
    case ScheduleKind::kInverseT:
      report.divergent_sum = positive;
      report.convergent_sq_sum = true;
      break;
    case ScheduleKind::kInverseSqrtT:
      report.divergent_sum = positive;
      report.convergent_sq_sum = !positive;
      break;
  }
  return report;
}

Vector bandit_update_direction(const Instance& inst, const WeightVector& w, std::size_t sampled, double loss) {
  const Vector mean = expected_features(inst, w);
  return loss * (inst.features.row(static_cast<Eigen::Index>(sampled)).transpose() - mean);
}

BanditStepRecord bandit_step(BanditLearnerState& state, const Instance& inst, FeedbackOracle& feedback) {
  const Vector probabilities = gibbs_probabilities(inst, state.w);
  const Vector mean = inst.features.transpose() * probabilities;
  const std::size_t sampled = sample_index(probabilities, state.rng);
  const double loss = feedback.one_point(inst.id, inst.hypotheses[sampled]);
  if (!(loss >= 0.0 && loss <= 1.0)) {
    throw Error("feedback loss " + std::to_string(loss) + " outside [0,1] for instance " + std::to_string(inst.id));
  }

  BanditStepRecord record;
  record.t = state.t;
  record.sampled = sampled;
  record.loss = loss;
  record.rate = state.schedule.rate(state.t);
  if (loss != 0.0) {
    const Vector update =
        record.rate * loss * (inst.features.row(static_cast<Eigen::Index>(sampled)).transpose() - mean);
    state.w -= update;
    record.update_norm = update.norm();
  }
  ++state.t;
  return record;
}

Vector bandit_expected_update(const Instance& inst, const WeightVector& w, const Vector& losses) {
  if (static_cast<std::size_t>(losses.size()) != inst.size()) {
    throw DimensionError("loss vector has " + std::to_string(losses.size()) + " entries for " +
                         std::to_string(inst.size()) + " candidates");
  }
  const Vector p = gibbs_probabilities(inst, w);
  const Vector mean = inst.features.transpose() * p;
  const Vector weights = p.cwiseProduct(losses);
  // Σ_i p_i Δ_i φ_i − (Σ_i p_i Δ_i) E_p[φ]
  return inst.features.transpose() * weights - weights.sum() * mean;
}

double expected_loss(const Instance& inst, const WeightVector& w, const Vector& losses) {
  if (static_cast<std::size_t>(losses.size()) != inst.size()) {
    throw DimensionError("loss vector length does not match candidate count");
  }
  return gibbs_probabilities(inst, w).dot(losses);
}

Vector sample_unit_vector(std::size_t d, Rng& rng) {
  if (d == 0) throw DimensionError("cannot sample a direction in dimension 0");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector u(static_cast<Eigen::Index>(d));
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
    norm = u.norm();
  } while (norm == 0.0);
  return u / norm;
}

DuelingStepRecord dueling_step(DuelingLearnerState& state, const Instance& inst, FeedbackOracle& feedback) {
  if (!(state.delta > 0.0) || !(state.gamma > 0.0)) {
    throw Error("dueling learner needs delta > 0 and gamma > 0");
  }
  if (static_cast<std::size_t>(state.w.size()) != inst.dim()) {
    throw DimensionError("weight dimension does not match instance features");
  }
  const Vector u = sample_unit_vector(inst.dim(), state.rng);
  const WeightVector challenger_w = state.w + state.delta * u;

  DuelingStepRecord record;
  record.t = state.t;
  record.incumbent = map_predict(inst, state.w);
  record.challenger = map_predict(inst, challenger_w);
  record.outcome = feedback.two_point(inst.id, inst.hypotheses[record.incumbent],
                                      inst.hypotheses[record.challenger]);
  if (record.outcome.winner == DuelWinner::kB) {
    state.w += state.gamma * u;
    record.moved = true;
  }
  ++state.t;
  return record;
}

Vector candidate_losses(const Instance& inst, const SentenceLoss& loss) {
  if (!inst.reference) {
    throw Error("instance " + std::to_string(inst.id) + " has no reference for full-information losses");
  }
  Vector out(static_cast<Eigen::Index>(inst.size()));
  for (std::size_t i = 0; i < inst.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = loss.evaluate(inst.hypotheses[i], *inst.reference);
  }
  return out;
}

Vector full_info_gradient(const Instance& inst, const WeightVector& w, const SentenceLoss& loss) {
  return bandit_expected_update(inst, w, candidate_losses(inst, loss));
}

FullInfoStepRecord full_info_step(FullInfoLearnerState& state, const Instance& inst, const Vector& losses) {
  FullInfoStepRecord record;
  record.t = state.t;
  record.expected_loss = expected_loss(inst, state.w, losses);
  record.rate = state.schedule.rate(state.t);
  const Vector update = record.rate * bandit_expected_update(inst, state.w, losses);
  state.w -= update;
  record.update_norm = update.norm();
  ++state.t;
  return record;
}

}  // namespace banditrank
