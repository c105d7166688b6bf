#ifndef BANDITRANK_DIAGNOSTICS_HPP_
#define BANDITRANK_DIAGNOSTICS_HPP_

// Numerical checks of the conditions behind the convergence argument for the
// one-point learner: the update direction is an unbiased estimate of the
// expected-loss gradient, its squared norm is bounded by 4R², the learning
// rate schedule is summable in square but not in value, and the analytic
// gradient agrees with finite differences.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "banditrank/learners.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

struct DiagnosticsOptions {
  std::size_t draws = 100000;
  double standard_errors = 3.0;
  double fd_step = 1e-5;
  double fd_tolerance = 1e-4;
  std::size_t max_candidates = 20;
  LearningRateSchedule schedule;
};

struct UnbiasednessCheck {
  bool pass = true;
  std::size_t coordinates = 0;
  std::size_t failures = 0;
  double max_abs_error = 0.0;
  double max_z = 0.0;  // |mc - exact| / standard error, over coordinates with se > 0
};

struct SecondMomentCheck {
  bool pass = true;
  double max_squared_norm = 0.0;
  double max_ratio = 0.0;  // max over draws of ||s||² / 4R²
  double mean_ratio = 0.0; // max over instances of E||s||² / 4R²
};

struct GradientCheck {
  bool pass = true;
  double max_relative_error = 0.0;
};

struct DiagnosticsReport {
  UnbiasednessCheck unbiasedness;
  SecondMomentCheck second_moment;
  ScheduleReport schedule;
  GradientCheck gradient;

  bool all_pass() const { return unbiasedness.pass && second_moment.pass && schedule.all() && gradient.pass; }
};

/// Monte-Carlo mean of `draws` one-point update directions at fixed w
/// compared coordinate-wise to the exact expectation.
UnbiasednessCheck check_unbiasedness(const Instance& inst, const WeightVector& w, const Vector& losses,
                                     std::size_t draws, double standard_errors, Rng& rng);

SecondMomentCheck check_second_moment(const Instance& inst, const WeightVector& w, const Vector& losses,
                                      std::size_t draws, Rng& rng);

/// Central differences of Σ_i Δ_i p_i(w) against bandit_expected_update.
/// Relative error is ||fd - g|| / max(||g||, 1e-8).
GradientCheck check_gradient(const Instance& inst, const WeightVector& w, const Vector& losses, double step,
                             double tolerance);

/// Runs all four checks over a small sample; `losses[i]` holds the loss of
/// every candidate of instance i.
DiagnosticsReport diagnostics_suite(const Dataset& sample, const std::vector<Vector>& losses, const WeightVector& w,
                                    std::uint64_t seed, const DiagnosticsOptions& options = {});

void write_report(std::ostream& out, const DiagnosticsReport& report);

}  // namespace banditrank

#endif  // BANDITRANK_DIAGNOSTICS_HPP_
