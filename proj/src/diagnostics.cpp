#include "banditrank/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "banditrank/nbest_io.hpp"

namespace banditrank {

namespace {

void check_losses(const Instance& inst, const Vector& losses) {
  if (static_cast<std::size_t>(losses.size()) != inst.size()) {
    throw DimensionError("one loss per candidate expected");
  }
  if ((losses.array() < 0.0).any() || (losses.array() > 1.0).any()) throw Error("losses must lie in [0,1]");
}

}  // namespace

UnbiasednessCheck check_unbiasedness(const Instance& inst, const WeightVector& w, const Vector& losses,
                                     std::size_t draws, double standard_errors, Rng& rng) {
  check_losses(inst, losses);
  if (draws < 2) throw Error("unbiasedness check needs at least two draws");
  const Vector p = gibbs_probabilities(inst, w);
  const Vector mean_features = inst.features.transpose() * p;
  const Vector exact = bandit_expected_update(inst, w, losses);

  const auto d = static_cast<Eigen::Index>(inst.dim());
  Vector sum = Vector::Zero(d);
  Vector sum_sq = Vector::Zero(d);
  for (std::size_t r = 0; r < draws; ++r) {
    const std::size_t i = sample_index(p, rng);
    const Vector s = losses(static_cast<Eigen::Index>(i)) *
                     (inst.features.row(static_cast<Eigen::Index>(i)).transpose() - mean_features);
    sum += s;
    sum_sq += s.cwiseAbs2();
  }
  const double n = static_cast<double>(draws);
  const Vector mc = sum / n;
  const Vector variance = ((sum_sq / n - mc.cwiseAbs2()) * (n / (n - 1.0))).cwiseMax(0.0);
  const Vector se = (variance / n).cwiseSqrt();

  UnbiasednessCheck check;
  check.coordinates = static_cast<std::size_t>(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double err = std::abs(mc(j) - exact(j));
    check.max_abs_error = std::max(check.max_abs_error, err);
    if (se(j) > 0.0) check.max_z = std::max(check.max_z, err / se(j));
    // Zero-variance coordinates only differ by rounding.
    if (err > standard_errors * se(j) + 1e-12 * (1.0 + std::abs(exact(j)))) ++check.failures;
  }
  check.pass = check.failures == 0;
  return check;
}

SecondMomentCheck check_second_moment(const Instance& inst, const WeightVector& w, const Vector& losses,
                                      std::size_t draws, Rng& rng) {
  check_losses(inst, losses);
  const Vector p = gibbs_probabilities(inst, w);
  const Vector mean_features = inst.features.transpose() * p;
  const double radius = max_feature_norm(inst);
  const double bound = 4.0 * radius * radius;

  SecondMomentCheck check;
  double total = 0.0;
  for (std::size_t r = 0; r < draws; ++r) {
    const std::size_t i = sample_index(p, rng);
    const Vector s = losses(static_cast<Eigen::Index>(i)) *
                     (inst.features.row(static_cast<Eigen::Index>(i)).transpose() - mean_features);
    const double sq = s.squaredNorm();
    total += sq;
    check.max_squared_norm = std::max(check.max_squared_norm, sq);
    if (sq > bound) check.pass = false;
    if (bound > 0.0) check.max_ratio = std::max(check.max_ratio, sq / bound);
  }
  if (bound > 0.0 && draws > 0) check.mean_ratio = total / static_cast<double>(draws) / bound;
  return check;
}

GradientCheck check_gradient(const Instance& inst, const WeightVector& w, const Vector& losses, double step,
                             double tolerance) {
  check_losses(inst, losses);
  const Vector analytic = bandit_expected_update(inst, w, losses);
  Vector numeric(analytic.size());
  WeightVector probe = w;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    probe(j) = w(j) + step;
    const double up = expected_loss(inst, probe, losses);
    probe(j) = w(j) - step;
    const double down = expected_loss(inst, probe, losses);
    probe(j) = w(j);
    numeric(j) = (up - down) / (2.0 * step);
  }
  GradientCheck check;
  check.max_relative_error = (numeric - analytic).norm() / std::max(analytic.norm(), 1e-8);
  check.pass = check.max_relative_error < tolerance;
  return check;
}

DiagnosticsReport diagnostics_suite(const Dataset& sample, const std::vector<Vector>& losses, const WeightVector& w,
                                    std::uint64_t seed, const DiagnosticsOptions& options) {
  if (losses.size() != sample.size()) throw DimensionError("one loss vector per instance expected");
  if (sample.empty()) throw Error("diagnostics need at least one instance");
  for (const Instance& inst : sample.instances) {
    if (inst.size() > options.max_candidates) {
      throw Error("diagnostics sample instance " + std::to_string(inst.id) + " has " + std::to_string(inst.size()) +
                  " candidates (limit " + std::to_string(options.max_candidates) + ")");
    }
  }

  DiagnosticsReport report;
  report.schedule = schedule_validity(options.schedule);
  Rng rng(seed);
  double mean_ratio = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Instance& inst = sample.instances[i];

    const UnbiasednessCheck u = check_unbiasedness(inst, w, losses[i], options.draws, options.standard_errors, rng);
    report.unbiasedness.coordinates += u.coordinates;
    report.unbiasedness.failures += u.failures;
    report.unbiasedness.max_abs_error = std::max(report.unbiasedness.max_abs_error, u.max_abs_error);
    report.unbiasedness.max_z = std::max(report.unbiasedness.max_z, u.max_z);

    const SecondMomentCheck m = check_second_moment(inst, w, losses[i], options.draws, rng);
    report.second_moment.pass = report.second_moment.pass && m.pass;
    report.second_moment.max_squared_norm = std::max(report.second_moment.max_squared_norm, m.max_squared_norm);
    report.second_moment.max_ratio = std::max(report.second_moment.max_ratio, m.max_ratio);
    mean_ratio = std::max(mean_ratio, m.mean_ratio);

    const GradientCheck g = check_gradient(inst, w, losses[i], options.fd_step, options.fd_tolerance);
    report.gradient.max_relative_error = std::max(report.gradient.max_relative_error, g.max_relative_error);
  }
  report.unbiasedness.pass = report.unbiasedness.failures == 0;
  report.second_moment.mean_ratio = mean_ratio;
  report.gradient.pass = report.gradient.max_relative_error < options.fd_tolerance;
  return report;
}

void write_report(std::ostream& out, const DiagnosticsReport& r) {
  auto flag = [](bool ok) { return ok ? "pass" : "fail"; };
  out << "unbiasedness=" << flag(r.unbiasedness.pass) << '\n'
      << "unbiasedness_failures=" << r.unbiasedness.failures << '/' << r.unbiasedness.coordinates << '\n'
      << "unbiasedness_max_abs_error=" << format_real(r.unbiasedness.max_abs_error) << '\n'
      << "unbiasedness_max_z=" << format_real(r.unbiasedness.max_z) << '\n'
      << "second_moment=" << flag(r.second_moment.pass) << '\n'
      << "second_moment_max_sq_norm=" << format_real(r.second_moment.max_squared_norm) << '\n'
      << "second_moment_max_ratio=" << format_real(r.second_moment.max_ratio) << '\n'
      << "second_moment_mean_ratio=" << format_real(r.second_moment.mean_ratio) << '\n'
      << "schedule=" << flag(r.schedule.all()) << '\n'
      << "schedule_nonneg=" << (r.schedule.nonneg ? "true" : "false") << '\n'
      << "schedule_divergent_sum=" << (r.schedule.divergent_sum ? "true" : "false") << '\n'
      << "schedule_convergent_sq_sum=" << (r.schedule.convergent_sq_sum ? "true" : "false") << '\n'
      << "gradient=" << flag(r.gradient.pass) << '\n'
      << "gradient_max_relative_error=" << format_real(r.gradient.max_relative_error) << '\n';
}

}  // namespace banditrank
