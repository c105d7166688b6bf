#include "banditrank/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "banditrank/learners.hpp"

namespace banditrank {

namespace {

Dataset make_split(const SyntheticOptions& opt, std::size_t size, const Vector& direction, Rng& rng,
                   const std::string& prefix) {
  if (opt.candidates == 0 || opt.dim == 0) throw Error("synthetic task needs k >= 1 and d >= 1");
  if (opt.reference_length < opt.candidates) {
    throw Error("synthetic reference length must be at least the candidate count");
  }
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, opt.candidates - 1);

  Dataset data;
  data.dim = opt.dim;
  const auto k = static_cast<Eigen::Index>(opt.candidates);
  const auto d = static_cast<Eigen::Index>(opt.dim);
  for (std::size_t id = 0; id < size; ++id) {
    FeatureMatrix phi(k, d);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) phi(i, j) = uniform(rng);
    }
    const std::size_t planted = pick(rng);
    phi.row(static_cast<Eigen::Index>(planted)) += opt.shift * direction.transpose();

    Tokens reference;
    const std::string stem = prefix + std::to_string(id) + "_";
    for (std::size_t j = 0; j < opt.reference_length; ++j) reference.push_back(stem + "w" + std::to_string(j));

    // Rank candidates by distance to the planted one; rank 0 is the planted
    // candidate itself.
    const Eigen::VectorXd dist = (phi.rowwise() - phi.row(static_cast<Eigen::Index>(planted))).rowwise().norm();
    std::vector<std::size_t> order(opt.candidates);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (a == planted || b == planted) return a == planted && b != planted;
      return dist(static_cast<Eigen::Index>(a)) < dist(static_cast<Eigen::Index>(b));
    });

    std::vector<Candidate> cands(opt.candidates);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const std::size_t i = order[rank];
      Tokens tokens = reference;
      for (std::size_t j = 0; j < rank; ++j) {
        tokens[opt.reference_length - 1 - j] = stem + "x" + std::to_string(rank) + "_" + std::to_string(j);
      }
      cands[i].tokens = std::move(tokens);
      cands[i].features = phi.row(static_cast<Eigen::Index>(i)).transpose();
    }
    data.instances.push_back(make_instance(id, cands, reference));
  }
  return data;
}

}  // namespace

SyntheticTask make_synthetic_task(const SyntheticOptions& options, std::uint64_t seed) {
  Rng rng(seed);
  SyntheticTask task;
  task.direction = sample_unit_vector(options.dim, rng);
  task.planted_weights = options.planted_scale * task.direction;
  task.train = make_split(options, options.train_size, task.direction, rng, "t");
  task.heldout = make_split(options, options.heldout_size, task.direction, rng, "h");
  return task;
}

}  // namespace banditrank
