#ifndef BANDITRANK_TYPES_HPP_
#define BANDITRANK_TYPES_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace banditrank {

using Vector = Eigen::VectorXd;
// One row per candidate, one column per feature.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using WeightVector = Vector;
using Tokens = std::vector<std::string>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// One output structure: its token sequence and the joint feature vector.
struct Candidate {
  Tokens tokens;
  Vector features;
  double base_score = 0.0;
};

/// One input: the candidate list of an n-best list plus, optionally, the
/// reference it is scored against. Learners that run under bandit feedback
/// never see instances that still carry a reference (the harness moves it
/// into the feedback oracle first).
struct Instance {
  std::size_t id = 0;
  FeatureMatrix features;
  std::vector<Tokens> hypotheses;
  std::vector<double> base_scores;
  std::optional<Tokens> reference;

  std::size_t size() const { return hypotheses.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }

  Candidate candidate(std::size_t i) const {
    return Candidate{hypotheses.at(i), features.row(static_cast<Eigen::Index>(i)).transpose(),
                     base_scores.at(i)};
  }
};

/// Builds an instance from candidates, enforcing a shared non-zero feature
/// dimension and finite feature values.
Instance make_instance(std::size_t id, const std::vector<Candidate>& candidates,
                       std::optional<Tokens> reference = std::nullopt);

struct Dataset {
  std::vector<Instance> instances;
  std::size_t dim = 0;
  // Per-feature group label (e.g. "tm" repeated for every tm value); empty
  // when the n-best file used unnamed features.
  std::vector<std::string> feature_labels;

  std::size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }
};

Tokens split_tokens(std::string_view text);
std::string join_tokens(const Tokens& tokens);

}  // namespace banditrank

#endif  // BANDITRANK_TYPES_HPP_
