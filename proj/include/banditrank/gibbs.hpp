#ifndef BANDITRANK_GIBBS_HPP_
#define BANDITRANK_GIBBS_HPP_

// Log-linear (Gibbs) model over a finite candidate list.
//
// Every function here is a template over Eigen expressions so callers can
// pass blocks, maps, or matrices of a different scalar type (tests use long
// double). Features are laid out one candidate per row.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "banditrank/types.hpp"

namespace banditrank {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename DerivedPhi, typename DerivedW>
void check_model_shape(const Eigen::MatrixBase<DerivedPhi>& features,
                       const Eigen::MatrixBase<DerivedW>& w) {
  if (features.rows() == 0) throw DimensionError("empty candidate list");
  if (features.cols() != w.size()) {
    throw DimensionError("feature dimension " + std::to_string(features.cols()) +
                         " does not match weight dimension " + std::to_string(w.size()));
  }
}

}  // namespace detail

/// Candidate scores w·φ_i.
template <typename DerivedPhi, typename DerivedW>
VectorX<typename DerivedW::Scalar> scores(const Eigen::MatrixBase<DerivedPhi>& features,
                                          const Eigen::MatrixBase<DerivedW>& w) {
  detail::check_model_shape(features, w);
  return features.template cast<typename DerivedW::Scalar>() * w;
}

/// p_i = exp(w·φ_i) / Σ_j exp(w·φ_j), evaluated after subtracting the
/// maximum score so that large scores cannot overflow.
template <typename DerivedPhi, typename DerivedW>
VectorX<typename DerivedW::Scalar> gibbs_probabilities(const Eigen::MatrixBase<DerivedPhi>& features,
                                                       const Eigen::MatrixBase<DerivedW>& w) {
  using Scalar = typename DerivedW::Scalar;
  VectorX<Scalar> s = scores(features, w);
  const Scalar top = s.maxCoeff();
  VectorX<Scalar> p = (s.array() - top).exp().matrix();
  p /= p.sum();
  return p;
}

/// Expected feature vector Σ_i p_i φ_i under the Gibbs distribution.
template <typename DerivedPhi, typename DerivedW>
VectorX<typename DerivedW::Scalar> expected_features(const Eigen::MatrixBase<DerivedPhi>& features,
                                                     const Eigen::MatrixBase<DerivedW>& w) {
  using Scalar = typename DerivedW::Scalar;
  const VectorX<Scalar> p = gibbs_probabilities(features, w);
  return features.template cast<Scalar>().transpose() * p;
}

/// Draws index i with probability p_i by inverting the cumulative
/// distribution with one uniform variate.
template <typename DerivedP, typename Rng>
std::size_t sample_index(const Eigen::MatrixBase<DerivedP>& probabilities, Rng& rng) {
  using Scalar = typename DerivedP::Scalar;
  const Eigen::Index k = probabilities.size();
  if (k == 0) throw DimensionError("empty candidate list");
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  Scalar cumulative = 0;
  Eigen::Index last_positive = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (probabilities(i) <= Scalar(0)) continue;
    cumulative += probabilities(i);
    last_positive = i;
    if (static_cast<Scalar>(u) < cumulative) return static_cast<std::size_t>(i);
  }
  // Rounding left the total just below u.
  return static_cast<std::size_t>(last_positive);
}

template <typename DerivedPhi, typename DerivedW, typename Rng>
std::size_t sample(const Eigen::MatrixBase<DerivedPhi>& features, const Eigen::MatrixBase<DerivedW>& w,
                   Rng& rng) {
  return sample_index(gibbs_probabilities(features, w), rng);
}

/// argmax_i w·φ_i, lowest index on ties.
template <typename DerivedPhi, typename DerivedW>
std::size_t map_predict(const Eigen::MatrixBase<DerivedPhi>& features,
                        const Eigen::MatrixBase<DerivedW>& w) {
  const auto s = scores(features, w);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < s.size(); ++i) {
    if (s(i) > s(best)) best = i;
  }
  return static_cast<std::size_t>(best);
}

/// Minimum Bayes risk prediction. pairwise_loss(i, j) is the loss of
/// predicting candidate i when candidate j is the truth; the returned index
/// minimizes Σ_j pairwise_loss(i, j) p_j, lowest index on ties.
template <typename DerivedPhi, typename DerivedW>
std::size_t mbr_predict(const Eigen::MatrixBase<DerivedPhi>& features,
                        const Eigen::MatrixBase<DerivedW>& w,
                        const std::function<double(std::size_t, std::size_t)>& pairwise_loss) {
  using Scalar = typename DerivedW::Scalar;
  const VectorX<Scalar> p = gibbs_probabilities(features, w);
  const auto k = static_cast<std::size_t>(p.size());
  std::size_t best = 0;
  Scalar best_risk = 0;
  for (std::size_t i = 0; i < k; ++i) {
    Scalar risk = 0;
    for (std::size_t j = 0; j < k; ++j) {
      risk += static_cast<Scalar>(pairwise_loss(i, j)) * p(static_cast<Eigen::Index>(j));
    }
    if (i == 0 || risk < best_risk) {
      best = i;
      best_risk = risk;
    }
  }
  return best;
}

// Instance overloads.

inline Vector gibbs_probabilities(const Instance& inst, const WeightVector& w) {
  return gibbs_probabilities(inst.features, w);
}

inline Vector expected_features(const Instance& inst, const WeightVector& w) {
  return expected_features(inst.features, w);
}

template <typename Rng>
std::size_t sample(const Instance& inst, const WeightVector& w, Rng& rng) {
  return sample(inst.features, w, rng);
}

inline std::size_t map_predict(const Instance& inst, const WeightVector& w) {
  return map_predict(inst.features, w);
}

inline std::size_t mbr_predict(const Instance& inst, const WeightVector& w,
                               const std::function<double(std::size_t, std::size_t)>& pairwise_loss) {
  return mbr_predict(inst.features, w, pairwise_loss);
}

/// Largest Euclidean norm over an instance's candidate feature vectors.
inline double max_feature_norm(const Instance& inst) {
  return inst.features.rowwise().norm().maxCoeff();
}

}  // namespace banditrank

#endif  // BANDITRANK_GIBBS_HPP_
