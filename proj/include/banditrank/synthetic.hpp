#ifndef BANDITRANK_SYNTHETIC_HPP_
#define BANDITRANK_SYNTHETIC_HPP_

// Planted reranking task. Each instance has k candidates with features
// uniform in [-1,1]^d; one of them is the reference and has its features
// shifted along a hidden unit direction. The other candidates' token
// sequences copy the reference and replace a suffix with junk tokens, the
// suffix growing with the candidate's feature-space distance from the
// reference candidate, so 1 - BLEU increases with that distance.

#include <cstdint>

#include "banditrank/types.hpp"

namespace banditrank {

struct SyntheticOptions {
  std::size_t train_size = 200;
  std::size_t heldout_size = 200;
  std::size_t candidates = 20;
  std::size_t dim = 10;
  double shift = 2.0;
  std::size_t reference_length = 24;
  // Planted weights are planted_scale * direction.
  double planted_scale = 10.0;
};

struct SyntheticTask {
  Dataset train;    // with references
  Dataset heldout;  // with references
  Vector direction;
  WeightVector planted_weights;
};

SyntheticTask make_synthetic_task(const SyntheticOptions& options, std::uint64_t seed);

}  // namespace banditrank

#endif  // BANDITRANK_SYNTHETIC_HPP_
