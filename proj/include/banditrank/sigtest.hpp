#ifndef BANDITRANK_SIGTEST_HPP_
#define BANDITRANK_SIGTEST_HPP_

// Approximate randomization test for the difference of a corpus-level
// metric between two systems with sentence-aligned outputs.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "banditrank/bleu.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

/// Corpus metric computed from aggregated sufficient statistics.
using CorpusMetric = std::function<double(const NGramStats&)>;

/// Unsmoothed corpus BLEU.
CorpusMetric corpus_bleu_metric();

struct RandomizationResult {
  double metric_a = 0.0;
  double metric_b = 0.0;
  double observed = 0.0;   // |metric_a - metric_b|
  std::size_t at_least_as_extreme = 0;
  std::size_t shuffles = 0;
  double p_value = 1.0;    // (at_least_as_extreme + 1) / (shuffles + 1)
};

/// Works on per-sentence statistics; each shuffle swaps every aligned pair
/// independently with probability 1/2.
RandomizationResult approx_randomization_test(std::span<const NGramStats> stats_a,
                                              std::span<const NGramStats> stats_b, const CorpusMetric& metric,
                                              std::size_t shuffles, std::uint64_t seed);

RandomizationResult approx_randomization_test(std::span<const Tokens> outputs_a, std::span<const Tokens> outputs_b,
                                              std::span<const Tokens> references, const CorpusMetric& metric,
                                              std::size_t shuffles, std::uint64_t seed);

}  // namespace banditrank

#endif  // BANDITRANK_SIGTEST_HPP_
