#include "banditrank/sigtest.hpp"

#include <cmath>
#include <random>

namespace banditrank {

CorpusMetric corpus_bleu_metric() {
  return [](const NGramStats& stats) { return bleu_from_stats(stats, BleuSmoothing::kNone); };
}

RandomizationResult approx_randomization_test(std::span<const NGramStats> stats_a,
                                              std::span<const NGramStats> stats_b, const CorpusMetric& metric,
                                              std::size_t shuffles, std::uint64_t seed) {
  if (stats_a.size() != stats_b.size()) {
    throw Error("randomization test needs sentence-aligned outputs (" + std::to_string(stats_a.size()) + " vs " +
                std::to_string(stats_b.size()) + ")");
  }
  if (stats_a.empty()) throw Error("randomization test over an empty corpus");
  if (shuffles < 1) throw Error("randomization test needs at least one shuffle");

  NGramStats total_a;
  NGramStats total_b;
  for (std::size_t i = 0; i < stats_a.size(); ++i) {
    total_a += stats_a[i];
    total_b += stats_b[i];
  }

  RandomizationResult result;
  result.metric_a = metric(total_a);
  result.metric_b = metric(total_b);
  result.observed = std::abs(result.metric_a - result.metric_b);
  result.shuffles = shuffles;

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t r = 0; r < shuffles; ++r) {
    NGramStats shuffled_a = total_a;
    NGramStats shuffled_b = total_b;
    for (std::size_t i = 0; i < stats_a.size(); ++i) {
      if (!coin(rng)) continue;
      shuffled_a -= stats_a[i];
      shuffled_a += stats_b[i];
      shuffled_b -= stats_b[i];
      shuffled_b += stats_a[i];
    }
    // Aggregates are integer counts, so an assignment equivalent to the
    // observed one reproduces the observed statistic exactly.
    if (std::abs(metric(shuffled_a) - metric(shuffled_b)) >= result.observed) ++result.at_least_as_extreme;
  }
  result.p_value = static_cast<double>(result.at_least_as_extreme + 1) / static_cast<double>(shuffles + 1);
  return result;
}

RandomizationResult approx_randomization_test(std::span<const Tokens> outputs_a, std::span<const Tokens> outputs_b,
                                              std::span<const Tokens> references, const CorpusMetric& metric,
                                              std::size_t shuffles, std::uint64_t seed) {
  if (outputs_a.size() != outputs_b.size() || outputs_a.size() != references.size()) {
    throw Error("randomization test needs equally many outputs and references (" +
                std::to_string(outputs_a.size()) + ", " + std::to_string(outputs_b.size()) + ", " +
                std::to_string(references.size()) + ")");
  }
  std::vector<NGramStats> a;
  std::vector<NGramStats> b;
  a.reserve(outputs_a.size());
  b.reserve(outputs_b.size());
  for (std::size_t i = 0; i < outputs_a.size(); ++i) {
    a.push_back(ngram_stats(outputs_a[i], references[i]));
    b.push_back(ngram_stats(outputs_b[i], references[i]));
  }
  return approx_randomization_test(a, b, metric, shuffles, seed);
}

}  // namespace banditrank
