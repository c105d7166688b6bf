#ifndef BANDITRANK_HARNESS_HPP_
#define BANDITRANK_HARNESS_HPP_

// Online training driver: epochs over a training set, periodic corpus-BLEU
// evaluation of the MAP outputs on a test set, last-iterate model selection,
// and multi-seed averaging.

#include <cstdint>
#include <vector>

#include "banditrank/bleu.hpp"
#include "banditrank/config.hpp"
#include "banditrank/curve.hpp"
#include "banditrank/feedback.hpp"
#include "banditrank/learners.hpp"
#include "banditrank/losses.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

/// MAP output of every instance.
std::vector<Tokens> map_outputs(const Dataset& data, const WeightVector& w);

/// Corpus BLEU of the MAP outputs against the instances' references.
double map_corpus_bleu(const Dataset& data, const WeightVector& w);

/// Per-candidate losses against references, one vector per instance.
std::vector<Vector> loss_table(const Dataset& data, const SentenceLoss& loss);

/// Mean over instances of Σ_i Δ_i p_i(w).
double mean_expected_loss(const Dataset& data, const WeightVector& w, const std::vector<Vector>& losses);

/// Caches the n-gram statistics of every test candidate so that repeated
/// corpus-BLEU evaluations only sum counts.
class CorpusBleuEvaluator {
 public:
  explicit CorpusBleuEvaluator(const Dataset& test);
  double operator()(const WeightVector& w) const;

 private:
  const Dataset* test_;
  std::vector<std::vector<NGramStats>> stats_;
};

struct RunResult {
  std::uint64_t seed = 0;
  WeightVector final_weights;
  std::vector<CurveRecord> curve;
  double final_test_bleu = 0.0;
  QueryReport queries;
  std::size_t iterations = 0;
  // Bandit: Σ observed Δ. Dueling: Σ loss of the incumbent's output.
  // Full-info: Σ expected loss before each update.
  double cumulative_loss = 0.0;
};

/// One online run. Bandit and dueling learners talk to `oracle` only and
/// refuse training instances that still carry references; the full-info
/// learner reads the training references through `loss` instead.
RunResult run_online(const RunConfig& config, const Dataset& train, FeedbackOracle& oracle, const Dataset& test,
                     const WeightVector& w0, std::uint64_t seed, const SentenceLoss& loss);

struct SuiteSummary {
  double mean_bleu = 0.0;
  double std_bleu = 0.0;  // population standard deviation
  std::vector<RunResult> runs;
};

/// Runs every seed of `config` on its own copy of the data and its own
/// oracle (built from the training references), in parallel.
SuiteSummary run_suite(const RunConfig& config, const Dataset& train, const Dataset& test, const WeightVector& w0);

/// Mean and population standard deviation of the final test BLEU values.
SuiteSummary summarize(std::vector<RunResult> runs);

}  // namespace banditrank

#endif  // BANDITRANK_HARNESS_HPP_
