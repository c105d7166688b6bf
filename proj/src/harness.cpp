#include "banditrank/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

namespace banditrank {

std::vector<Tokens> map_outputs(const Dataset& data, const WeightVector& w) {
  std::vector<Tokens> out;
  out.reserve(data.size());
  for (const Instance& inst : data.instances) out.push_back(inst.hypotheses[map_predict(inst, w)]);
  return out;
}

double map_corpus_bleu(const Dataset& data, const WeightVector& w) {
  std::vector<Tokens> refs;
  refs.reserve(data.size());
  for (const Instance& inst : data.instances) {
    if (!inst.reference) throw Error("instance " + std::to_string(inst.id) + " has no reference");
    refs.push_back(*inst.reference);
  }
  return corpus_bleu(map_outputs(data, w), refs);
}

std::vector<Vector> loss_table(const Dataset& data, const SentenceLoss& loss) {
  std::vector<Vector> table;
  table.reserve(data.size());
  for (const Instance& inst : data.instances) table.push_back(candidate_losses(inst, loss));
  return table;
}

double mean_expected_loss(const Dataset& data, const WeightVector& w, const std::vector<Vector>& losses) {
  if (losses.size() != data.size()) throw DimensionError("one loss vector per instance expected");
  if (data.empty()) throw Error("expected loss over an empty dataset");
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) total += expected_loss(data.instances[i], w, losses[i]);
  return total / static_cast<double>(data.size());
}

CorpusBleuEvaluator::CorpusBleuEvaluator(const Dataset& test) : test_(&test) {
  if (test.empty()) throw Error("test set is empty");
  stats_.reserve(test.size());
  for (const Instance& inst : test.instances) {
    if (!inst.reference || inst.reference->empty()) {
      throw Error("test instance " + std::to_string(inst.id) + " has no reference");
    }
    std::vector<NGramStats> row;
    row.reserve(inst.size());
    for (const Tokens& hyp : inst.hypotheses) row.push_back(ngram_stats(hyp, *inst.reference));
    stats_.push_back(std::move(row));
  }
}

double CorpusBleuEvaluator::operator()(const WeightVector& w) const {
  NGramStats total;
  for (std::size_t i = 0; i < stats_.size(); ++i) total += stats_[i][map_predict(test_->instances[i], w)];
  return bleu_from_stats(total, BleuSmoothing::kNone);
}

namespace {

Rng derived_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

}  // namespace

RunResult run_online(const RunConfig& config, const Dataset& train, FeedbackOracle& oracle, const Dataset& test,
                     const WeightVector& w0, std::uint64_t seed, const SentenceLoss& loss) {
  config.validate();
  if (train.empty()) throw Error("training set is empty");
  if (static_cast<std::size_t>(w0.size()) != train.dim) {
    throw DimensionError("initial weights have dimension " + std::to_string(w0.size()) + ", data has " +
                         std::to_string(train.dim));
  }

  std::vector<Vector> full_info_losses;
  if (config.learner == LearnerKind::kFullInfo) {
    full_info_losses = loss_table(train, loss);
  } else {
    for (const Instance& inst : train.instances) {
      if (inst.reference) {
        throw Error("training instance " + std::to_string(inst.id) +
                    " still carries its reference; bandit learners may only query the oracle");
      }
      if (!oracle.covers(inst.id)) {
        throw Error("feedback oracle does not cover training instance " + std::to_string(inst.id));
      }
    }
  }

  const CorpusBleuEvaluator evaluate(test);
  const QueryReport queries_before = oracle.query_report();
  const std::size_t n = train.size();
  const std::size_t period = config.eval_every.value_or(n);

  BanditLearnerState bandit{w0, 0, config.schedule, derived_rng(seed, 1)};
  DuelingLearnerState dueling{w0, 0, config.delta, config.gamma, derived_rng(seed, 1)};
  FullInfoLearnerState full_info{w0, 0, config.schedule};
  auto current_weights = [&]() -> const WeightVector& {
    switch (config.learner) {
      case LearnerKind::kBandit: return bandit.w;
      case LearnerKind::kDueling: return dueling.w;
      case LearnerKind::kFullInfo: return full_info.w;
    }
    return bandit.w;
  };

  RunResult result;
  result.seed = seed;
  auto record = [&](std::size_t iteration) {
    const std::size_t epoch = iteration == 0 ? 0 : (iteration - 1) / n + 1;
    result.curve.push_back(
        CurveRecord{seed, iteration, epoch, result.cumulative_loss, evaluate(current_weights())});
  };
  record(0);

  Rng shuffle_rng = derived_rng(seed, 2);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t iteration = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (const std::size_t index : order) {
      const Instance& inst = train.instances[index];
      switch (config.learner) {
        case LearnerKind::kBandit:
          result.cumulative_loss += bandit_step(bandit, inst, oracle).loss;
          break;
        case LearnerKind::kDueling:
          result.cumulative_loss += dueling_step(dueling, inst, oracle).outcome.loss_a;
          break;
        case LearnerKind::kFullInfo:
          result.cumulative_loss += full_info_step(full_info, inst, full_info_losses[index]).expected_loss;
          break;
      }
      ++iteration;
      if (iteration % period == 0) record(iteration);
    }
  }
  if (result.curve.back().iteration != iteration) record(iteration);

  result.iterations = iteration;
  result.final_weights = current_weights();
  result.final_test_bleu = result.curve.back().test_corpus_bleu;
  result.queries = oracle.query_report() - queries_before;
  return result;
}

SuiteSummary summarize(std::vector<RunResult> runs) {
  if (runs.empty()) throw Error("no runs to summarize");
  SuiteSummary summary;
  // Offsets from the first run keep the mean exact when all runs agree.
  const double first = runs.front().final_test_bleu;
  double offset = 0.0;
  for (const RunResult& r : runs) offset += r.final_test_bleu - first;
  summary.mean_bleu = first + offset / static_cast<double>(runs.size());
  double sq = 0.0;
  for (const RunResult& r : runs) sq += (r.final_test_bleu - summary.mean_bleu) * (r.final_test_bleu - summary.mean_bleu);
  summary.std_bleu = std::sqrt(sq / static_cast<double>(runs.size()));
  summary.runs = std::move(runs);
  return summary;
}

SuiteSummary run_suite(const RunConfig& config, const Dataset& train, const Dataset& test, const WeightVector& w0) {
  config.validate();
  const std::shared_ptr<const SentenceLoss> loss = make_loss(config.loss);

  auto one_run = [&](std::uint64_t seed) {
    Dataset own = train;
    if (config.learner == LearnerKind::kFullInfo) {
      ReferenceOracle unused(loss, {});
      return run_online(config, own, unused, test, w0, seed, *loss);
    }
    auto oracle = ReferenceOracle::take_references(own, loss);
    return run_online(config, own, *oracle, test, w0, seed, *loss);
  };

  std::vector<std::future<RunResult>> pending;
  pending.reserve(config.seeds.size());
  for (const std::uint64_t seed : config.seeds) pending.push_back(std::async(std::launch::async, one_run, seed));
  std::vector<RunResult> runs;
  runs.reserve(pending.size());
  for (auto& f : pending) runs.push_back(f.get());
  return summarize(std::move(runs));
}

}  // namespace banditrank
