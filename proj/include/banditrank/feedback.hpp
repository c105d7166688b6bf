#ifndef BANDITRANK_FEEDBACK_HPP_
#define BANDITRANK_FEEDBACK_HPP_

// Simulated bandit environment. Oracles hold the information a learner is
// not allowed to see and answer loss queries about it; their public surface
// only ever returns scalars and duel outcomes.

#include <atomic>
#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "banditrank/losses.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

enum class DuelWinner { kA, kB, kTie };

struct DuelOutcome {
  DuelWinner winner = DuelWinner::kTie;
  double loss_a = 0.0;
  double loss_b = 0.0;
};

struct QueryReport {
  std::size_t one_point_count = 0;
  std::size_t two_point_count = 0;

  // Each two-point query evaluates the loss twice.
  std::size_t loss_evaluations() const { return one_point_count + 2 * two_point_count; }
  friend bool operator==(const QueryReport&, const QueryReport&) = default;
};

QueryReport operator-(const QueryReport& after, const QueryReport& before);

class FeedbackOracle {
 public:
  FeedbackOracle() = default;
  FeedbackOracle(const FeedbackOracle&) = delete;
  FeedbackOracle& operator=(const FeedbackOracle&) = delete;
  virtual ~FeedbackOracle() = default;

  /// Loss of one hypothesis for input `id`.
  double one_point(std::size_t id, const Tokens& hyp);

  /// Compares two hypotheses for input `id`; the winner has the strictly
  /// smaller loss.
  DuelOutcome two_point(std::size_t id, const Tokens& hyp_a, const Tokens& hyp_b);

  QueryReport query_report() const;

  virtual bool covers(std::size_t id) const = 0;

 protected:
  virtual double loss(std::size_t id, const Tokens& hyp) const = 0;

 private:
  std::atomic<std::size_t> one_point_count_{0};
  std::atomic<std::size_t> two_point_count_{0};
};

/// Answers queries with a sentence loss against hidden references.
class ReferenceOracle final : public FeedbackOracle {
 public:
  ReferenceOracle(std::shared_ptr<const SentenceLoss> loss, std::unordered_map<std::size_t, Tokens> references);

  /// Moves every reference out of `data` into a new oracle, so the dataset
  /// that learners see no longer carries them.
  static std::unique_ptr<ReferenceOracle> take_references(Dataset& data, std::shared_ptr<const SentenceLoss> loss);

  bool covers(std::size_t id) const override;

 protected:
  double loss(std::size_t id, const Tokens& hyp) const override;

 private:
  std::shared_ptr<const SentenceLoss> loss_;
  std::unordered_map<std::size_t, Tokens> references_;
};

/// Answers queries from an explicit (id, hypothesis) -> loss table. Values are
/// returned as stored, so out-of-range entries reach the learner unchanged.
class LossTableOracle final : public FeedbackOracle {
 public:
  void set(std::size_t id, const Tokens& hyp, double value);
  /// Registers losses[i] for every candidate i of `inst`.
  void set_instance(const Instance& inst, const std::vector<double>& losses);

  bool covers(std::size_t id) const override;

 protected:
  double loss(std::size_t id, const Tokens& hyp) const override;

 private:
  std::unordered_map<std::size_t, std::unordered_map<std::string, double>> table_;
};

}  // namespace banditrank

#endif  // BANDITRANK_FEEDBACK_HPP_
