#include "banditrank/feedback.hpp"

namespace banditrank {

QueryReport operator-(const QueryReport& after, const QueryReport& before) {
  return QueryReport{after.one_point_count - before.one_point_count,
                     after.two_point_count - before.two_point_count};
}

double FeedbackOracle::one_point(std::size_t id, const Tokens& hyp) {
  const double value = loss(id, hyp);
  one_point_count_.fetch_add(1, std::memory_order_relaxed);
  return value;
}

DuelOutcome FeedbackOracle::two_point(std::size_t id, const Tokens& hyp_a, const Tokens& hyp_b) {
  DuelOutcome out;
  out.loss_a = loss(id, hyp_a);
  out.loss_b = loss(id, hyp_b);
  if (out.loss_a < out.loss_b) {
    out.winner = DuelWinner::kA;
  } else if (out.loss_b < out.loss_a) {
    out.winner = DuelWinner::kB;
  }
  two_point_count_.fetch_add(1, std::memory_order_relaxed);
  return out;
}

QueryReport FeedbackOracle::query_report() const {
  return QueryReport{one_point_count_.load(std::memory_order_relaxed),
                     two_point_count_.load(std::memory_order_relaxed)};
}

ReferenceOracle::ReferenceOracle(std::shared_ptr<const SentenceLoss> loss,
                                 std::unordered_map<std::size_t, Tokens> references)
    : loss_(std::move(loss)), references_(std::move(references)) {
  if (!loss_) throw Error("reference oracle needs a loss");
}

std::unique_ptr<ReferenceOracle> ReferenceOracle::take_references(Dataset& data,
                                                                  std::shared_ptr<const SentenceLoss> loss) {
  std::unordered_map<std::size_t, Tokens> refs;
  for (Instance& inst : data.instances) {
    if (!inst.reference) continue;
    refs.emplace(inst.id, std::move(*inst.reference));
    inst.reference.reset();
  }
  return std::make_unique<ReferenceOracle>(std::move(loss), std::move(refs));
}

bool ReferenceOracle::covers(std::size_t id) const { return references_.contains(id); }

double ReferenceOracle::loss(std::size_t id, const Tokens& hyp) const {
  auto it = references_.find(id);
  if (it == references_.end()) throw Error("feedback requested for unknown instance " + std::to_string(id));
  return loss_->evaluate(hyp, it->second);
}

void LossTableOracle::set(std::size_t id, const Tokens& hyp, double value) {
  table_[id][join_tokens(hyp)] = value;
}

void LossTableOracle::set_instance(const Instance& inst, const std::vector<double>& losses) {
  if (losses.size() != inst.size()) throw DimensionError("one loss per candidate expected");
  for (std::size_t i = 0; i < losses.size(); ++i) set(inst.id, inst.hypotheses[i], losses[i]);
}

bool LossTableOracle::covers(std::size_t id) const { return table_.contains(id); }

double LossTableOracle::loss(std::size_t id, const Tokens& hyp) const {
  auto row = table_.find(id);
  if (row == table_.end()) throw Error("feedback requested for unknown instance " + std::to_string(id));
  auto it = row->second.find(join_tokens(hyp));
  if (it == row->second.end()) throw Error("no loss stored for hypothesis of instance " + std::to_string(id));
  return it->second;
}

}  // namespace banditrank
