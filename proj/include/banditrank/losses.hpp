#ifndef BANDITRANK_LOSSES_HPP_
#define BANDITRANK_LOSSES_HPP_

#include <memory>
#include <string>
#include <string_view>

#include "banditrank/bleu.hpp"
#include "banditrank/types.hpp"

namespace banditrank {

/// Task loss Δ(hypothesis; reference) with values in [0,1] and
/// evaluate(x, x) == 0.
class SentenceLoss {
 public:
  virtual ~SentenceLoss() = default;
  virtual double evaluate(const Tokens& hyp, const Tokens& ref) const = 0;
  virtual std::string name() const = 0;
};

/// 1 - smoothed sentence BLEU.
class BleuLoss final : public SentenceLoss {
 public:
  double evaluate(const Tokens& hyp, const Tokens& ref) const override {
    return 1.0 - sentence_bleu_smoothed(hyp, ref);
  }
  std::string name() const override { return "bleu"; }
};

class ZeroOneLoss final : public SentenceLoss {
 public:
  double evaluate(const Tokens& hyp, const Tokens& ref) const override { return zero_one_loss(hyp, ref); }
  std::string name() const override { return "zero-one"; }
};

/// "bleu" or "zero-one".
std::unique_ptr<SentenceLoss> make_loss(std::string_view name);

}  // namespace banditrank

#endif  // BANDITRANK_LOSSES_HPP_
