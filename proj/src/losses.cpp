#include "banditrank/losses.hpp"

namespace banditrank {

std::unique_ptr<SentenceLoss> make_loss(std::string_view name) {
  if (name == "bleu") return std::make_unique<BleuLoss>();
  if (name == "zero-one") return std::make_unique<ZeroOneLoss>();
  throw Error("unknown loss '" + std::string(name) + "'");
}

}  // namespace banditrank
