#include "banditrank/types.hpp"

#include <sstream>

namespace banditrank {

Instance make_instance(std::size_t id, const std::vector<Candidate>& candidates,
                       std::optional<Tokens> reference) {
  if (candidates.empty()) {
    throw DimensionError("instance " + std::to_string(id) + " has no candidates");
  }
  const auto d = candidates.front().features.size();
  if (d == 0) throw DimensionError("feature dimension must be at least 1");

  Instance inst;
  inst.id = id;
  inst.features.resize(static_cast<Eigen::Index>(candidates.size()), d);
  inst.hypotheses.reserve(candidates.size());
  inst.base_scores.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (c.features.size() != d) {
      throw DimensionError("instance " + std::to_string(id) + " candidate " + std::to_string(i) +
                           " has dimension " + std::to_string(c.features.size()) + ", expected " +
                           std::to_string(d));
    }
    if (!c.features.allFinite()) {
      throw Error("instance " + std::to_string(id) + " candidate " + std::to_string(i) +
                  " has a non-finite feature value");
    }
    inst.features.row(static_cast<Eigen::Index>(i)) = c.features.transpose();
    inst.hypotheses.push_back(c.tokens);
    inst.base_scores.push_back(c.base_score);
  }
  inst.reference = std::move(reference);
  return inst;
}

Tokens split_tokens(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' || text[i] == '\n')) ++i;
    std::size_t j = i;
    while (j < text.size() && !(text[j] == ' ' || text[j] == '\t' || text[j] == '\r' || text[j] == '\n')) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join_tokens(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace banditrank
