#include "banditrank/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace banditrank {

NGramStats& NGramStats::operator+=(const NGramStats& other) {
  for (std::size_t n = 0; n < kBleuOrder; ++n) {
    matches[n] += other.matches[n];
    hyp_totals[n] += other.hyp_totals[n];
    ref_totals[n] += other.ref_totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

NGramStats& NGramStats::operator-=(const NGramStats& other) {
  for (std::size_t n = 0; n < kBleuOrder; ++n) {
    matches[n] -= other.matches[n];
    hyp_totals[n] -= other.hyp_totals[n];
    ref_totals[n] -= other.ref_totals[n];
  }
  hyp_length -= other.hyp_length;
  ref_length -= other.ref_length;
  return *this;
}

namespace {

using NGramCounts = std::map<std::span<const std::string>, std::size_t,
                             decltype([](std::span<const std::string> a, std::span<const std::string> b) {
                               return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                             })>;

NGramCounts count_ngrams(const Tokens& tokens, std::size_t n) {
  NGramCounts counts;
  if (tokens.size() < n) return counts;
  const std::span<const std::string> all(tokens);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) ++counts[all.subspan(i, n)];
  return counts;
}

std::size_t ngram_total(std::size_t length, std::size_t n) { return length >= n ? length - n + 1 : 0; }

}  // namespace

NGramStats ngram_stats(const Tokens& hyp, const Tokens& ref) {
  NGramStats stats;
  stats.hyp_length = hyp.size();
  stats.ref_length = ref.size();
  for (std::size_t n = 1; n <= kBleuOrder; ++n) {
    stats.hyp_totals[n - 1] = ngram_total(hyp.size(), n);
    stats.ref_totals[n - 1] = ngram_total(ref.size(), n);
    const NGramCounts hyp_counts = count_ngrams(hyp, n);
    const NGramCounts ref_counts = count_ngrams(ref, n);
    std::size_t clipped = 0;
    for (const auto& [gram, count] : hyp_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) clipped += std::min(count, it->second);
    }
    stats.matches[n - 1] = clipped;
  }
  return stats;
}

double bleu_from_stats(const NGramStats& stats, BleuSmoothing smoothing) {
  if (stats.hyp_length == 0) return 0.0;
  double log_precision = 0.0;
  for (std::size_t n = 0; n < kBleuOrder; ++n) {
    if (stats.hyp_totals[n] == 0 && stats.ref_totals[n] == 0) continue;
    double matched = static_cast<double>(stats.matches[n]);
    double total = static_cast<double>(stats.hyp_totals[n]);
    if (smoothing == BleuSmoothing::kFloorCounts) {
      if (matched == 0.0) matched = kZeroMatchFloor;
      if (total == 0.0) total = 1.0;
    } else if (matched == 0.0) {
      return 0.0;
    }
    log_precision += std::log(matched / total);
  }
  const double ratio = static_cast<double>(stats.ref_length) / static_cast<double>(stats.hyp_length);
  const double brevity = ratio > 1.0 ? std::exp(1.0 - ratio) : 1.0;
  return brevity * std::exp(log_precision / static_cast<double>(kBleuOrder));
}

double sentence_bleu_smoothed(const Tokens& hyp, const Tokens& ref) {
  if (ref.empty()) throw Error("sentence BLEU needs a non-empty reference");
  return bleu_from_stats(ngram_stats(hyp, ref), BleuSmoothing::kFloorCounts);
}

double sentence_bleu(const Tokens& hyp, const Tokens& ref) {
  if (ref.empty()) throw Error("sentence BLEU needs a non-empty reference");
  return bleu_from_stats(ngram_stats(hyp, ref), BleuSmoothing::kNone);
}

double corpus_bleu(std::span<const std::pair<Tokens, Tokens>> pairs) {
  if (pairs.empty()) throw Error("corpus BLEU over an empty corpus");
  NGramStats total;
  for (const auto& [hyp, ref] : pairs) {
    if (ref.empty()) throw Error("corpus BLEU needs non-empty references");
    total += ngram_stats(hyp, ref);
  }
  return bleu_from_stats(total, BleuSmoothing::kNone);
}

double corpus_bleu(std::span<const Tokens> hyps, std::span<const Tokens> refs) {
  if (hyps.size() != refs.size()) {
    throw Error("corpus BLEU: " + std::to_string(hyps.size()) + " hypotheses vs " +
                std::to_string(refs.size()) + " references");
  }
  if (hyps.empty()) throw Error("corpus BLEU over an empty corpus");
  NGramStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (refs[i].empty()) throw Error("corpus BLEU needs non-empty references");
    total += ngram_stats(hyps[i], refs[i]);
  }
  return bleu_from_stats(total, BleuSmoothing::kNone);
}

double zero_one_loss(const Tokens& hyp, const Tokens& ref) { return hyp == ref ? 0.0 : 1.0; }

}  // namespace banditrank
