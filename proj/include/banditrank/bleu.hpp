#ifndef BANDITRANK_BLEU_HPP_
#define BANDITRANK_BLEU_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "banditrank/types.hpp"

namespace banditrank {

inline constexpr std::size_t kBleuOrder = 4;
inline constexpr double kZeroMatchFloor = 0.01;

/// Sufficient statistics for BLEU. All counts are integers so that corpus
/// aggregates are exact and independent of summation order.
struct NGramStats {
  std::array<std::size_t, kBleuOrder> matches{};          // clipped
  std::array<std::size_t, kBleuOrder> hyp_totals{};       // hypothesis n-grams
  std::array<std::size_t, kBleuOrder> ref_totals{};       // reference n-grams
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  NGramStats& operator+=(const NGramStats& other);
  NGramStats& operator-=(const NGramStats& other);
  friend NGramStats operator+(NGramStats a, const NGramStats& b) { return a += b; }
  friend bool operator==(const NGramStats&, const NGramStats&) = default;
};

NGramStats ngram_stats(const Tokens& hyp, const Tokens& ref);

enum class BleuSmoothing {
  kNone,        // any zero precision gives BLEU 0
  kFloorCounts  // zero clipped matches are replaced by kZeroMatchFloor
};

/// BLEU from sufficient statistics. An order with no n-grams on either side
/// is skipped (its precision is 1); with kFloorCounts an order where only the
/// hypothesis is too short counts as 0.01/1.
double bleu_from_stats(const NGramStats& stats, BleuSmoothing smoothing);

/// Per-sentence BLEU with zero match counts floored to 0.01, brevity penalty
/// included. Empty hypothesis scores 0; empty reference throws.
double sentence_bleu_smoothed(const Tokens& hyp, const Tokens& ref);

/// Unsmoothed sentence BLEU, the single-pair case of corpus_bleu.
double sentence_bleu(const Tokens& hyp, const Tokens& ref);

/// Corpus BLEU: aggregate statistics, geometric mean of the four precisions,
/// corpus-level brevity penalty, no smoothing.
double corpus_bleu(std::span<const std::pair<Tokens, Tokens>> pairs);
double corpus_bleu(std::span<const Tokens> hyps, std::span<const Tokens> refs);

double zero_one_loss(const Tokens& hyp, const Tokens& ref);

}  // namespace banditrank

#endif  // BANDITRANK_BLEU_HPP_
