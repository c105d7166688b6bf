#ifndef BANDITRANK_CURVE_HPP_
#define BANDITRANK_CURVE_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace banditrank {

/// One learning-curve evaluation point.
struct CurveRecord {
  std::uint64_t run_seed = 0;
  std::size_t iteration = 0;
  std::size_t epoch = 0;
  double cumulative_loss = 0.0;
  double test_corpus_bleu = 0.0;

  friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

inline constexpr const char* kCurveHeader = "run_seed,iteration,epoch,cumulative_loss,test_corpus_bleu";

/// Header plus one row per record, ordered by (run_seed, iteration).
void write_curve(std::ostream& out, std::vector<CurveRecord> records);
std::vector<CurveRecord> read_curve(std::istream& in);

}  // namespace banditrank

#endif  // BANDITRANK_CURVE_HPP_
