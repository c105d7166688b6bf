#include "banditrank/bleu.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "banditrank/losses.hpp"
#include "test_util.hpp"

namespace banditrank {
namespace {

Tokens T(std::string_view s) { return split_tokens(s); }

TEST(SentenceBleuSmoothed, IdentityScoresOne) {
  EXPECT_EQ(sentence_bleu_smoothed(T("a b c d e"), T("a b c d e")), 1.0);
  // Short sentences have no 3- or 4-grams on either side; those orders do not count.
  EXPECT_EQ(sentence_bleu_smoothed(T("a"), T("a")), 1.0);
  EXPECT_EQ(sentence_bleu_smoothed(T("a b c"), T("a b c")), 1.0);
}

TEST(SentenceBleuSmoothed, DisjointFlooredValue) {
  // exp(1/4 (log(.01/4) + log(.01/3) + log(.01/2) + log(.01/1))), evaluated
  // independently in Python: 0.004518010018.
  const double v = sentence_bleu_smoothed(T("a b c d"), T("e f g h"));
  EXPECT_NEAR(v, 0.004518010018, 1e-12);
  EXPECT_NEAR(std::round(v * 1e4) / 1e4, 0.0045, 1e-12);
}

TEST(SentenceBleuSmoothed, ShortHypothesisFlooredValue) {
  // p1 = p2 = 1, p3 = p4 = 0.01, BP = e^-1: 0.036787944117.
  const double v = sentence_bleu_smoothed(T("a b"), T("a b c d"));
  EXPECT_NEAR(v, 0.036787944117, 1e-12);
  EXPECT_NEAR(std::round(v * 1e4) / 1e4, 0.0368, 1e-12);
}

TEST(SentenceBleuSmoothed, EdgeCases) {
  EXPECT_EQ(sentence_bleu_smoothed(T(""), T("a b")), 0.0);
  EXPECT_THROW(sentence_bleu_smoothed(T("a b"), T("")), Error);
}

TEST(SentenceBleuSmoothed, PermutationSensitive) {
  const Tokens ref = T("the quick brown fox jumps");
  Tokens perm = ref;
  std::reverse(perm.begin(), perm.end());
  EXPECT_LT(sentence_bleu_smoothed(perm, ref), 1.0);
  EXPECT_LT(sentence_bleu_smoothed(T("b a"), T("a b")), 1.0);
}

TEST(SentenceBleuSmoothed, MatchesBruteForceOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const Tokens hyp = testing::random_sentence(rng, 0, 9, 5);
    const Tokens ref = testing::random_sentence(rng, 1, 9, 5);
    const double got = sentence_bleu_smoothed(hyp, ref);
    const long double want = testing::brute_bleu(testing::brute_counts(hyp, ref), true);
    EXPECT_NEAR(got, static_cast<double>(want), 1e-10) << join_tokens(hyp) << " | " << join_tokens(ref);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);
  }
}

TEST(CorpusBleu, IdentityCorpusIsExactlyOne) {
  std::mt19937_64 rng(22);
  std::vector<Tokens> refs;
  for (int i = 0; i < 20; ++i) refs.push_back(testing::random_sentence(rng, 1, 12, 30));
  EXPECT_EQ(corpus_bleu(refs, refs), 1.0);
}

TEST(CorpusBleu, SinglePairEqualsUnsmoothedSentence) {
  const Tokens hyp = T("the cat sat on the mat");
  const Tokens ref = T("the cat sat on a mat");
  const std::vector<std::pair<Tokens, Tokens>> one = {{hyp, ref}};
  EXPECT_EQ(corpus_bleu(one), sentence_bleu(hyp, ref));
}

TEST(CorpusBleu, TwoPairHandCountedCorpus) {
  // Aggregate counts from an independent Python n-gram counter: 0.584289629379.
  const std::vector<std::pair<Tokens, Tokens>> pairs = {
      {T("the cat sat on the mat"), T("the cat sat on a mat")},
      {T("a dog ran in the park today"), T("the dog ran in the park")}};
  EXPECT_NEAR(corpus_bleu(pairs), 0.584289629379, 1e-12);
}

TEST(CorpusBleu, ZeroAggregatePrecisionGivesZero) {
  const std::vector<std::pair<Tokens, Tokens>> pairs = {{T("a b c"), T("a c b d e")}};
  EXPECT_EQ(corpus_bleu(pairs), 0.0);
}

TEST(CorpusBleu, Errors) {
  EXPECT_THROW(corpus_bleu(std::span<const std::pair<Tokens, Tokens>>{}), Error);
  const std::vector<Tokens> one = {T("a")};
  const std::vector<Tokens> two = {T("a"), T("b")};
  EXPECT_THROW(corpus_bleu(one, two), Error);
}

TEST(CorpusBleu, OrderInvariantAndMatchesOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Tokens> hyps, refs;
    const int n = 1 + trial % 8;
    for (int i = 0; i < n; ++i) {
      refs.push_back(testing::random_sentence(rng, 1, 10, 6));
      hyps.push_back(testing::random_sentence(rng, 1, 10, 6));
    }
    const double got = corpus_bleu(hyps, refs);
    EXPECT_NEAR(got, static_cast<double>(testing::brute_corpus_bleu(hyps, refs)), 1e-10);

    std::vector<std::size_t> perm(hyps.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Tokens> h2, r2;
    for (std::size_t i : perm) {
      h2.push_back(hyps[i]);
      r2.push_back(refs[i]);
    }
    EXPECT_EQ(corpus_bleu(h2, r2), got);
  }
}

TEST(ZeroOneLoss, Cases) {
  EXPECT_EQ(zero_one_loss(T("a b"), T("a b")), 0.0);
  EXPECT_EQ(zero_one_loss(T("a b"), T("a c")), 1.0);
  EXPECT_EQ(zero_one_loss(T(""), T("a")), 1.0);
}

TEST(SentenceLoss, RangeAndIdentity) {
  std::mt19937_64 rng(24);
  for (const char* name : {"bleu", "zero-one"}) {
    const auto loss = make_loss(name);
    for (int trial = 0; trial < 200; ++trial) {
      const Tokens hyp = testing::random_sentence(rng, 0, 8, 4);
      const Tokens ref = testing::random_sentence(rng, 1, 8, 4);
      const double v = loss->evaluate(hyp, ref);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      EXPECT_EQ(loss->evaluate(ref, ref), 0.0) << name << ": " << join_tokens(ref);
    }
  }
  EXPECT_THROW(make_loss("ter"), Error);
}

TEST(NGramStats, CountsAreClipped) {
  const NGramStats s = ngram_stats(T("the the the the"), T("the cat the"));
  EXPECT_EQ(s.matches[0], 2u);
  EXPECT_EQ(s.hyp_totals[0], 4u);
  EXPECT_EQ(s.hyp_totals[3], 1u);
  EXPECT_EQ(s.ref_totals[3], 0u);
  for (std::size_t n = 0; n < kBleuOrder; ++n) EXPECT_LE(s.matches[n], s.hyp_totals[n]);
}

}  // namespace
}  // namespace banditrank
