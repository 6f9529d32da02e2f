#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "anx/scoring.hpp"
#include "test_support.hpp"

namespace anx {
namespace {

using testing::lexicon_from;
using Tokens = std::vector<std::string>;

const Lexicon& lex() {
  static const Lexicon l = lexicon_from("panic\t3\ndread\t2\ncalm\t-2\nrelax\t-2\nstorm\t0\n");
  return l;
}

TEST(ScorePost, Examples) {
  EXPECT_EQ(score_post(Tokens{"storm", "panic", "relax"}, lex())->score, 0.0);
  EXPECT_EQ(score_post(Tokens{"panic", "dread", "calm", "ok"}, lex()),
            (PostScore{4, 2, 1, 25.0}));
  EXPECT_EQ(score_post(Tokens{"calm", "calm", "calm"}, lex())->score, -100.0);
}

TEST(ScorePost, EmptyIsUndefined) { EXPECT_FALSE(score_post(Tokens{}, lex())); }

TEST(BinAggregate, SinglePost) {
  BinAggregate b;
  b.update({4, 2, 1, 25.0});
  EXPECT_EQ(b.n_posts(), 1u);
  EXPECT_EQ(b.micro_score(), 25.0);
  EXPECT_EQ(b.macro_score(), 25.0);
}

TEST(BinAggregate, PooledMicroScore) {
  BinAggregate b;
  b.update({4, 2, 1, 25.0});
  b.update({3, 0, 3, -100.0});
  EXPECT_DOUBLE_EQ(*b.micro_score(), 100.0 * (2 - 4) / 7);
  EXPECT_NEAR(*b.micro_score(), -28.571, 1e-3);
  EXPECT_DOUBLE_EQ(*b.macro_score(), -37.5);
}

TEST(BinAggregate, EmptyHasNoScores) {
  BinAggregate b;
  EXPECT_TRUE(b.empty());
  EXPECT_FALSE(b.micro_score());
  EXPECT_FALSE(b.macro_score());
}

TEST(BinAggregate, MergeIdentity) {
  BinAggregate e1;
  BinAggregate e2;
  const auto m = merge(e1, e2);
  EXPECT_TRUE(m.empty());
  EXPECT_TRUE(m.counters_equal(BinAggregate{}));

  BinAggregate b;
  b.update({5, 1, 2, -20.0});
  const auto with_empty = merge(b, BinAggregate{});
  EXPECT_TRUE(with_empty.counters_equal(b));
  EXPECT_EQ(with_empty.micro_score(), b.micro_score());
  EXPECT_EQ(with_empty.macro_score(), b.macro_score());
  ASSERT_EQ(with_empty.post_scores().size(), 1u);
}

TEST(BinAggregate, MergeOfSinglesEqualsSequentialUpdate) {
  const PostScore p{4, 2, 1, 25.0};
  const PostScore q{3, 0, 3, -100.0};
  BinAggregate a;
  a.update(p);
  BinAggregate b;
  b.update(q);
  BinAggregate both;
  both.update(p);
  both.update(q);
  const auto m = merge(a, b);
  EXPECT_TRUE(m.counters_equal(both));
  EXPECT_EQ(m.micro_score(), both.micro_score());
  EXPECT_TRUE(std::equal(m.post_scores().begin(), m.post_scores().end(),
                         both.post_scores().begin(), both.post_scores().end()));
}

std::vector<PostScore> random_posts(std::mt19937_64& rng, std::size_t n) {
  static const Tokens vocab = {"panic", "dread", "calm", "relax", "storm", "x", "y", "z"};
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> len(1, 25);
  std::vector<PostScore> out;
  for (std::size_t i = 0; i < n; ++i) {
    Tokens t;
    for (int k = len(rng); k > 0; --k) t.push_back(vocab[pick(rng)]);
    out.push_back(*score_post(t, lex()));
  }
  return out;
}

TEST(BinAggregate, ShardedAcrossEightWorkersEqualsSinglePass) {
  std::mt19937_64 rng(42);
  const auto posts = random_posts(rng, 1000);
  BinAggregate single;
  std::uint64_t toks = 0, anx = 0, calm = 0;
  for (const auto& p : posts) {
    single.update(p);
    toks += p.n_tokens;
    anx += p.n_anx;
    calm += p.n_calm;
  }
  std::vector<BinAggregate> shards(8);
  for (std::size_t i = 0; i < posts.size(); ++i) shards[i % 8].update(posts[i]);
  BinAggregate merged;
  for (const auto& s : shards) merged.merge(s);
  EXPECT_TRUE(merged.counters_equal(single));
  EXPECT_EQ(merged.n_tokens(), toks);
  EXPECT_EQ(merged.n_anx(), anx);
  EXPECT_EQ(merged.n_calm(), calm);
  EXPECT_EQ(merged.micro_score(), anxiety_score(anx, calm, toks));
  EXPECT_EQ(merged.post_scores().size(), posts.size());
}

TEST(BinAggregateProperties, OrderIndependenceAndBounds) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    auto posts = random_posts(rng, 60);
    BinAggregate ref;
    for (const auto& p : posts) ref.update(p);

    std::shuffle(posts.begin(), posts.end(), rng);
    // Random tree of merges over random-sized chunks.
    std::vector<BinAggregate> parts;
    std::uniform_int_distribution<std::size_t> chunk(1, 10);
    for (std::size_t i = 0; i < posts.size();) {
      BinAggregate b;
      for (std::size_t k = chunk(rng); k > 0 && i < posts.size(); --k) b.update(posts[i++]);
      parts.push_back(std::move(b));
    }
    while (parts.size() > 1) {
      std::uniform_int_distribution<std::size_t> at(0, parts.size() - 2);
      const auto j = at(rng);
      parts[j] = merge(parts[j + 1], parts[j]);
      parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    }
    ASSERT_TRUE(parts[0].counters_equal(ref));
    ASSERT_EQ(parts[0].micro_score(), ref.micro_score());
    ASSERT_LE(std::abs(*ref.micro_score()), 100.0);
    ASSERT_LE(std::abs(*ref.macro_score()), 100.0 + 1e-9);
    for (const auto& p : posts) {
      ASSERT_LE(p.n_anx + p.n_calm, p.n_tokens);
      ASSERT_LE(std::abs(p.score), 100.0);
      const auto d = static_cast<long long>(p.n_anx) - static_cast<long long>(p.n_calm);
      ASSERT_EQ(p.score > 0, d > 0);
      ASSERT_EQ(p.score < 0, d < 0);
    }
  }
}

TEST(BinAggregateProperties, UnionMicroScoreBetweenParts) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 500; ++iter) {
    BinAggregate a;
    BinAggregate b;
    for (const auto& p : random_posts(rng, 5)) a.update(p);
    for (const auto& p : random_posts(rng, 7)) b.update(p);
    const auto m = merge(a, b);
    const double lo = std::min(*a.micro_score(), *b.micro_score());
    const double hi = std::max(*a.micro_score(), *b.micro_score());
    ASSERT_GE(*m.micro_score(), lo - 1e-12);
    ASSERT_LE(*m.micro_score(), hi + 1e-12);
    ASSERT_EQ(*m.micro_score(),
              anxiety_score(a.n_anx() + b.n_anx(), a.n_calm() + b.n_calm(),
                            a.n_tokens() + b.n_tokens()));
  }
}

TEST(ScoreReservoir, KeepsEverythingUnderCap) {
  ScoreReservoir r(10);
  for (int i = 0; i < 10; ++i) r.add(i);
  EXPECT_EQ(r.values().size(), 10u);
  EXPECT_EQ(r.seen(), 10u);
}

TEST(ScoreReservoir, BoundedAndApproximatelyUniformPastCap) {
  // Mean of the retained values tracks the stream mean.
  ScoreReservoir r(1000);
  for (int i = 0; i < 100000; ++i) r.add(i % 2 == 0 ? 100.0 : -100.0);
  EXPECT_EQ(r.values().size(), 1000u);
  EXPECT_EQ(r.seen(), 100000u);
  double sum = 0;
  for (double v : r.values()) sum += v;
  EXPECT_NEAR(sum / 1000.0, 0.0, 15.0);  // 5 sd of a 1000-draw mean

  ScoreReservoir a(1000);
  ScoreReservoir b(1000);
  for (int i = 0; i < 3000; ++i) a.add(100.0);
  for (int i = 0; i < 1000; ++i) b.add(-100.0);
  a.merge(b);
  EXPECT_EQ(a.values().size(), 1000u);
  EXPECT_EQ(a.seen(), 4000u);
  const auto pos = std::count(a.values().begin(), a.values().end(), 100.0);
  EXPECT_NEAR(static_cast<double>(pos), 750.0, 70.0);
}

TEST(ScoreReservoir, Deterministic) {
  ScoreReservoir a(50);
  ScoreReservoir b(50);
  for (int i = 0; i < 5000; ++i) {
    a.add(i);
    b.add(i);
  }
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin(),
                         b.values().end()));
}

// Law of large numbers: pooled score over ~1e6 tokens drawn with known class
// probabilities lands within 0.5 of 100*(p_anx - p_calm).
TEST(ScoringProperties, MicroScoreUnbiasedAtOneMillionTokens) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p_anx = 0.2;
  const double p_calm = 0.1;
  BinAggregate bin;
  std::uint64_t total = 0;
  while (total < 1'000'000) {
    Tokens t;
    for (int k = 0; k < 20; ++k) {
      const double x = u(rng);
      t.push_back(x < p_anx ? "panic" : x < p_anx + p_calm ? "calm" : "storm");
    }
    bin.update(*score_post(t, lex()));
    total += t.size();
  }
  EXPECT_NEAR(*bin.micro_score(), 100.0 * (p_anx - p_calm), 0.5);
}

}  // namespace
}  // namespace anx
