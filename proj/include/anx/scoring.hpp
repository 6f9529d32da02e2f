#ifndef ANX_SCORING_HPP
#define ANX_SCORING_HPP

// Anxiety score of posts and bins, and the mergeable per-bin accumulator.
//
//   score = 100 * (n_anx - n_calm) / n_tokens
//
// Unknown and neutral tokens count in n_tokens only. A bin reports two
// scores: micro (pooled token counts, the headline number) and macro (mean
// of per-post scores).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anx/lexicon.hpp"

namespace anx {

struct PostScore {
  std::uint64_t n_tokens = 0;
  std::uint64_t n_anx = 0;
  std::uint64_t n_calm = 0;
  double score = 0.0;

  friend bool operator==(const PostScore&, const PostScore&) = default;
};

inline double anxiety_score(std::uint64_t n_anx, std::uint64_t n_calm, std::uint64_t n_tokens) {
  return 100.0 * (static_cast<double>(n_anx) - static_cast<double>(n_calm)) /
         static_cast<double>(n_tokens);
}

/// nullopt for an empty token sequence (the score is undefined).
inline std::optional<PostScore> score_post(std::span<const std::string> tokens,
                                           const Lexicon& lexicon) {
  if (tokens.empty()) return std::nullopt;
  PostScore ps;
  ps.n_tokens = tokens.size();
  for (const auto& t : tokens) {
    switch (lexicon.classify(t)) {
      case TermClass::Anxiety: ++ps.n_anx; break;
      case TermClass::Calm: ++ps.n_calm; break;
      default: break;
    }
  }
  ps.score = anxiety_score(ps.n_anx, ps.n_calm, ps.n_tokens);
  return ps;
}

inline constexpr std::size_t kDefaultReservoirCap = 5'000'000;

/// Uniform fixed-capacity sample of a stream of post scores (Algorithm R),
/// with a deterministic generator so identical update/merge sequences give
/// identical samples.
class ScoreReservoir {
 public:
  explicit ScoreReservoir(std::size_t cap = kDefaultReservoirCap) : cap_(cap == 0 ? 1 : cap) {}

  void add(double v) {
    ++seen_;
    if (values_.size() < cap_) {
      values_.push_back(v);
      return;
    }
    const std::uint64_t j = next_below(seen_);
    if (j < cap_) values_[j] = v;
  }

  /// Appends `other` when both fit; otherwise draws a uniform subsample of
  /// the union, taking each slot from either side in proportion to the
  /// number of scores it still represents.
  void merge(const ScoreReservoir& other) {
    if (other.seen_ == 0) return;
    if (seen_ + other.seen_ <= cap_ && values_.size() + other.values_.size() <= cap_) {
      values_.insert(values_.end(), other.values_.begin(), other.values_.end());
      seen_ += other.seen_;
      return;
    }
    std::vector<double> mine = values_;
    std::vector<double> theirs = other.values_;
    shuffle(mine);
    shuffle(theirs);
    std::uint64_t left_a = seen_;
    std::uint64_t left_b = other.seen_;
    std::size_t ia = 0;
    std::size_t ib = 0;
    std::vector<double> out;
    const std::size_t target = static_cast<std::size_t>(
        std::min<std::uint64_t>(cap_, static_cast<std::uint64_t>(mine.size() + theirs.size())));
    out.reserve(target);
    while (out.size() < target) {
      const bool from_a = ib >= theirs.size() ||
                          (ia < mine.size() && next_below(left_a + left_b) < left_a);
      if (from_a) {
        out.push_back(mine[ia++]);
        --left_a;
      } else {
        out.push_back(theirs[ib++]);
        --left_b;
      }
    }
    values_ = std::move(out);
    seen_ += other.seen_;
  }

  std::span<const double> values() const noexcept { return values_; }
  std::uint64_t seen() const noexcept { return seen_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  // splitmix64
  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_below(std::uint64_t n) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  void shuffle(std::vector<double>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next_below(i)]);
  }

  std::size_t cap_;
  std::uint64_t seen_ = 0;
  std::uint64_t state_ = 0x5EED5EED5EED5EEDULL;
  std::vector<double> values_;
};

/// Counters of one slice. Merging is associative and commutative in the
/// counters; the score sample is concatenated (or reservoir-merged past cap).
class BinAggregate {
 public:
  explicit BinAggregate(std::size_t reservoir_cap = kDefaultReservoirCap) : sample_(reservoir_cap) {}

  void update(const PostScore& ps) {
    ++n_posts_;
    n_tokens_ += ps.n_tokens;
    n_anx_ += ps.n_anx;
    n_calm_ += ps.n_calm;
    score_sum_ += ps.score;
    sample_.add(ps.score);
  }

  void merge(const BinAggregate& other) {
    n_posts_ += other.n_posts_;
    n_tokens_ += other.n_tokens_;
    n_anx_ += other.n_anx_;
    n_calm_ += other.n_calm_;
    score_sum_ += other.score_sum_;
    sample_.merge(other.sample_);
  }

  std::uint64_t n_posts() const noexcept { return n_posts_; }
  std::uint64_t n_tokens() const noexcept { return n_tokens_; }
  std::uint64_t n_anx() const noexcept { return n_anx_; }
  std::uint64_t n_calm() const noexcept { return n_calm_; }
  bool empty() const noexcept { return n_posts_ == 0; }

  /// Pooled-count score; nullopt for an empty bin.
  std::optional<double> micro_score() const {
    if (n_tokens_ == 0) return std::nullopt;
    return anxiety_score(n_anx_, n_calm_, n_tokens_);
  }

  /// Mean of the per-post scores over every post in the bin (a running sum,
  /// so it is unaffected by reservoir sampling); nullopt for an empty bin.
  std::optional<double> macro_score() const {
    if (n_posts_ == 0) return std::nullopt;
    return score_sum_ / static_cast<double>(n_posts_);
  }

  std::span<const double> post_scores() const noexcept { return sample_.values(); }

  bool counters_equal(const BinAggregate& o) const noexcept {
    return n_posts_ == o.n_posts_ && n_tokens_ == o.n_tokens_ && n_anx_ == o.n_anx_ &&
           n_calm_ == o.n_calm_;
  }

 private:
  std::uint64_t n_posts_ = 0;
  std::uint64_t n_tokens_ = 0;
  std::uint64_t n_anx_ = 0;
  std::uint64_t n_calm_ = 0;
  double score_sum_ = 0.0;
  ScoreReservoir sample_;
};

inline BinAggregate merge(BinAggregate a, const BinAggregate& b) {
  a.merge(b);
  return a;
}

}  // namespace anx

#endif  // ANX_SCORING_HPP
