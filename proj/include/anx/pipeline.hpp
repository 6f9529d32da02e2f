#ifndef ANX_PIPELINE_HPP
#define ANX_PIPELINE_HPP

// Corpus scan: parse -> tokenize -> score -> slice -> aggregate.
//
// Lines are read in fixed-size batches. Each batch is aggregated
// independently (possibly on another thread) and the batch results are
// merged in input order, so the output does not depend on the worker count.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "anx/corpus.hpp"
#include "anx/error.hpp"
#include "anx/lexicon.hpp"
#include "anx/scoring.hpp"
#include "anx/slicer.hpp"
#include "anx/textproc.hpp"

namespace anx {

inline constexpr std::size_t kHours = 24;
inline constexpr std::size_t kWeekdays = 7;

struct AnalysisOptions {
  unsigned workers = 1;
  std::size_t batch_size = 4096;
  std::size_t reservoir_cap = kDefaultReservoirCap;
};

struct SkipCounts {
  static constexpr std::size_t kMaxExamples = 10;

  std::uint64_t malformed = 0;
  std::uint64_t bad_timezone = 0;
  std::uint64_t empty_text = 0;
  /// The first few events in input order.
  std::vector<SkipEvent> examples;

  std::uint64_t total() const noexcept { return malformed + bad_timezone + empty_text; }

  void add(SkipEvent e) {
    switch (e.reason) {
      case SkipReason::Malformed: ++malformed; break;
      case SkipReason::BadTimezone: ++bad_timezone; break;
      case SkipReason::EmptyText: ++empty_text; break;
    }
    if (examples.size() < kMaxExamples) examples.push_back(std::move(e));
  }

  void merge(const SkipCounts& o) {
    malformed += o.malformed;
    bad_timezone += o.bad_timezone;
    empty_text += o.empty_text;
    for (const auto& e : o.examples) {
      if (examples.size() >= kMaxExamples) break;
      examples.push_back(e);
    }
  }
};

template <std::size_t N>
std::array<BinAggregate, N> make_bins(std::size_t cap) {
  return [&]<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<BinAggregate, N>{((void)I, BinAggregate(cap))...};
  }(std::make_index_sequence<N>{});
}

/// Every slice of a scanned corpus.
///
/// `records` counts non-blank input records; `posts` those that parsed.
/// records == posts + skips.malformed. Posts whose zone does not resolve are
/// scored and sliced by tense/pronoun but left out of the hour and weekday
/// bins; posts with no tokens are left out of everything.
struct CorpusAnalysis {
  explicit CorpusAnalysis(std::size_t cap = kDefaultReservoirCap)
      : hour(make_bins<kHours>(cap)),
        weekday(make_bins<kWeekdays>(cap)),
        tense(make_bins<4>(cap)),
        pronoun(make_bins<kPronounCount>(cap)),
        all(cap),
        any_pronoun(cap) {}

  std::array<BinAggregate, kHours> hour;
  std::array<BinAggregate, kWeekdays> weekday;
  std::array<BinAggregate, 4> tense;  // indexed by TenseLabel
  std::array<BinAggregate, kPronounCount> pronoun;
  BinAggregate all;
  BinAggregate any_pronoun;
  std::uint64_t records = 0;
  std::uint64_t posts = 0;
  SkipCounts skips;

  const BinAggregate& slice(const SliceKey& key) const {
    using K = SliceKey::Kind;
    switch (key.kind) {
      case K::All: return all;
      case K::AnyPronoun: return any_pronoun;
      case K::Hour: return hour.at(static_cast<std::size_t>(key.index));
      case K::Weekday: return weekday.at(static_cast<std::size_t>(key.index));
      case K::Tense: return tense.at(static_cast<std::size_t>(key.index));
      case K::Pronoun: return pronoun.at(static_cast<std::size_t>(key.index));
    }
    return all;
  }

  void merge(const CorpusAnalysis& o) {
    for (std::size_t i = 0; i < kHours; ++i) hour[i].merge(o.hour[i]);
    for (std::size_t i = 0; i < kWeekdays; ++i) weekday[i].merge(o.weekday[i]);
    for (std::size_t i = 0; i < tense.size(); ++i) tense[i].merge(o.tense[i]);
    for (std::size_t i = 0; i < kPronounCount; ++i) pronoun[i].merge(o.pronoun[i]);
    all.merge(o.all);
    any_pronoun.merge(o.any_pronoun);
    records += o.records;
    posts += o.posts;
    skips.merge(o.skips);
  }
};

/// Per-worker state for aggregating records into a CorpusAnalysis.
class PostAggregator {
 public:
  PostAggregator(const Lexicon& lexicon, const VerbTables& tables)
      : lexicon_(lexicon), tables_(tables) {}

  void add_record(const RawRecord& raw, CorpusFormat format, CorpusAnalysis& into) {
    ++into.records;
    auto parsed = parse_record(raw, format);
    if (auto* skip = std::get_if<SkipEvent>(&parsed)) {
      into.skips.add(std::move(*skip));
      return;
    }
    add_post(std::get<Post>(parsed), raw.line, into);
  }

  void add_post(const Post& post, std::size_t line, CorpusAnalysis& into) {
    ++into.posts;
    tokens_.clear();
    tokenize_into(post.text, tokens_);
    const auto ps = score_post(tokens_, lexicon_);
    if (!ps) {
      into.skips.add({line, SkipReason::EmptyText, "no tokens in post '" + post.id + "'"});
      return;
    }
    into.all.update(*ps);
    into.tense[static_cast<std::size_t>(classify_tense(tokens_, tables_))].update(*ps);

    const PronounSet keys = pronoun_keys(tokens_);
    keys.for_each([&](PronounKey k) { into.pronoun[static_cast<std::size_t>(k)].update(*ps); });
    if (!keys.empty()) into.any_pronoun.update(*ps);

    const auto local = zones_.localize(post);
    if (!local) {
      into.skips.add({line, SkipReason::BadTimezone, "unknown timezone '" + post.timezone + "'"});
      return;
    }
    const auto keys_t = time_keys(*local);
    into.hour[static_cast<std::size_t>(keys_t.hour_bin)].update(*ps);
    into.weekday[static_cast<std::size_t>(keys_t.weekday_bin)].update(*ps);
  }

 private:
  const Lexicon& lexicon_;
  const VerbTables& tables_;
  TimeZoneCache zones_;
  TokenSeq tokens_;
};

/// Scans a corpus stream. The result is identical for any worker count.
inline CorpusAnalysis analyze(std::istream& in, CorpusFormat format, const Lexicon& lexicon,
                              const VerbTables& tables, const AnalysisOptions& options = {}) {
  if (options.workers == 0) throw ConfigError("worker count must be >= 1");
  if (options.batch_size == 0) throw ConfigError("batch size must be >= 1");
  const std::size_t workers = options.workers;

  LineSource source(in, format);
  std::vector<PostAggregator> aggregators;
  aggregators.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) aggregators.emplace_back(lexicon, tables);

  CorpusAnalysis total(options.reservoir_cap);
  std::vector<std::vector<RawRecord>> batches(workers);
  bool exhausted = false;
  while (!exhausted) {
    std::size_t filled = 0;
    for (auto& batch : batches) {
      batch.clear();
      RawRecord raw;
      while (batch.size() < options.batch_size && source.next(raw)) batch.push_back(std::move(raw));
      if (batch.size() < options.batch_size) exhausted = true;
      if (batch.empty()) break;
      ++filled;
      if (exhausted) break;
    }
    if (filled == 0) break;

    std::vector<CorpusAnalysis> parts;
    parts.reserve(filled);
    for (std::size_t i = 0; i < filled; ++i) parts.emplace_back(options.reservoir_cap);

    const auto run = [&](std::size_t i) {
      for (const auto& raw : batches[i]) aggregators[i].add_record(raw, format, parts[i]);
    };
    {
      std::vector<std::jthread> threads;
      for (std::size_t i = 1; i < filled; ++i) threads.emplace_back(run, i);
      run(0);
    }
    for (const auto& part : parts) total.merge(part);
  }
  return total;
}

}  // namespace anx

#endif  // ANX_PIPELINE_HPP
