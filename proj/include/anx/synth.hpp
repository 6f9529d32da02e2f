#ifndef ANX_SYNTH_HPP
#define ANX_SYNTH_HPP

// Synthetic corpora with a planted anxiety arc, and arc-recovery evaluation.
//
// Random source: std::mt19937_64 (fully specified by the standard), with our
// own mapping to uniform integers and doubles so output is identical across
// standard libraries. Each bin uses its own generator seeded with
// splitmix64(seed + golden_gamma * (bin_index + 1)).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "anx/corpus.hpp"
#include "anx/error.hpp"
#include "anx/lexicon.hpp"
#include "anx/pipeline.hpp"
#include "anx/slicer.hpp"
#include "anx/stats.hpp"
#include "anx/textproc.hpp"
#include "json.hpp"

namespace anx {

enum class BinKind { Hour, Weekday };

struct ArcSpec {
  BinKind kind = BinKind::Hour;
  std::vector<int> bins;
  std::vector<double> p_anx;
  std::vector<double> p_calm;
  std::uint64_t posts_per_bin = 0;
  int min_tokens = 1;
  int max_tokens = 1;
  std::uint64_t seed = 0;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const {
    if (bins.empty()) throw ConfigError("arc spec: no bins");
    if (p_anx.size() != bins.size() || p_calm.size() != bins.size()) {
      throw ConfigError("arc spec: p_anx and p_calm must have one value per bin");
    }
    const int limit = kind == BinKind::Hour ? 23 : 6;
    std::set<int> seen;
    for (int b : bins) {
      if (b < 0 || b > limit) throw ConfigError("arc spec: bin " + std::to_string(b) + " out of range");
      if (!seen.insert(b).second) throw ConfigError("arc spec: duplicate bin " + std::to_string(b));
    }
    for (std::size_t i = 0; i < bins.size(); ++i) {
      if (!(p_anx[i] >= 0.0) || !(p_calm[i] >= 0.0) || p_anx[i] + p_calm[i] > 1.0) {
        throw ConfigError("arc spec: invalid probabilities for bin " + std::to_string(bins[i]));
      }
    }
    if (min_tokens < 1 || max_tokens < min_tokens) {
      throw ConfigError("arc spec: tokens_per_post must satisfy 1 <= min <= max");
    }
  }

  /// Expected score of each bin, 100 * (p_anx - p_calm).
  std::vector<double> planted() const {
    std::vector<double> out(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) out[i] = 100.0 * (p_anx[i] - p_calm[i]);
    return out;
  }
};

inline std::string_view to_string(BinKind k) { return k == BinKind::Hour ? "hour" : "weekday"; }

/// Builds an ArcSpec from its JSON form. p_anx / p_calm may be a single
/// number applied to every bin. `bins` defaults to every bin of the kind.
inline ArcSpec arc_spec_from_json(const nlohmann::json& j) {
  try {
    ArcSpec s;
    const std::string kind = j.value("bin_kind", std::string("hour"));
    if (kind == "hour") {
      s.kind = BinKind::Hour;
    } else if (kind == "weekday") {
      s.kind = BinKind::Weekday;
    } else {
      throw ConfigError("arc spec: bin_kind must be 'hour' or 'weekday'");
    }
    if (j.contains("bins")) {
      s.bins = j.at("bins").get<std::vector<int>>();
    } else {
      const int n = s.kind == BinKind::Hour ? 24 : 7;
      for (int b = 0; b < n; ++b) s.bins.push_back(b);
    }
    const auto per_bin = [&](const char* key) {
      const auto& v = j.at(key);
      if (v.is_number()) return std::vector<double>(s.bins.size(), v.get<double>());
      return v.get<std::vector<double>>();
    };
    s.p_anx = per_bin("p_anx");
    s.p_calm = per_bin("p_calm");
    s.posts_per_bin = j.at("posts_per_bin").get<std::uint64_t>();
    const auto tpp = j.at("tokens_per_post").get<std::vector<int>>();
    if (tpp.size() != 2) throw ConfigError("arc spec: tokens_per_post must be [min, max]");
    s.min_tokens = tpp[0];
    s.max_tokens = tpp[1];
    s.seed = j.value("seed", std::uint64_t{0});
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("arc spec: ") + e.what());
  }
}

inline nlohmann::ordered_json to_json(const ArcSpec& s) {
  return {{"bin_kind", to_string(s.kind)},
          {"bins", s.bins},
          {"p_anx", s.p_anx},
          {"p_calm", s.p_calm},
          {"posts_per_bin", s.posts_per_bin},
          {"tokens_per_post", {s.min_tokens, s.max_tokens}},
          {"seed", s.seed}};
}

/// Seeded generator with platform-independent uniform draws.
class SeededRandom {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t bin_seed(std::uint64_t seed, std::size_t bin_index) noexcept {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(bin_index) + 1));
}

/// 2021-03-01T00:00:00Z, a Monday. Generated timestamps fall in the week after it.
inline constexpr std::int64_t kSynthEpoch = 1614556800;

/// Lexicon terms usable as generated tokens, per class. Terms that the
/// tokenizer would alter are left out.
struct TermPools {
  std::vector<std::string> anxiety;
  std::vector<std::string> calm;
  std::vector<std::string> neutral;

  static TermPools from(const Lexicon& lexicon) {
    const auto usable = [](std::vector<std::string> terms) {
      std::erase_if(terms, [](const std::string& t) {
        const auto toks = tokenize(t);
        return toks.size() != 1 || toks.front() != t;
      });
      return terms;
    };
    TermPools p{usable(lexicon.terms_of(TermClass::Anxiety)),
                usable(lexicon.terms_of(TermClass::Calm)),
                usable(lexicon.terms_of(TermClass::Neutral))};
    if (p.anxiety.empty() || p.calm.empty() || p.neutral.empty()) {
      throw ConfigError("synthetic generation needs at least one anxiety, calm and neutral term");
    }
    return p;
  }
};

/// Writes posts_per_bin JSONL posts per bin, bins in spec order. Output is
/// a pure function of (spec, lexicon).
inline void generate(const ArcSpec& spec, const Lexicon& lexicon, std::ostream& out) {
  spec.validate();
  const TermPools pools = TermPools::from(lexicon);
  std::string text;
  for (std::size_t bi = 0; bi < spec.bins.size(); ++bi) {
    SeededRandom rng(bin_seed(spec.seed, bi));
    const int bin = spec.bins[bi];
    const double pa = spec.p_anx[bi];
    const double pc = spec.p_calm[bi];
    for (std::uint64_t i = 0; i < spec.posts_per_bin; ++i) {
      const auto n = rng.between(spec.min_tokens, spec.max_tokens);
      text.clear();
      for (std::int64_t k = 0; k < n; ++k) {
        const double u = rng.uniform();
        const auto& pool = u < pa ? pools.anxiety : (u < pa + pc ? pools.calm : pools.neutral);
        if (k > 0) text.push_back(' ');
        text += pool[rng.below(pool.size())];
      }
      std::int64_t ts = kSynthEpoch;
      if (spec.kind == BinKind::Hour) {
        const auto day = rng.between(0, 6);
        const auto second = rng.between(0, 3599);
        ts += day * 86400 + bin * 3600 + second;
      } else {
        ts += bin * 86400 + rng.between(0, 86399);
      }
      nlohmann::ordered_json rec = {
          {"id", "b" + std::to_string(bin) + "-" + std::to_string(i)},
          {"text", text},
          {"timestamp_utc", format_rfc3339(std::chrono::sys_seconds{std::chrono::seconds{ts}})},
          {"timezone", "UTC"}};
      out << rec.dump() << '\n';
    }
  }
  if (!out) throw IoError("failed writing synthetic corpus");
}

struct ArcReport {
  BinKind kind = BinKind::Hour;
  std::vector<int> bins;
  std::vector<double> planted;
  std::vector<double> recovered;
  std::vector<std::uint64_t> posts;
  /// nullopt when either arc is constant.
  std::optional<double> pearson_r;
  std::optional<double> spearman_r;
};

/// Recovered micro scores of the spec's bins from an analysis.
inline ArcReport arc_report_from(const CorpusAnalysis& analysis, const ArcSpec& spec) {
  ArcReport r;
  r.kind = spec.kind;
  r.bins = spec.bins;
  r.planted = spec.planted();
  for (int b : spec.bins) {
    const auto& agg = spec.kind == BinKind::Hour ? analysis.hour.at(static_cast<std::size_t>(b))
                                                 : analysis.weekday.at(static_cast<std::size_t>(b));
    if (agg.empty()) {
      throw DataError("no posts in " + std::string(to_string(spec.kind)) + " bin " +
                      std::to_string(b));
    }
    r.recovered.push_back(*agg.micro_score());
    r.posts.push_back(agg.n_posts());
  }
  if (r.bins.size() >= 2) {
    try {
      r.pearson_r = pearson(r.planted, r.recovered);
      r.spearman_r = spearman(r.planted, r.recovered);
    } catch (const UndefinedCorrelationError&) {
    }
  }
  return r;
}

/// Runs the full pipeline over `corpus` and compares recovered bin scores
/// with the planted ones.
inline ArcReport evaluate_arc(std::istream& corpus, const Lexicon& lexicon, const ArcSpec& spec,
                              const VerbTables& tables, const AnalysisOptions& options = {}) {
  spec.validate();
  const auto analysis = analyze(corpus, CorpusFormat::Jsonl, lexicon, tables, options);
  return arc_report_from(analysis, spec);
}

}  // namespace anx

#endif  // ANX_SYNTH_HPP
