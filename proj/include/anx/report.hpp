#ifndef ANX_REPORT_HPP
#define ANX_REPORT_HPP

// CSV and JSON renderings of analysis results. The layouts are frozen in
// docs/format.md and covered by golden-file tests; change both together.
//
// Every report carries the scoring variant, thresholds, tense precedence and
// tool version. Scores in CSV are fixed-point with 6 decimals; empty bins
// leave score cells blank (CSV) or null (JSON).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "anx/lexicon.hpp"
#include "anx/pipeline.hpp"
#include "anx/scoring.hpp"
#include "anx/slicer.hpp"
#include "anx/stats.hpp"
#include "anx/strings.hpp"
#include "anx/synth.hpp"
#include "anx/version.hpp"
#include "json.hpp"

namespace anx {

enum class ReportFormat { Csv, Json };

inline std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  return std::nullopt;
}

inline std::string_view extension(ReportFormat f) { return f == ReportFormat::Csv ? "csv" : "json"; }

inline constexpr std::string_view kMicroDefinition =
    "100*(n_anx-n_calm)/n_tokens over pooled token counts";
inline constexpr std::string_view kMacroDefinition = "mean of per-post scores";

struct ReportContext {
  Thresholds thresholds;
  double alpha = 0.05;
};

namespace report_detail {

using ojson = nlohmann::ordered_json;

inline ojson optional_number(const std::optional<double>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

inline std::string csv_score(const std::optional<double>& v) {
  return v ? format_fixed(*v, 6) : std::string();
}

inline std::string csv_percent(std::uint64_t part, std::uint64_t whole) {
  return whole == 0 ? std::string()
                    : format_fixed(100.0 * static_cast<double>(part) / static_cast<double>(whole), 6);
}

inline ojson percent_json(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return nullptr;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

inline ojson config_json(const ReportContext& ctx) {
  return {{"headline_score", "micro"},
          {"micro_score", kMicroDefinition},
          {"macro_score", kMacroDefinition},
          {"tau_anx", ctx.thresholds.anxiety},
          {"tau_calm", ctx.thresholds.calm},
          {"tense_precedence", kTensePrecedence},
          {"alpha", ctx.alpha}};
}

inline ojson input_json(const CorpusAnalysis& a) {
  ojson examples = ojson::array();
  for (const auto& e : a.skips.examples) {
    examples.push_back({{"line", e.line}, {"reason", to_string(e.reason)}, {"detail", e.detail}});
  }
  return {{"records", a.records},
          {"posts", a.posts},
          {"scored_posts", a.all.n_posts()},
          {"skipped",
           {{"malformed", a.skips.malformed},
            {"bad_timezone", a.skips.bad_timezone},
            {"empty_text", a.skips.empty_text}}},
          {"skip_examples", examples}};
}

inline void bin_fields(ojson& row, const BinAggregate& b) {
  row["n_posts"] = b.n_posts();
  row["n_tokens"] = b.n_tokens();
  row["n_anx"] = b.n_anx();
  row["n_calm"] = b.n_calm();
  row["micro_score"] = optional_number(b.micro_score());
  row["macro_score"] = optional_number(b.macro_score());
}

/// n_tokens,n_anx,n_calm,micro_score,macro_score
inline std::string counts_csv(const BinAggregate& b) {
  return std::to_string(b.n_tokens()) + ',' + std::to_string(b.n_anx()) + ',' +
         std::to_string(b.n_calm()) + ',' + csv_score(b.micro_score()) + ',' +
         csv_score(b.macro_score());
}

inline std::string bin_csv(const BinAggregate& b) {
  return std::to_string(b.n_posts()) + ',' + counts_csv(b);
}

inline std::string csv_preamble(std::string_view report, const CorpusAnalysis& a,
                                const ReportContext& ctx) {
  std::ostringstream os;
  os << "# tool: " << kToolName << ' ' << kVersion << '\n'
     << "# report: " << report << '\n'
     << "# headline_score: micro = " << kMicroDefinition << '\n'
     << "# macro_score: " << kMacroDefinition << '\n'
     << "# tau_anx: " << format_shortest(ctx.thresholds.anxiety)
     << "; tau_calm: " << format_shortest(ctx.thresholds.calm) << '\n'
     << "# tense_precedence: " << kTensePrecedence << '\n'
     << "# records: " << a.records << "; posts: " << a.posts
     << "; scored_posts: " << a.all.n_posts() << '\n'
     << "# skipped: malformed " << a.skips.malformed << "; bad_timezone " << a.skips.bad_timezone
     << "; empty_text " << a.skips.empty_text << '\n';
  return os.str();
}

inline ojson envelope(std::string_view report, const CorpusAnalysis& a, const ReportContext& ctx) {
  return {{"tool", kToolName},
          {"version", kVersion},
          {"report", report},
          {"config", config_json(ctx)},
          {"input", input_json(a)}};
}

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace report_detail

inline std::string render_hour_report(const CorpusAnalysis& a, const ReportContext& ctx,
                                      ReportFormat fmt) {
  using namespace report_detail;
  if (fmt == ReportFormat::Csv) {
    std::string out = csv_preamble("hour", a, ctx);
    out += "hour,n_posts,n_tokens,n_anx,n_calm,micro_score,macro_score,empty\n";
    for (std::size_t h = 0; h < kHours; ++h) {
      out += std::to_string(h) + ',' + bin_csv(a.hour[h]) + ',' + (a.hour[h].empty() ? "1" : "0") +
             '\n';
    }
    out += "all," + bin_csv(a.all) + ',' + (a.all.empty() ? "1" : "0") + '\n';
    return out;
  }
  ojson j = envelope("hour", a, ctx);
  ojson rows = ojson::array();
  for (std::size_t h = 0; h < kHours; ++h) {
    ojson row = {{"hour", h}};
    bin_fields(row, a.hour[h]);
    row["empty"] = a.hour[h].empty();
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  ojson overall = ojson::object();
  bin_fields(overall, a.all);
  j["overall"] = std::move(overall);
  return dump(j);
}

inline std::string render_weekday_report(const CorpusAnalysis& a, const ReportContext& ctx,
                                         ReportFormat fmt) {
  using namespace report_detail;
  if (fmt == ReportFormat::Csv) {
    std::string out = csv_preamble("weekday", a, ctx);
    out += "weekday,name,n_posts,n_tokens,n_anx,n_calm,micro_score,macro_score,empty\n";
    for (std::size_t d = 0; d < kWeekdays; ++d) {
      out += std::to_string(d) + ',' + std::string(kWeekdayNames[d]) + ',' + bin_csv(a.weekday[d]) +
             ',' + (a.weekday[d].empty() ? "1" : "0") + '\n';
    }
    out += "all,," + bin_csv(a.all) + ',' + (a.all.empty() ? "1" : "0") + '\n';
    return out;
  }
  ojson j = envelope("weekday", a, ctx);
  ojson rows = ojson::array();
  for (std::size_t d = 0; d < kWeekdays; ++d) {
    ojson row = {{"weekday", d}, {"name", kWeekdayNames[d]}};
    bin_fields(row, a.weekday[d]);
    row["empty"] = a.weekday[d].empty();
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  ojson overall = ojson::object();
  bin_fields(overall, a.all);
  j["overall"] = std::move(overall);
  return dump(j);
}

/// Tense shares are over verb-bearing posts (past + present + future);
/// noverb is reported with its count only.
inline std::string render_tense_report(const CorpusAnalysis& a, const ReportContext& ctx,
                                       ReportFormat fmt) {
  using namespace report_detail;
  const auto& noverb = a.tense[static_cast<std::size_t>(TenseLabel::NoVerb)];
  const std::uint64_t verb_posts = a.all.n_posts() - noverb.n_posts();
  if (fmt == ReportFormat::Csv) {
    std::string out = csv_preamble("tense", a, ctx);
    out += "tense,n_posts,percent,n_tokens,n_anx,n_calm,micro_score,macro_score\n";
    for (auto t : kTenseLabels) {
      const auto& b = a.tense[static_cast<std::size_t>(t)];
      const std::string pct = t == TenseLabel::NoVerb ? "" : csv_percent(b.n_posts(), verb_posts);
      out += std::string(to_string(t)) + ',' + std::to_string(b.n_posts()) + ',' + pct + ',' +
             counts_csv(b) + '\n';
    }
    out += "all," + std::to_string(a.all.n_posts()) + ",," +
           counts_csv(a.all) + '\n';
    return out;
  }
  ojson j = envelope("tense", a, ctx);
  j["verb_bearing_posts"] = verb_posts;
  ojson rows = ojson::array();
  for (auto t : kTenseLabels) {
    const auto& b = a.tense[static_cast<std::size_t>(t)];
    ojson row = {{"tense", to_string(t)}};
    row["percent"] = t == TenseLabel::NoVerb ? ojson(nullptr) : percent_json(b.n_posts(), verb_posts);
    bin_fields(row, b);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  ojson overall = ojson::object();
  bin_fields(overall, a.all);
  j["overall"] = std::move(overall);
  return dump(j);
}

/// A post with k distinct pronouns counts in k rows. pct_of_pronoun_posts
/// uses the number of posts with at least one pronoun as denominator.
inline std::string render_pronoun_report(const CorpusAnalysis& a, const ReportContext& ctx,
                                         ReportFormat fmt) {
  using namespace report_detail;
  const std::uint64_t with_pronoun = a.any_pronoun.n_posts();
  const std::uint64_t all_posts = a.all.n_posts();
  if (fmt == ReportFormat::Csv) {
    std::string out = csv_preamble("pronoun", a, ctx);
    out += "pronoun,pct_of_pronoun_posts,pct_of_all_posts,n_posts,n_tokens,n_anx,n_calm,"
           "micro_score,macro_score\n";
    for (std::size_t k = 0; k < kPronounCount; ++k) {
      const auto& b = a.pronoun[k];
      out += std::string(kPronounForms[k]) + ',' + csv_percent(b.n_posts(), with_pronoun) + ',' +
             csv_percent(b.n_posts(), all_posts) + ',' + bin_csv(b) + '\n';
    }
    out += "pronoun:any,," + csv_percent(with_pronoun, all_posts) + ',' + bin_csv(a.any_pronoun) +
           '\n';
    out += "all,," + csv_percent(all_posts, all_posts) + ',' + bin_csv(a.all) + '\n';
    return out;
  }
  ojson j = envelope("pronoun", a, ctx);
  ojson rows = ojson::array();
  for (std::size_t k = 0; k < kPronounCount; ++k) {
    const auto& b = a.pronoun[k];
    ojson row = {{"pronoun", kPronounForms[k]},
                 {"pct_of_pronoun_posts", percent_json(b.n_posts(), with_pronoun)},
                 {"pct_of_all_posts", percent_json(b.n_posts(), all_posts)}};
    bin_fields(row, b);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  ojson any = {{"pct_of_all_posts", percent_json(with_pronoun, all_posts)}};
  bin_fields(any, a.any_pronoun);
  ojson overall = ojson::object();
  bin_fields(overall, a.all);
  j["baselines"] = {{"all_posts", std::move(overall)}, {"pronoun_posts", std::move(any)}};
  return dump(j);
}

struct Comparison {
  SliceKey a;
  SliceKey b;
  SampleSummary summary_a;
  SampleSummary summary_b;
  TTestResult test;
};

/// Welch test between the per-post score samples of two slices. Throws
/// InsufficientSampleError naming the undersized slice.
inline Comparison compare_slices(const CorpusAnalysis& analysis, const SliceKey& a,
                                 const SliceKey& b, double alpha) {
  const auto sa = analysis.slice(a).post_scores();
  const auto sb = analysis.slice(b).post_scores();
  for (const auto& [key, sample] : {std::pair{a, sa}, std::pair{b, sb}}) {
    if (sample.size() < 2) {
      throw InsufficientSampleError("slice " + to_string(key) + " has " +
                                    std::to_string(sample.size()) +
                                    " scored posts; at least 2 are needed");
    }
  }
  return {a, b, summarize(sa), summarize(sb), welch_t(sa, sb, alpha)};
}

namespace report_detail {

inline std::string format_t(double t) {
  if (std::isinf(t)) return t > 0 ? "+inf" : "-inf";
  return format_shortest(t);
}

inline ojson t_json(double t) { return std::isinf(t) ? ojson(format_t(t)) : ojson(t); }

}  // namespace report_detail

inline std::string render_comparison(const Comparison& c, const CorpusAnalysis& a,
                                     const ReportContext& ctx, ReportFormat fmt) {
  using namespace report_detail;
  if (fmt == ReportFormat::Csv) {
    std::string out = csv_preamble("compare", a, ctx);
    out += "# test: welch two-sided on per-post scores\n";
    out += "slice_a,slice_b,n_a,n_b,mean_a,mean_b,t,df,p,alpha,significant\n";
    out += to_string(c.a) + ',' + to_string(c.b) + ',' + std::to_string(c.summary_a.n) + ',' +
           std::to_string(c.summary_b.n) + ',' + format_shortest(c.summary_a.mean) + ',' +
           format_shortest(c.summary_b.mean) + ',' + format_t(c.test.t) + ',' +
           format_shortest(c.test.df) + ',' + format_shortest(c.test.p) + ',' +
           format_shortest(ctx.alpha) + ',' + (c.test.significant ? "1" : "0") + '\n';
    return out;
  }
  ojson j = envelope("compare", a, ctx);
  j["test"] = "welch two-sided on per-post scores";
  j["slice_a"] = {{"slice", to_string(c.a)}, {"n", c.summary_a.n}, {"mean", c.summary_a.mean}};
  j["slice_b"] = {{"slice", to_string(c.b)}, {"n", c.summary_b.n}, {"mean", c.summary_b.mean}};
  j["t"] = t_json(c.test.t);
  j["df"] = c.test.df;
  j["p"] = c.test.p;
  j["significant"] = c.test.significant;
  return dump(j);
}

inline std::string render_arc_report(const ArcReport& r, const ReportContext& ctx) {
  using report_detail::ojson;
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < r.bins.size(); ++i) {
    rows.push_back({{"bin", r.bins[i]},
                    {"planted", r.planted[i]},
                    {"recovered", r.recovered[i]},
                    {"n_posts", r.posts[i]}});
  }
  ojson j = {{"tool", kToolName},
             {"version", kVersion},
             {"report", "arc"},
             {"config", report_detail::config_json(ctx)},
             {"bin_kind", to_string(r.kind)},
             {"rows", std::move(rows)},
             {"pearson_r", report_detail::optional_number(r.pearson_r)},
             {"spearman_r", report_detail::optional_number(r.spearman_r)}};
  return report_detail::dump(j);
}

inline std::string render_lexicon_stats(const Lexicon& lex, ReportFormat fmt) {
  const auto s = lex.stats();
  if (fmt == ReportFormat::Csv) {
    return "# tool: " + std::string(kToolName) + ' ' + std::string(kVersion) +
           "\n# report: lexicon\n# tau_anx: " + format_shortest(lex.thresholds().anxiety) +
           "; tau_calm: " + format_shortest(lex.thresholds().calm) +
           "\ntotal,anxiety,calm,neutral,anxiety_fraction,calm_fraction\n" +
           std::to_string(s.total) + ',' + std::to_string(s.anxiety) + ',' +
           std::to_string(s.calm) + ',' + std::to_string(s.neutral) + ',' +
           format_fixed(s.anxiety_fraction(), 6) + ',' + format_fixed(s.calm_fraction(), 6) + '\n';
  }
  report_detail::ojson j = {{"tool", kToolName},
                            {"version", kVersion},
                            {"report", "lexicon"},
                            {"tau_anx", lex.thresholds().anxiety},
                            {"tau_calm", lex.thresholds().calm},
                            {"total", s.total},
                            {"anxiety", s.anxiety},
                            {"calm", s.calm},
                            {"neutral", s.neutral},
                            {"anxiety_fraction", s.anxiety_fraction()},
                            {"calm_fraction", s.calm_fraction()}};
  return report_detail::dump(j);
}

}  // namespace anx

#endif  // ANX_REPORT_HPP
