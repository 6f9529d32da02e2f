#ifndef ANX_COMMANDS_HPP
#define ANX_COMMANDS_HPP

// The operations behind each CLI subcommand. Each writes its report file(s)
// under RunConfig::out_dir and returns the written paths.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anx/corpus.hpp"
#include "anx/error.hpp"
#include "anx/lexicon.hpp"
#include "anx/pipeline.hpp"
#include "anx/report.hpp"
#include "anx/slicer.hpp"
#include "anx/synth.hpp"

namespace anx {

struct RunConfig {
  std::filesystem::path lexicon;
  std::vector<std::filesystem::path> corpora;
  CorpusFormat format = CorpusFormat::Jsonl;
  Thresholds thresholds;
  VerbTablePaths verb_tables;
  double alpha = 0.05;
  std::filesystem::path out_dir = "out";
  ReportFormat out_format = ReportFormat::Csv;
  unsigned workers = 1;
  std::size_t reservoir_cap = kDefaultReservoirCap;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0, 1)");
    if (workers < 1) throw ConfigError("worker count must be >= 1");
    if (!thresholds.valid()) throw ConfigError("thresholds must satisfy tau_calm < 0 < tau_anx");
    if (reservoir_cap < 2) throw ConfigError("reservoir cap must be >= 2");
  }

  ReportContext report_context() const { return {thresholds, alpha}; }
};

enum class ReportKind { Hour, Weekday, Tense, Pronoun };

inline std::string_view to_string(ReportKind k) {
  switch (k) {
    case ReportKind::Hour: return "hour";
    case ReportKind::Weekday: return "weekday";
    case ReportKind::Tense: return "tense";
    case ReportKind::Pronoun: return "pronoun";
  }
  return "hour";
}

inline Lexicon load_lexicon_file(const std::filesystem::path& path, Thresholds thresholds) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  return load_lexicon(in, thresholds);
}

/// Scans every corpus in order and merges the results. Throws DataError when
/// nothing is scoreable.
inline CorpusAnalysis run_analysis(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.corpora.empty()) throw ConfigError("no corpus given");
  const Lexicon lexicon = load_lexicon_file(cfg.lexicon, cfg.thresholds);
  const VerbTables tables = VerbTables::load(cfg.verb_tables);
  const AnalysisOptions options{cfg.workers, 4096, cfg.reservoir_cap};

  CorpusAnalysis total(cfg.reservoir_cap);
  for (const auto& path : cfg.corpora) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus " + path.string());
    total.merge(analyze(in, cfg.format, lexicon, tables, options));
  }
  if (total.all.empty()) throw DataError("no scoreable posts in corpus");
  return total;
}

inline std::filesystem::path write_text_file(const std::filesystem::path& path,
                                             std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
  return path;
}

inline std::string render(ReportKind kind, const CorpusAnalysis& a, const ReportContext& ctx,
                          ReportFormat fmt) {
  switch (kind) {
    case ReportKind::Hour: return render_hour_report(a, ctx, fmt);
    case ReportKind::Weekday: return render_weekday_report(a, ctx, fmt);
    case ReportKind::Tense: return render_tense_report(a, ctx, fmt);
    case ReportKind::Pronoun: return render_pronoun_report(a, ctx, fmt);
  }
  return {};
}

inline std::filesystem::path report_path(const RunConfig& cfg, std::string_view name) {
  return cfg.out_dir / (std::string(name) + "." + std::string(extension(cfg.out_format)));
}

/// One scan, one report per requested kind.
inline std::vector<std::filesystem::path> cmd_analyze(const RunConfig& cfg,
                                                      const std::vector<ReportKind>& kinds) {
  const auto analysis = run_analysis(cfg);
  std::vector<std::filesystem::path> written;
  for (auto kind : kinds) {
    written.push_back(write_text_file(report_path(cfg, to_string(kind)),
                                      render(kind, analysis, cfg.report_context(), cfg.out_format)));
  }
  return written;
}

inline std::filesystem::path cmd_analyze_hour(const RunConfig& cfg) {
  return cmd_analyze(cfg, {ReportKind::Hour}).front();
}
inline std::filesystem::path cmd_analyze_weekday(const RunConfig& cfg) {
  return cmd_analyze(cfg, {ReportKind::Weekday}).front();
}
inline std::filesystem::path cmd_analyze_tense(const RunConfig& cfg) {
  return cmd_analyze(cfg, {ReportKind::Tense}).front();
}
inline std::filesystem::path cmd_analyze_pronoun(const RunConfig& cfg) {
  return cmd_analyze(cfg, {ReportKind::Pronoun}).front();
}

inline std::filesystem::path cmd_compare(const RunConfig& cfg, const SliceKey& a,
                                         const SliceKey& b) {
  const auto analysis = run_analysis(cfg);
  const auto cmp = compare_slices(analysis, a, b, cfg.alpha);
  return write_text_file(report_path(cfg, "compare"),
                         render_comparison(cmp, analysis, cfg.report_context(), cfg.out_format));
}

inline ArcSpec load_arc_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open arc spec " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("arc spec " + path.string() + " is not valid JSON");
  return arc_spec_from_json(j);
}

/// Writes the synthetic corpus to `corpus_out`.
inline std::filesystem::path cmd_synth(const RunConfig& cfg, const ArcSpec& spec,
                                       const std::filesystem::path& corpus_out) {
  cfg.validate();
  const Lexicon lexicon = load_lexicon_file(cfg.lexicon, cfg.thresholds);
  if (corpus_out.has_parent_path()) std::filesystem::create_directories(corpus_out.parent_path());
  std::ofstream out(corpus_out, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + corpus_out.string());
  generate(spec, lexicon, out);
  return corpus_out;
}

inline std::filesystem::path cmd_eval_arc(const RunConfig& cfg, const ArcSpec& spec) {
  spec.validate();
  const auto analysis = run_analysis(cfg);
  const auto report = arc_report_from(analysis, spec);
  return write_text_file(cfg.out_dir / "arc.json", render_arc_report(report, cfg.report_context()));
}

inline std::filesystem::path cmd_lexicon_stats(const RunConfig& cfg) {
  cfg.validate();
  const Lexicon lexicon = load_lexicon_file(cfg.lexicon, cfg.thresholds);
  return write_text_file(report_path(cfg, "lexicon"), render_lexicon_stats(lexicon, cfg.out_format));
}

}  // namespace anx

#endif  // ANX_COMMANDS_HPP
