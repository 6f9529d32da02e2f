// anxscope: command-line front end for the anx analysis library.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anx/commands.hpp"
#include "anx/version.hpp"

#ifndef ANX_DEFAULT_VERB_DIR
#define ANX_DEFAULT_VERB_DIR "data/verbs"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

struct CliOptions {
  std::string lexicon;
  std::vector<std::string> corpora;
  std::string format = "jsonl";
  double tau_anx = 1.0;
  double tau_calm = -1.0;
  double alpha = 0.05;
  unsigned workers = 1;
  std::string out = "out";
  std::string out_format = "csv";
  std::string verb_dir = ANX_DEFAULT_VERB_DIR;
  std::string irregular_past;
  std::string irregular_base;
  std::string ed_stoplist;
  std::size_t reservoir_cap = anx::kDefaultReservoirCap;

  std::string slice_a;
  std::string slice_b;
  std::string spec;
  std::optional<std::uint64_t> seed;
  std::string synth_output;

  anx::RunConfig to_config() const {
    anx::RunConfig cfg;
    cfg.lexicon = lexicon;
    for (const auto& c : corpora) cfg.corpora.emplace_back(c);
    auto fmt = anx::parse_corpus_format(format);
    if (!fmt) throw anx::ConfigError("--format must be jsonl or tsv");
    cfg.format = *fmt;
    cfg.thresholds = {tau_anx, tau_calm};
    cfg.alpha = alpha;
    cfg.workers = workers;
    cfg.out_dir = out;
    auto ofmt = anx::parse_report_format(out_format);
    if (!ofmt) throw anx::ConfigError("--out-format must be csv or json");
    cfg.out_format = *ofmt;
    cfg.verb_tables = anx::VerbTablePaths::in_directory(verb_dir);
    if (!irregular_past.empty()) cfg.verb_tables.irregular_past = irregular_past;
    if (!irregular_base.empty()) cfg.verb_tables.irregular_base = irregular_base;
    if (!ed_stoplist.empty()) cfg.verb_tables.ed_stoplist = ed_stoplist;
    cfg.reservoir_cap = reservoir_cap;
    cfg.validate();
    return cfg;
  }
};

void add_lexicon_options(CLI::App* sub, CliOptions& o) {
  sub->add_option("--lexicon", o.lexicon, "Word-anxiety lexicon (TSV: term, association)")
      ->envname("ANXSCOPE_LEXICON")
      ->required();
  sub->add_option("--tau-anx", o.tau_anx, "Association at or above which a term is anxiety")
      ->envname("ANXSCOPE_TAU_ANX")
      ->capture_default_str();
  sub->add_option("--tau-calm", o.tau_calm, "Association at or below which a term is calm")
      ->envname("ANXSCOPE_TAU_CALM")
      ->capture_default_str();
  sub->add_option("--out", o.out, "Output directory")->envname("ANXSCOPE_OUT")->capture_default_str();
  sub->add_option("--out-format", o.out_format, "Report format")
      ->envname("ANXSCOPE_OUT_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_corpus_options(CLI::App* sub, CliOptions& o) {
  add_lexicon_options(sub, o);
  sub->add_option("--corpus", o.corpora, "Corpus file(s); repeat or space-separate")
      ->envname("ANXSCOPE_CORPUS")
      ->required();
  sub->add_option("--format", o.format, "Corpus record format")
      ->envname("ANXSCOPE_FORMAT")
      ->check(CLI::IsMember({"jsonl", "tsv"}))
      ->capture_default_str();
  sub->add_option("--alpha", o.alpha, "Significance level")
      ->envname("ANXSCOPE_ALPHA")
      ->capture_default_str();
  sub->add_option("--workers", o.workers, "Worker threads")
      ->envname("ANXSCOPE_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--verb-tables", o.verb_dir, "Directory holding the three verb word lists")
      ->envname("ANXSCOPE_VERB_TABLES")
      ->capture_default_str();
  sub->add_option("--irregular-past", o.irregular_past, "Override the irregular past-form list");
  sub->add_option("--irregular-base", o.irregular_base, "Override the base-form list");
  sub->add_option("--ed-stoplist", o.ed_stoplist, "Override the non-verb -ed word list");
  sub->add_option("--reservoir-cap", o.reservoir_cap, "Per-bin cap on retained post scores")
      ->envname("ANXSCOPE_RESERVOIR_CAP")
      ->capture_default_str();
}

void print_written(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) std::cout << p.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-based anxiety analysis of timestamped posts", std::string(anx::kToolName)};
  app.set_version_flag("--version", std::string(anx::kVersion));
  app.require_subcommand(1);

  CliOptions o;
  auto* hour = app.add_subcommand("analyze-hour", "Anxiety scores per local hour (0-23)");
  auto* weekday = app.add_subcommand("analyze-weekday", "Anxiety scores per weekday (Monday first)");
  auto* tense = app.add_subcommand("analyze-tense", "Tense distribution and per-tense scores");
  auto* pronoun = app.add_subcommand("analyze-pronoun", "Per-pronoun shares and scores");
  auto* all = app.add_subcommand("analyze-all", "All four tables from a single scan");
  auto* compare = app.add_subcommand("compare", "Welch t-test between two slices");
  auto* synth = app.add_subcommand("synth", "Generate a corpus with a planted anxiety arc");
  auto* eval = app.add_subcommand("eval-arc", "Compare a corpus' recovered arc with its spec");
  auto* lexstats = app.add_subcommand("lexicon-stats", "Class counts of a lexicon");

  for (auto* sub : {hour, weekday, tense, pronoun, all, compare, eval}) add_corpus_options(sub, o);
  add_lexicon_options(synth, o);
  add_lexicon_options(lexstats, o);

  compare->add_option("--slice-a", o.slice_a, "e.g. hour:8, weekday:wed, tense:past, pronoun:i, all")
      ->required();
  compare->add_option("--slice-b", o.slice_b, "Second slice")->required();
  for (auto* sub : {synth, eval}) {
    sub->add_option("--spec", o.spec, "Arc spec JSON")->required()->check(CLI::ExistingFile);
  }
  synth->add_option("--seed", o.seed, "Override the spec's seed")->envname("ANXSCOPE_SEED");
  synth->add_option("--output", o.synth_output, "Corpus file (default: <out>/synth.jsonl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const anx::RunConfig cfg = o.to_config();
    if (hour->parsed()) {
      print_written({anx::cmd_analyze_hour(cfg)});
    } else if (weekday->parsed()) {
      print_written({anx::cmd_analyze_weekday(cfg)});
    } else if (tense->parsed()) {
      print_written({anx::cmd_analyze_tense(cfg)});
    } else if (pronoun->parsed()) {
      print_written({anx::cmd_analyze_pronoun(cfg)});
    } else if (all->parsed()) {
      print_written(anx::cmd_analyze(cfg, {anx::ReportKind::Hour, anx::ReportKind::Weekday,
                                           anx::ReportKind::Tense, anx::ReportKind::Pronoun}));
    } else if (compare->parsed()) {
      const auto a = anx::parse_slice_key(o.slice_a);
      const auto b = anx::parse_slice_key(o.slice_b);
      if (!a) throw anx::ConfigError("bad --slice-a '" + o.slice_a + "'");
      if (!b) throw anx::ConfigError("bad --slice-b '" + o.slice_b + "'");
      print_written({anx::cmd_compare(cfg, *a, *b)});
    } else if (synth->parsed()) {
      auto spec = anx::load_arc_spec(o.spec);
      if (o.seed) spec.seed = *o.seed;
      const std::filesystem::path target =
          o.synth_output.empty() ? cfg.out_dir / "synth.jsonl" : std::filesystem::path(o.synth_output);
      print_written({anx::cmd_synth(cfg, spec, target)});
    } else if (eval->parsed()) {
      print_written({anx::cmd_eval_arc(cfg, anx::load_arc_spec(o.spec))});
    } else if (lexstats->parsed()) {
      print_written({anx::cmd_lexicon_stats(cfg)});
    }
  } catch (const anx::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const anx::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
