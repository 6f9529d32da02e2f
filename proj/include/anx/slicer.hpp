#ifndef ANX_SLICER_HPP
#define ANX_SLICER_HPP

// Assignment of posts to analysis slices: tense label, pronoun bins, and the
// hour/weekday bins.
//
// Tense is rule based. A post is Past when it has a past-tense verb form;
// otherwise Future when it has a future signal word (or "next day/week/
// month/year") together with a present-tense verb; otherwise Present when it
// has a present-tense verb; otherwise NoVerb. Verb forms come from word
// tables shipped under data/verbs plus suffix rules.

#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

#include "anx/corpus.hpp"
#include "anx/error.hpp"
#include "anx/strings.hpp"
#include "anx/textproc.hpp"

namespace anx {

enum class TenseLabel : std::uint8_t { Past, Present, Future, NoVerb };

inline constexpr std::array<TenseLabel, 4> kTenseLabels = {TenseLabel::Past, TenseLabel::Present,
                                                            TenseLabel::Future, TenseLabel::NoVerb};

inline std::string_view to_string(TenseLabel t) {
  switch (t) {
    case TenseLabel::Past: return "past";
    case TenseLabel::Present: return "present";
    case TenseLabel::Future: return "future";
    case TenseLabel::NoVerb: return "noverb";
  }
  return "noverb";
}

inline std::optional<TenseLabel> parse_tense(std::string_view s) {
  for (auto t : kTenseLabels) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

/// Human-readable tense precedence; reports carry it verbatim.
inline constexpr std::string_view kTensePrecedence = "past>future>present";

enum class PronounKey : std::uint8_t { I, Me, You, He, Him, She, Her, We, They, Them };

inline constexpr std::size_t kPronounCount = 10;

inline constexpr std::array<std::string_view, kPronounCount> kPronounForms = {
    "i", "me", "you", "he", "him", "she", "her", "we", "they", "them"};

inline std::string_view to_string(PronounKey k) {
  return kPronounForms[static_cast<std::size_t>(k)];
}

inline std::optional<PronounKey> parse_pronoun(std::string_view s) {
  for (std::size_t i = 0; i < kPronounCount; ++i) {
    if (kPronounForms[i] == s) return static_cast<PronounKey>(i);
  }
  return std::nullopt;
}

/// Bit set over PronounKey.
class PronounSet {
 public:
  constexpr void insert(PronounKey k) noexcept { bits_ |= bit(k); }
  constexpr bool contains(PronounKey k) const noexcept { return (bits_ & bit(k)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto b = bits_; b != 0; b &= static_cast<std::uint16_t>(b - 1)) ++n;
    return n;
  }

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (std::size_t i = 0; i < kPronounCount; ++i) {
      if ((bits_ >> i) & 1u) f(static_cast<PronounKey>(i));
    }
  }

  friend constexpr bool operator==(PronounSet, PronounSet) = default;

 private:
  static constexpr std::uint16_t bit(PronounKey k) noexcept {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(k));
  }
  std::uint16_t bits_ = 0;
};

using WordSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

inline constexpr std::array<std::string_view, 10> kAuxiliariesPresent = {
    "is", "are", "am", "do", "does", "have", "has", "can", "may", "must"};
inline constexpr std::array<std::string_view, 6> kAuxiliariesPast = {"was", "were", "did",
                                                                     "had", "could", "might"};
inline constexpr std::array<std::string_view, 7> kFutureSignalWords = {
    "will", "won't", "shall", "expect", "believe", "hope", "tomorrow"};
/// Second words of the "next X" signal bigrams.
inline constexpr std::array<std::string_view, 4> kNextSignalNouns = {"day", "week", "month",
                                                                     "year"};

struct VerbTablePaths {
  std::filesystem::path irregular_past;
  std::filesystem::path irregular_base;
  std::filesystem::path ed_stoplist;

  static VerbTablePaths in_directory(const std::filesystem::path& dir) {
    return {dir / "irregular_past.txt", dir / "irregular_base.txt", dir / "ed_stoplist.txt"};
  }
};

/// Reads one word per line. Blank lines and lines starting with '#' are ignored.
inline WordSet read_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open word list " + path.string());
  WordSet out;
  std::string line;
  while (std::getline(in, line)) {
    auto w = trim_ascii(line);
    if (w.empty() || w.front() == '#') continue;
    out.insert(to_lower_ascii(w));
  }
  return out;
}

struct VerbTables {
  WordSet irregular_past;
  WordSet irregular_base;
  WordSet ed_stoplist;

  static VerbTables load(const VerbTablePaths& paths) {
    VerbTables t{read_word_list(paths.irregular_past), read_word_list(paths.irregular_base),
                 read_word_list(paths.ed_stoplist)};
    if (t.irregular_past.empty() || t.irregular_base.empty()) {
      throw DataError("verb tables must not be empty");
    }
    return t;
  }

  static VerbTables load_directory(const std::filesystem::path& dir) {
    return load(VerbTablePaths::in_directory(dir));
  }
};

namespace detail {

template <std::size_t N>
constexpr bool in_list(const std::array<std::string_view, N>& list, std::string_view w) noexcept {
  for (auto x : list) {
    if (x == w) return true;
  }
  return false;
}

inline bool is_past_form(std::string_view w, const VerbTables& t) {
  if (in_list(kAuxiliariesPast, w) || t.irregular_past.contains(w)) return true;
  return w.size() >= 4 && w.ends_with("ed") && !t.ed_stoplist.contains(w);
}

inline bool is_present_form(std::string_view w, const VerbTables& t) {
  if (in_list(kAuxiliariesPresent, w) || t.irregular_base.contains(w)) return true;
  if (w.size() >= 5 && w.ends_with("ing")) return true;
  if (w.size() >= 2 && w.ends_with('s')) {
    if (t.irregular_base.contains(w.substr(0, w.size() - 1))) return true;
    // -es only after sibilants and -o (watches, fixes, goes); "bees" is not "be".
    if (w.size() >= 3 && w.ends_with("es")) {
      const auto stem = w.substr(0, w.size() - 2);
      const bool sibilant = stem.ends_with('s') || stem.ends_with('x') || stem.ends_with('z') ||
                            stem.ends_with("ch") || stem.ends_with("sh") || stem.ends_with('o');
      if (sibilant && t.irregular_base.contains(stem)) return true;
    }
  }
  return false;
}

}  // namespace detail

inline bool detect_past_verb(std::span<const std::string> tokens, const VerbTables& tables) {
  for (const auto& w : tokens) {
    if (detail::is_past_form(w, tables)) return true;
  }
  return false;
}

inline bool detect_present_verb(std::span<const std::string> tokens, const VerbTables& tables) {
  for (const auto& w : tokens) {
    if (detail::is_present_form(w, tables)) return true;
  }
  return false;
}

/// True when a signal word or an adjacent "next day/week/month/year" pair occurs.
inline bool has_future_signal(std::span<const std::string> tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (detail::in_list(kFutureSignalWords, tokens[i])) return true;
    if (tokens[i] == "next" && i + 1 < tokens.size() &&
        detail::in_list(kNextSignalNouns, tokens[i + 1])) {
      return true;
    }
  }
  return false;
}

inline TenseLabel classify_tense(std::span<const std::string> tokens, const VerbTables& tables) {
  if (detect_past_verb(tokens, tables)) return TenseLabel::Past;
  const bool present = detect_present_verb(tokens, tables);
  if (!present) return TenseLabel::NoVerb;
  return has_future_signal(tokens) ? TenseLabel::Future : TenseLabel::Present;
}

inline PronounSet pronoun_keys(std::span<const std::string> tokens) {
  PronounSet out;
  for (const auto& w : tokens) {
    if (auto k = parse_pronoun(w)) out.insert(*k);
  }
  return out;
}

struct TimeKeys {
  int hour_bin = 0;
  int weekday_bin = 0;

  friend bool operator==(const TimeKeys&, const TimeKeys&) = default;
};

inline constexpr TimeKeys time_keys(const LocalTime& local) noexcept {
  return {local.hour, local.weekday};
}

inline constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};

/// Names one analysis slice: a single hour/weekday/tense/pronoun bin, all
/// scored posts, or all posts containing at least one pronoun.
struct SliceKey {
  enum class Kind : std::uint8_t { All, AnyPronoun, Hour, Weekday, Tense, Pronoun };
  Kind kind = Kind::All;
  int index = 0;

  friend bool operator==(const SliceKey&, const SliceKey&) = default;
};

/// Parses "all", "pronoun:any", "hour:0".."hour:23", "weekday:0".."weekday:6"
/// (or a weekday name / three-letter prefix), "tense:past|present|future|noverb",
/// "pronoun:<form>".
inline std::optional<SliceKey> parse_slice_key(std::string_view s) {
  using K = SliceKey::Kind;
  if (s == "all") return SliceKey{K::All, 0};
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const auto kind = s.substr(0, colon);
  const auto value = s.substr(colon + 1);
  const auto as_int = [&](int lo, int hi) -> std::optional<int> {
    int v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || v < lo || v > hi) {
      return std::nullopt;
    }
    return v;
  };
  if (kind == "hour") {
    if (auto v = as_int(0, 23)) return SliceKey{K::Hour, *v};
    return std::nullopt;
  }
  if (kind == "weekday") {
    if (auto v = as_int(0, 6)) return SliceKey{K::Weekday, *v};
    for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
      if (value == kWeekdayNames[i] || (value.size() == 3 && kWeekdayNames[i].starts_with(value))) {
        return SliceKey{K::Weekday, static_cast<int>(i)};
      }
    }
    return std::nullopt;
  }
  if (kind == "tense") {
    if (auto t = parse_tense(value)) return SliceKey{K::Tense, static_cast<int>(*t)};
    return std::nullopt;
  }
  if (kind == "pronoun") {
    if (value == "any") return SliceKey{K::AnyPronoun, 0};
    if (auto p = parse_pronoun(value)) return SliceKey{K::Pronoun, static_cast<int>(*p)};
    return std::nullopt;
  }
  return std::nullopt;
}

inline std::string to_string(const SliceKey& k) {
  using K = SliceKey::Kind;
  switch (k.kind) {
    case K::All: return "all";
    case K::AnyPronoun: return "pronoun:any";
    case K::Hour: return "hour:" + std::to_string(k.index);
    case K::Weekday: return "weekday:" + std::to_string(k.index);
    case K::Tense: return "tense:" + std::string(to_string(static_cast<TenseLabel>(k.index)));
    case K::Pronoun: return "pronoun:" + std::string(to_string(static_cast<PronounKey>(k.index)));
  }
  return "all";
}

}  // namespace anx

#endif  // ANX_SLICER_HPP
