#ifndef ANX_LEXICON_HPP
#define ANX_LEXICON_HPP

// Word-anxiety association lexicon: loading, classification and summary counts.
//
// File format is two tab-separated columns, `term<TAB>association`, with the
// association on the [-3, +3] scale (positive = anxiety, negative = calmness).
// A first line equal to `term<TAB>association` is treated as a header.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "anx/error.hpp"
#include "anx/strings.hpp"

namespace anx {

enum class TermClass { Anxiety, Calm, Neutral, Unknown };

inline std::string_view to_string(TermClass c) {
  switch (c) {
    case TermClass::Anxiety: return "anxiety";
    case TermClass::Calm: return "calm";
    case TermClass::Neutral: return "neutral";
    case TermClass::Unknown: return "unknown";
  }
  return "unknown";
}

inline constexpr double kMinAssociation = -3.0;
inline constexpr double kMaxAssociation = 3.0;

/// Cut-offs on the association scale. A term is anxiety-associated when its
/// score is >= anxiety, calm-associated when <= calm, neutral in between.
struct Thresholds {
  double anxiety = 1.0;
  double calm = -1.0;

  bool valid() const noexcept { return calm < 0.0 && 0.0 < anxiety; }

  TermClass classify(double association) const noexcept {
    if (association >= anxiety) return TermClass::Anxiety;
    if (association <= calm) return TermClass::Calm;
    return TermClass::Neutral;
  }

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct LexiconEntry {
  std::string term;
  double association = 0.0;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct LexiconStats {
  std::size_t total = 0;
  std::size_t anxiety = 0;
  std::size_t calm = 0;
  std::size_t neutral = 0;

  double anxiety_fraction() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(anxiety) / static_cast<double>(total);
  }
  double calm_fraction() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(calm) / static_cast<double>(total);
  }

  friend bool operator==(const LexiconStats&, const LexiconStats&) = default;
};

/// Immutable term -> association map. Safe to share between threads.
class Lexicon {
 public:
  Lexicon() = default;

  /// Throws DuplicateTermError, EmptyLexiconError or ConfigError (bad thresholds).
  Lexicon(std::vector<LexiconEntry> entries, Thresholds thresholds) : thresholds_(thresholds) {
    if (!thresholds_.valid()) {
      throw ConfigError("thresholds must satisfy tau_calm < 0 < tau_anx");
    }
    if (entries.empty()) throw EmptyLexiconError();
    map_.reserve(entries.size());
    for (auto& e : entries) {
      const TermClass cls = thresholds_.classify(e.association);
      auto [it, inserted] = map_.try_emplace(std::move(e.term), Slot{e.association, cls});
      if (!inserted) throw DuplicateTermError(it->first);
    }
  }

  const Thresholds& thresholds() const noexcept { return thresholds_; }
  std::size_t size() const noexcept { return map_.size(); }

  /// Unknown when the term is absent.
  TermClass classify(std::string_view term) const {
    auto it = map_.find(term);
    return it == map_.end() ? TermClass::Unknown : it->second.cls;
  }

  const double* association(std::string_view term) const {
    auto it = map_.find(term);
    return it == map_.end() ? nullptr : &it->second.association;
  }

  LexiconStats stats() const {
    LexiconStats s;
    s.total = map_.size();
    for (const auto& [term, slot] : map_) {
      switch (slot.cls) {
        case TermClass::Anxiety: ++s.anxiety; break;
        case TermClass::Calm: ++s.calm; break;
        default: ++s.neutral; break;
      }
    }
    return s;
  }

  /// Entries sorted by term.
  std::vector<LexiconEntry> entries() const {
    std::vector<LexiconEntry> out;
    out.reserve(map_.size());
    for (const auto& [term, slot] : map_) out.push_back({term, slot.association});
    std::sort(out.begin(), out.end(),
              [](const LexiconEntry& a, const LexiconEntry& b) { return a.term < b.term; });
    return out;
  }

  /// Terms of one class, sorted.
  std::vector<std::string> terms_of(TermClass cls) const {
    std::vector<std::string> out;
    for (const auto& [term, slot] : map_) {
      if (slot.cls == cls) out.push_back(term);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.thresholds_ == b.thresholds_ && a.entries() == b.entries();
  }

 private:
  struct Slot {
    double association;
    TermClass cls;
  };
  std::unordered_map<std::string, Slot, StringHash, std::equal_to<>> map_;
  Thresholds thresholds_;
};

namespace detail {

inline bool parse_association(std::string_view field, double& out) {
  field = trim_ascii(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace detail

/// Parses a lexicon from a TSV stream. Terms are lower-cased.
inline Lexicon load_lexicon(std::istream& in, Thresholds thresholds = {}) {
  if (!thresholds.valid()) {
    throw ConfigError("thresholds must satisfy tau_calm < 0 < tau_anx");
  }
  std::vector<LexiconEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim_ascii(view).empty()) continue;

    const auto tab = view.find('\t');
    if (tab == std::string_view::npos || view.find('\t', tab + 1) != std::string_view::npos) {
      throw LexiconParseError(line_no, "expected 2 tab-separated fields");
    }
    std::string term = to_lower_ascii(trim_ascii(view.substr(0, tab)));
    const std::string_view value = view.substr(tab + 1);

    if (line_no == 1 && term == "term" && to_lower_ascii(trim_ascii(value)) == "association") {
      continue;
    }
    if (term.empty()) throw LexiconParseError(line_no, "empty term");
    if (std::any_of(term.begin(), term.end(), [](char c) { return is_space_ascii(c); })) {
      throw LexiconParseError(line_no, "multi-word term '" + term + "'");
    }
    double association = 0.0;
    if (!detail::parse_association(value, association)) {
      throw LexiconParseError(line_no, "non-numeric association '" + std::string(value) + "'");
    }
    if (association < kMinAssociation || association > kMaxAssociation) {
      throw LexiconParseError(line_no, "association out of [-3, 3]");
    }
    entries.push_back({std::move(term), association});
  }
  if (in.bad()) throw IoError("failed reading lexicon stream");
  return Lexicon(std::move(entries), thresholds);
}

/// Writes the lexicon back in its file format (header line, terms sorted).
inline void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  out << "term\tassociation\n";
  for (const auto& e : lexicon.entries()) {
    out << e.term << '\t' << format_shortest(e.association) << '\n';
  }
}

}  // namespace anx

#endif  // ANX_LEXICON_HPP
