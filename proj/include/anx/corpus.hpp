#ifndef ANX_CORPUS_HPP
#define ANX_CORPUS_HPP

// Streaming corpus ingestion (JSONL or TSV) and timestamp localization.
//
// Every non-blank line is one record. A record that fails to parse becomes a
// SkipEvent carrying its line number; the stream keeps going. Reading is
// single pass and holds one line at a time.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>

#include <absl/strings/string_view.h>
#include <absl/time/civil_time.h>
#include <absl/time/time.h>

#include "anx/error.hpp"
#include "anx/strings.hpp"
#include "json.hpp"

namespace anx {

enum class CorpusFormat { Jsonl, Tsv };

inline std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "jsonl") return CorpusFormat::Jsonl;
  if (s == "tsv") return CorpusFormat::Tsv;
  return std::nullopt;
}

struct Post {
  std::string id;
  std::string text;
  std::chrono::sys_seconds timestamp_utc{};
  std::string timezone;

  friend bool operator==(const Post&, const Post&) = default;
};

/// Civil local time of a post. weekday: 0 = Monday ... 6 = Sunday.
struct LocalTime {
  int hour = 0;
  int weekday = 0;

  friend bool operator==(const LocalTime&, const LocalTime&) = default;
};

enum class SkipReason { Malformed, BadTimezone, EmptyText };

inline std::string_view to_string(SkipReason r) {
  switch (r) {
    case SkipReason::Malformed: return "malformed";
    case SkipReason::BadTimezone: return "bad_timezone";
    case SkipReason::EmptyText: return "empty_text";
  }
  return "malformed";
}

struct SkipEvent {
  std::size_t line = 0;
  SkipReason reason = SkipReason::Malformed;
  std::string detail;
};

inline constexpr std::string_view kTsvHeader = "id\ttext\ttimestamp_utc\ttimezone";

/// Parses an RFC 3339 instant, truncated to whole seconds.
inline std::optional<std::chrono::sys_seconds> parse_rfc3339(std::string_view s) {
  absl::Time t;
  std::string err;
  if (s.empty() ||
      !absl::ParseTime(absl::RFC3339_full, absl::string_view(s.data(), s.size()), &t, &err)) {
    return std::nullopt;
  }
  return std::chrono::sys_seconds{std::chrono::seconds{absl::ToUnixSeconds(t)}};
}

inline std::string format_rfc3339(std::chrono::sys_seconds t) {
  return absl::FormatTime("%Y-%m-%d%ET%H:%M:%SZ", absl::FromUnixSeconds(t.time_since_epoch().count()),
                          absl::UTCTimeZone());
}

/// One line of input, as produced by LineSource.
struct RawRecord {
  std::size_t line = 0;
  std::string text;
};

using ParsedRecord = std::variant<Post, SkipEvent>;

namespace detail {

inline ParsedRecord make_post(std::size_t line, std::string id, std::string text,
                              std::string_view timestamp, std::string timezone) {
  if (id.empty()) return SkipEvent{line, SkipReason::Malformed, "empty id"};
  if (timezone.empty()) return SkipEvent{line, SkipReason::Malformed, "empty timezone"};
  auto ts = parse_rfc3339(timestamp);
  if (!ts) {
    return SkipEvent{line, SkipReason::Malformed, "bad timestamp '" + std::string(timestamp) + "'"};
  }
  return Post{std::move(id), std::move(text), *ts, std::move(timezone)};
}

inline ParsedRecord parse_jsonl(std::size_t line, std::string_view text) {
  auto obj = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    return SkipEvent{line, SkipReason::Malformed, "not a JSON object"};
  }
  static constexpr std::string_view keys[] = {"id", "text", "timestamp_utc", "timezone"};
  for (auto key : keys) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
      return SkipEvent{line, SkipReason::Malformed, "missing string field '" + std::string(key) + "'"};
    }
  }
  return make_post(line, obj["id"].get<std::string>(), obj["text"].get<std::string>(),
                   obj["timestamp_utc"].get_ref<const std::string&>(),
                   obj["timezone"].get<std::string>());
}

inline ParsedRecord parse_tsv(std::size_t line, std::string_view text) {
  const auto fields = split(text, '\t');
  if (fields.size() != 4) {
    return SkipEvent{line, SkipReason::Malformed,
                     "expected 4 tab-separated fields, got " + std::to_string(fields.size())};
  }
  return make_post(line, std::string(fields[0]), std::string(fields[1]), trim_ascii(fields[2]),
                   std::string(trim_ascii(fields[3])));
}

}  // namespace detail

inline ParsedRecord parse_record(const RawRecord& raw, CorpusFormat format) {
  return format == CorpusFormat::Jsonl ? detail::parse_jsonl(raw.line, raw.text)
                                       : detail::parse_tsv(raw.line, raw.text);
}

/// Pulls record lines from a stream: strips CR, drops blank lines and the
/// optional TSV header.
class LineSource {
 public:
  LineSource(std::istream& in, CorpusFormat format) : in_(in), format_(format) {}

  bool next(RawRecord& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim_ascii(line).empty()) continue;
      const bool first = !seen_content_;
      seen_content_ = true;
      if (first && format_ == CorpusFormat::Tsv && line == kTsvHeader) continue;
      out.line = line_no_;
      out.text = std::move(line);
      return true;
    }
    if (in_.bad()) throw IoError("failed reading corpus stream at line " + std::to_string(line_no_));
    return false;
  }

 private:
  std::istream& in_;
  CorpusFormat format_;
  std::size_t line_no_ = 0;
  bool seen_content_ = false;
};

/// Single-pass stream of posts. Malformed records are counted; the most
/// recent one is kept for reporting.
class CorpusReader {
 public:
  CorpusReader(std::istream& in, CorpusFormat format) : lines_(in, format), format_(format) {}

  std::optional<Post> next() {
    RawRecord raw;
    while (lines_.next(raw)) {
      ++records_;
      auto parsed = parse_record(raw, format_);
      if (auto* post = std::get_if<Post>(&parsed)) return std::move(*post);
      ++skipped_;
      last_skip_ = std::get<SkipEvent>(std::move(parsed));
    }
    return std::nullopt;
  }

  std::size_t records() const noexcept { return records_; }
  std::size_t skipped() const noexcept { return skipped_; }
  const std::optional<SkipEvent>& last_skip() const noexcept { return last_skip_; }

 private:
  LineSource lines_;
  CorpusFormat format_;
  std::size_t records_ = 0;
  std::size_t skipped_ = 0;
  std::optional<SkipEvent> last_skip_;
};

inline LocalTime local_time_in(std::chrono::sys_seconds t, const absl::TimeZone& tz) {
  const auto cs = absl::ToCivilSecond(absl::FromUnixSeconds(t.time_since_epoch().count()), tz);
  return LocalTime{cs.hour(), static_cast<int>(absl::GetWeekday(absl::CivilDay(cs)))};
}

/// Caches loaded zones. Not thread-safe: give each worker its own.
class TimeZoneCache {
 public:
  const absl::TimeZone* find(const std::string& name) {
    auto it = zones_.find(name);
    if (it == zones_.end()) {
      absl::TimeZone tz;
      std::optional<absl::TimeZone> slot;
      if (absl::LoadTimeZone(name, &tz)) slot = tz;
      it = zones_.emplace(name, slot).first;
    }
    return it->second ? &*it->second : nullptr;
  }

  std::optional<LocalTime> localize(const Post& post) {
    const auto* tz = find(post.timezone);
    if (tz == nullptr) return std::nullopt;
    return local_time_in(post.timestamp_utc, *tz);
  }

 private:
  std::unordered_map<std::string, std::optional<absl::TimeZone>> zones_;
};

/// Hour and weekday of the post in its own civil time; nullopt when the
/// zone name does not resolve.
inline std::optional<LocalTime> localize(const Post& post) {
  absl::TimeZone tz;
  if (!absl::LoadTimeZone(post.timezone, &tz)) return std::nullopt;
  return local_time_in(post.timestamp_utc, tz);
}

}  // namespace anx

#endif  // ANX_CORPUS_HPP
