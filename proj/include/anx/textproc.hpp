#ifndef ANX_TEXTPROC_HPP
#define ANX_TEXTPROC_HPP

// Post text -> token sequence.
//
// Rules, in order: ASCII lower-casing; U+2019 is folded to an ASCII
// apostrophe; the text is split on Unicode whitespace; chunks that are
// @-mentions or URLs (http://, https://, www.) are dropped; leading and
// trailing punctuation is stripped (which also removes the '#' of a
// hashtag); empty tokens are dropped. Apostrophes inside a token are kept,
// so "won't" stays one token. No lemmatization happens here: input is
// expected to be lemmatized upstream.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "anx/strings.hpp"

namespace anx {

using TokenSeq = std::vector<std::string>;

namespace detail {

/// Byte length of the Unicode whitespace character starting at s[i], or 0.
inline std::size_t whitespace_length(std::string_view s, std::size_t i) noexcept {
  const auto b = [&](std::size_t k) -> unsigned char {
    return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0;
  };
  const unsigned char c = b(0);
  if (c < 0x80) return is_space_ascii(static_cast<char>(c)) ? 1 : 0;
  if (c == 0xC2 && (b(1) == 0x85 || b(1) == 0xA0)) return 2;
  if (c == 0xE1 && b(1) == 0x9A && b(2) == 0x80) return 3;
  if (c == 0xE2 && b(1) == 0x80) {
    const unsigned char d = b(2);
    if ((d >= 0x80 && d <= 0x8A) || d == 0xA8 || d == 0xA9 || d == 0xAF) return 3;
  }
  if (c == 0xE2 && b(1) == 0x81 && b(2) == 0x9F) return 3;
  if (c == 0xE3 && b(1) == 0x80 && b(2) == 0x80) return 3;
  return 0;
}

constexpr bool is_punct_ascii(char c) noexcept {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

/// Byte length of a punctuation mark at the front of s, or 0.
inline std::size_t leading_punct_length(std::string_view s) noexcept {
  if (s.empty()) return 0;
  if (is_punct_ascii(s[0])) return 1;
  if (s.size() >= 2 && static_cast<unsigned char>(s[0]) == 0xC2) {
    const auto d = static_cast<unsigned char>(s[1]);
    if (d == 0xAB || d == 0xBB || d == 0xA1 || d == 0xBF) return 2;  // « » ¡ ¿
  }
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xE2 &&
      static_cast<unsigned char>(s[1]) == 0x80) {
    const auto d = static_cast<unsigned char>(s[2]);
    if (d == 0x98 || d == 0x9C || d == 0x9D || d == 0xA6 || d == 0x93 || d == 0x94) return 3;
  }
  return 0;
}

/// Byte length of a punctuation mark at the back of s, or 0.
inline std::size_t trailing_punct_length(std::string_view s) noexcept {
  if (s.empty()) return 0;
  if (is_punct_ascii(s.back())) return 1;
  if (s.size() >= 2 && leading_punct_length(s.substr(s.size() - 2)) == 2) return 2;
  if (s.size() >= 3 && leading_punct_length(s.substr(s.size() - 3)) == 3) return 3;
  return 0;
}

constexpr bool starts_with_url(std::string_view s) noexcept {
  return s.starts_with("http://") || s.starts_with("https://") || s.starts_with("www.");
}

inline void emit_chunk(std::string_view chunk, TokenSeq& out) {
  std::string_view lead = chunk;
  while (!lead.empty() && lead.front() != '@' && lead.front() != '#') {
    const auto n = leading_punct_length(lead);
    if (n == 0) break;
    lead.remove_prefix(n);
  }
  if (lead.starts_with('@') || starts_with_url(lead)) return;

  std::string_view tok = chunk;
  for (std::size_t n; (n = leading_punct_length(tok)) != 0;) tok.remove_prefix(n);
  for (std::size_t n; (n = trailing_punct_length(tok)) != 0;) tok.remove_suffix(n);
  if (tok.empty() || starts_with_url(tok)) return;
  out.emplace_back(tok);
}

}  // namespace detail

/// Appends the tokens of `text` to `out` (reusing its capacity).
inline void tokenize_into(std::string_view text, TokenSeq& out) {
  std::string norm;
  norm.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0x99) {
      norm.push_back('\'');
      i += 2;
      continue;
    }
    norm.push_back(lower_ascii(text[i]));
  }

  const std::string_view s = norm;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t ws;
    while (i < s.size() && (ws = detail::whitespace_length(s, i)) != 0) i += ws;
    const std::size_t start = i;
    while (i < s.size() && detail::whitespace_length(s, i) == 0) ++i;
    if (i > start) detail::emit_chunk(s.substr(start, i - start), out);
  }
}

inline TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  tokenize_into(text, out);
  return out;
}

}  // namespace anx

#endif  // ANX_TEXTPROC_HPP
