#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 / codepoint utilities. Classification and case mapping cover
// ASCII, Latin-1 Supplement and Latin Extended-A, which is sufficient for the
// supported evaluation languages (German, English) and most other European
// text. Codepoints outside these ranges pass through case mapping unchanged
// and do not classify as letters.
namespace simeval::uni {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes UTF-8; invalid sequences decode to U+FFFD, one per bad byte.
std::vector<char32_t> decode_utf8(std::string_view text);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

char32_t to_lower(char32_t cp);
bool is_letter(char32_t cp);
bool is_upper(char32_t cp);

inline bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

// Whitespace for token splitting: ASCII whitespace plus NBSP, the general
// punctuation spaces, line/paragraph separators and ideographic space.
bool is_space(char32_t cp);

// Lowercases a whole UTF-8 string codepoint by codepoint.
std::string to_lower_utf8(std::string_view text);

} // namespace simeval::uni
