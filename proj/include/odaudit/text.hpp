// Small UTF-8 and string helpers shared by the tokenizer, normalizers and parsers.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace odaudit::text {

// Decodes the code point starting at `pos` and advances `pos` past it.
// Malformed sequences decode as U+FFFD and advance a single byte.
char32_t decode_cp(std::string_view s, std::size_t &pos);

void append_utf8(std::string &out, char32_t cp);

// Lowercase mapping for ASCII, Latin-1 and Latin Extended-A (enough for the
// German and English corpora this tool targets). Other code points pass through.
char32_t lower_cp(char32_t cp);

// Token character: ASCII alphanumerics plus non-ASCII letters/digits outside
// the general punctuation blocks.
bool word_cp(char32_t cp);

// View into `s`; the caller keeps the backing storage alive.
std::string_view trim(std::string_view s);
std::string lower_ascii(std::string_view s);

// UTF-8 aware lowercase of the whole string.
std::string fold_case(std::string_view s);

// Splits into maximal runs of word code points; original case preserved.
std::vector<std::string> tokenize(std::string_view s);

std::size_t cp_length(std::string_view s);

bool iequals_ascii(std::string_view a, std::string_view b);

// FNV-1a, used for config fingerprints and seed derivation.
std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 14695981039346656037ULL);

} // namespace odaudit::text
