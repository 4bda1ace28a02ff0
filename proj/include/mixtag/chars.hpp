#ifndef MIXTAG_CHARS_HPP
#define MIXTAG_CHARS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Code point classification for Roman-script tokens. Exact case tables cover
// ASCII plus Latin-1 Supplement and Latin Extended-A (U+00C0..U+017F), which
// is where accented letters in romanized Indian-language text live. Code
// points beyond that are classified as letters by block and treated as
// caseless. ascii_only mode restricts letters to [A-Za-z] for strict
// byte-level behaviour.

namespace mixtag::chars {

// Decodes UTF-8 into code points. Throws DataError on malformed input.
std::vector<char32_t> decode_utf8(std::string_view text);

bool valid_utf8(std::string_view text);

// Number of code points (throws on malformed input).
std::size_t count_codepoints(std::string_view text);

bool is_letter(char32_t cp, bool ascii_only = false);
bool is_upper(char32_t cp, bool ascii_only = false);

// Decimal digits are ASCII 0-9 only.
bool is_ascii_digit(char32_t cp);

// Lower-cases a UTF-8 string (case folding for lexicon keys).
std::string to_lower(std::string_view text);

// Encodes one code point as UTF-8 and appends it.
void append_utf8(std::string& out, char32_t cp);

}  // namespace mixtag::chars

#endif  // MIXTAG_CHARS_HPP
