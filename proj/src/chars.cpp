#include "mixtag/chars.hpp"

#include "mixtag/errors.hpp"

namespace mixtag::chars {

namespace {

bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

}  // namespace

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      throw DataError("invalid UTF-8 byte at offset " + std::to_string(i));
    }
    if (i + len > text.size()) {
      throw DataError("truncated UTF-8 sequence at offset " + std::to_string(i));
    }
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char bk = static_cast<unsigned char>(text[i + k]);
      if (!is_continuation(bk)) {
        throw DataError("invalid UTF-8 continuation at offset " +
                        std::to_string(i + k));
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    // Reject overlong encodings and surrogate range.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw DataError("invalid UTF-8 code point at offset " + std::to_string(i));
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

bool valid_utf8(std::string_view text) {
  try {
    decode_utf8(text);
    return true;
  } catch (const DataError&) {
    return false;
  }
}

std::size_t count_codepoints(std::string_view text) {
  return decode_utf8(text).size();
}

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

namespace {

bool ascii_upper(char32_t cp) { return cp >= U'A' && cp <= U'Z'; }
bool ascii_lower(char32_t cp) { return cp >= U'a' && cp <= U'z'; }

// Latin-1 Supplement and Latin Extended-A case classification.
// U+00D7 (multiplication) and U+00F7 (division) are the only non-letters in
// the C0..FF letter rows.
bool latin_upper(char32_t cp) {
  if (cp >= 0x00C0 && cp <= 0x00DE) return cp != 0x00D7;
  if (cp >= 0x0100 && cp <= 0x0137) return (cp & 1) == 0;
  if (cp >= 0x0139 && cp <= 0x0148) return (cp & 1) == 1;
  if (cp >= 0x014A && cp <= 0x0177) return (cp & 1) == 0;
  if (cp == 0x0178) return true;  // Y with diaeresis
  if (cp >= 0x0179 && cp <= 0x017D) return (cp & 1) == 1;
  return false;
}

bool latin_lower(char32_t cp) {
  if (cp == 0x00AA || cp == 0x00B5 || cp == 0x00BA) return true;
  if (cp >= 0x00DF && cp <= 0x00FF) return cp != 0x00F7;
  if (cp >= 0x0100 && cp <= 0x0137) return (cp & 1) == 1;
  if (cp == 0x0138) return true;  // kra, caseless lowercase
  if (cp >= 0x0139 && cp <= 0x0148) return (cp & 1) == 0;
  if (cp == 0x0149) return true;
  if (cp >= 0x014A && cp <= 0x0177) return (cp & 1) == 1;
  if (cp >= 0x0179 && cp <= 0x017D) return (cp & 1) == 0;
  if (cp == 0x017E || cp == 0x017F) return true;
  return false;
}

// Coarse letter blocks past the exact tables. Covers Latin Extended-B / IPA,
// Greek, Cyrillic, and the major Indic scripts; treated as caseless letters.
bool block_letter(char32_t cp) {
  return (cp >= 0x0180 && cp <= 0x02AF) || (cp >= 0x0370 && cp <= 0x03FF) ||
         (cp >= 0x0400 && cp <= 0x04FF) || (cp >= 0x0530 && cp <= 0x058F) ||
         (cp >= 0x0590 && cp <= 0x05FF) || (cp >= 0x0600 && cp <= 0x06FF) ||
         (cp >= 0x0900 && cp <= 0x0DFF) || (cp >= 0x0E00 && cp <= 0x0E7F) ||
         (cp >= 0x1E00 && cp <= 0x1EFF) || (cp >= 0x4E00 && cp <= 0x9FFF);
}

char32_t lower_of(char32_t cp) {
  if (ascii_upper(cp)) return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp == 0x0178) return 0x00FF;
  if (cp >= 0x0100 && cp <= 0x0137 && (cp & 1) == 0) return cp + 1;
  if (cp >= 0x0139 && cp <= 0x0148 && (cp & 1) == 1) return cp + 1;
  if (cp >= 0x014A && cp <= 0x0177 && (cp & 1) == 0) return cp + 1;
  if (cp >= 0x0179 && cp <= 0x017D && (cp & 1) == 1) return cp + 1;
  return cp;
}

}  // namespace

bool is_upper(char32_t cp, bool ascii_only) {
  if (ascii_only) return ascii_upper(cp);
  return ascii_upper(cp) || latin_upper(cp);
}

bool is_letter(char32_t cp, bool ascii_only) {
  if (ascii_only) return ascii_upper(cp) || ascii_lower(cp);
  return ascii_upper(cp) || ascii_lower(cp) || latin_upper(cp) ||
         latin_lower(cp) || block_letter(cp);
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : decode_utf8(text)) {
    append_utf8(out, lower_of(cp));
  }
  return out;
}

}  // namespace mixtag::chars
