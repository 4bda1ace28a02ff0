#include "mixtag/features.hpp"

#include "mixtag/chars.hpp"
#include "mixtag/errors.hpp"

namespace mixtag {

CapFlags capitalization_flags(std::string_view token, bool ascii_only) {
  CapFlags flags;
  auto cps = chars::decode_utf8(token);
  bool has_letter = false;
  bool all_letters_upper = true;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    bool letter = chars::is_letter(cps[i], ascii_only);
    bool upper = chars::is_upper(cps[i], ascii_only);
    if (i == 0 && upper) flags.first_upper = true;
    if (upper) flags.any_upper = true;
    if (letter) {
      has_letter = true;
      if (!upper) all_letters_upper = false;
    }
  }
  flags.all_upper = has_letter && all_letters_upper;
  return flags;
}

namespace {

bool starts_with_http(std::string_view token) {
  if (token.size() < 4) return false;
  const char* h = "http";
  for (int i = 0; i < 4; ++i) {
    char c = token[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != h[i]) return false;
  }
  return true;
}

}  // namespace

CharFlags character_flags(std::string_view token, const Lexicon& emoticons,
                          bool ascii_only) {
  CharFlags flags;
  if (token.empty()) return flags;
  flags.hashtag = token.front() == '#';
  flags.mention = token.front() == '@';
  flags.url = starts_with_http(token);
  flags.emoticon = emoticons.contains(token);

  auto cps = chars::decode_utf8(token);
  bool any_symbol = false;
  bool any_digit = false;
  bool all_digits = true;
  for (char32_t cp : cps) {
    bool digit = chars::is_ascii_digit(cp);
    bool letter = chars::is_letter(cp, ascii_only);
    if (digit) any_digit = true;
    if (!digit) all_digits = false;
    if (!digit && !letter) any_symbol = true;
  }
  bool structural = flags.hashtag || flags.mention || flags.url || flags.emoticon;
  flags.symbol = any_symbol && !structural;
  flags.has_digit = any_digit;
  flags.number = !cps.empty() && all_digits;
  return flags;
}

std::array<bool, 9> dictionary_flags(std::string_view token,
                                     const ResourceBundle& bundle) {
  std::array<bool, 9> flags{};
  for (int i = 0; i < 9; ++i) {
    flags[i] = bundle.per_language[i].contains(token);
  }
  return flags;
}

NeFlags ne_flags(const Token& token, const Lexicon& gazetteer) {
  NeFlags flags;
  flags.gazetteer = gazetteer.contains(token.surface);
  flags.external = token.external_ne == 1;
  return flags;
}

namespace {

const char* bit(bool b) { return b ? "1" : "0"; }

}  // namespace

ObservationMatrix build_observation_matrix(const Utterance& utt,
                                           const ResourceBundle& bundle,
                                           const FeatureOptions& options) {
  ObservationMatrix matrix;
  matrix.rows.reserve(utt.size());
  for (const Token& tok : utt.tokens) {
    auto cap = capitalization_flags(tok.surface, options.ascii_only);
    auto chr = character_flags(tok.surface, bundle.emoticons, options.ascii_only);
    auto lex = dictionary_flags(tok.surface, bundle);
    auto ne = ne_flags(tok, bundle.gazetteer);

    std::array<std::string, kObservationColumns> row;
    row[0] = tok.surface;
    row[1] = std::to_string(chars::count_codepoints(tok.surface));
    row[2] = bit(cap.first_upper);
    row[3] = bit(cap.any_upper);
    row[4] = bit(cap.all_upper);
    row[5] = bit(chr.hashtag);
    row[6] = bit(chr.mention);
    row[7] = bit(chr.url);
    row[8] = bit(chr.emoticon);
    row[9] = bit(chr.symbol);
    row[10] = bit(chr.has_digit);
    row[11] = bit(chr.number);
    for (int i = 0; i < 9; ++i) row[12 + i] = bit(lex[i]);
    row[21] = bit(ne.gazetteer);
    row[22] = bit(ne.external);
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

std::vector<std::string> char_ngrams(std::string_view token, int n_max) {
  if (n_max < 1 || n_max > 5) {
    throw ConfigError("ngram size must be between 1 and 5, got " +
                      std::to_string(n_max));
  }
  auto cps = chars::decode_utf8(token);
  std::vector<std::string> grams;
  for (int n = 1; n <= n_max; ++n) {
    if (cps.size() < static_cast<std::size_t>(n)) break;
    for (std::size_t start = 0; start + n <= cps.size(); ++start) {
      std::string gram = "NG" + std::to_string(n) + ":";
      for (int k = 0; k < n; ++k) chars::append_utf8(gram, cps[start + k]);
      grams.push_back(std::move(gram));
    }
  }
  return grams;
}

std::string render_matrix_tsv(const ObservationMatrix& matrix,
                              const Utterance& utt, const LabelSet* labels) {
  std::string out;
  for (std::size_t t = 0; t < matrix.size(); ++t) {
    for (int c = 0; c < kObservationColumns; ++c) {
      if (c > 0) out.push_back('\t');
      out += matrix.rows[t][static_cast<std::size_t>(c)];
    }
    if (labels != nullptr && utt.tokens[t].gold >= 0) {
      out.push_back('\t');
      out += labels->code(utt.tokens[t].gold);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace mixtag
