#ifndef MIXTAG_FEATURES_HPP
#define MIXTAG_FEATURES_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mixtag/corpus.hpp"
#include "mixtag/lexicon.hpp"

namespace mixtag {

// Canonical observation layout, one row per token:
//   col 0      token surface
//   col 1      token length in code points (decimal)
//   col 2..4   CAP1..CAP3   capitalization flags
//   col 5..11  CHR1..CHR7   character-shape flags
//   col 12..20 LEX1..LEX9   lexicon membership, order en bn hi gu kn ml mr ta te
//   col 21     NE1          gazetteer hit
//   col 22     NE2          external NE column
// Flag columns hold "0" or "1". Templates index this table by (row, col).
inline constexpr int kObservationColumns = 23;

struct ObservationMatrix {
  std::vector<std::array<std::string, kObservationColumns>> rows;

  std::size_t size() const { return rows.size(); }
  std::string_view at(std::size_t row, int col) const {
    return rows[row][static_cast<std::size_t>(col)];
  }
};

struct FeatureOptions {
  bool ascii_only = false;  // restrict letter/uppercase tests to ASCII
};

struct CapFlags {
  bool first_upper = false;  // CAP1
  bool any_upper = false;    // CAP2
  bool all_upper = false;    // CAP3: has >=1 letter and every letter uppercase
};

CapFlags capitalization_flags(std::string_view token, bool ascii_only = false);

struct CharFlags {
  bool hashtag = false;    // CHR1
  bool mention = false;    // CHR2
  bool url = false;        // CHR3
  bool emoticon = false;   // CHR4
  bool symbol = false;     // CHR5: word-internal punctuation, masked for
                           //       emoticons/hashtags/mentions/URLs
  bool has_digit = false;  // CHR6
  bool number = false;     // CHR7: digits only
};

CharFlags character_flags(std::string_view token, const Lexicon& emoticons,
                          bool ascii_only = false);

// Membership in the nine language lexicons, fixed en..te order.
std::array<bool, 9> dictionary_flags(std::string_view token,
                                     const ResourceBundle& bundle);

struct NeFlags {
  bool gazetteer = false;  // NE1
  bool external = false;   // NE2
};

NeFlags ne_flags(const Token& token, const Lexicon& gazetteer);

ObservationMatrix build_observation_matrix(const Utterance& utt,
                                           const ResourceBundle& bundle,
                                           const FeatureOptions& options = {});

// All contiguous code-point substrings of length 1..n_max, prefixed "NG<n>:".
// Requires 1 <= n_max <= 5.
std::vector<std::string> char_ngrams(std::string_view token, int n_max);

// The matrix as a TSV block; appends the gold label column when labels is
// non-null and the token is labeled.
std::string render_matrix_tsv(const ObservationMatrix& matrix,
                              const Utterance& utt, const LabelSet* labels);

}  // namespace mixtag

#endif  // MIXTAG_FEATURES_HPP
