#ifndef MIXTAG_CORPUS_HPP
#define MIXTAG_CORPUS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace mixtag {

// Ordered label vocabulary. Index order is the canonical order everywhere:
// tie-breaking in decoding, report rows, model files.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<std::string> codes);

  // en bn hi gu kn ml mr ta te NE MIX X
  static LabelSet default_set();

  // The nine language codes, in the fixed LEX column order.
  static const std::vector<std::string>& language_codes();

  int index_of(std::string_view code) const;  // -1 when absent
  const std::string& code(int index) const;
  int size() const { return static_cast<int>(codes_.size()); }

  bool operator==(const LabelSet& other) const { return codes_ == other.codes_; }

 private:
  std::vector<std::string> codes_;
};

struct Token {
  std::string surface;
  int gold = -1;         // label index, -1 when unlabeled
  int external_ne = -1;  // -1 absent, else 0/1 from an NE= input column

  bool operator==(const Token&) const = default;
};

struct Utterance {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const Utterance&) const = default;
};

struct LabeledCorpus {
  std::vector<Utterance> utterances;
  bool labeled = false;
  LabelSet labels;

  std::size_t size() const { return utterances.size(); }
  std::size_t token_count() const;
  bool operator==(const LabeledCorpus& other) const {
    return utterances == other.utterances && labeled == other.labeled &&
           labels == other.labels;
  }
};

// Parses blank-line-delimited column text. Columns are tab- or space-
// separated: surface first, optional NE=0/NE=1 column, gold label last when
// expect_labels. Unknown label codes and malformed columns raise DataError
// with the line number; empty utterances are skipped.
LabeledCorpus parse_corpus(std::string_view text, bool expect_labels,
                           const LabelSet& labels);

// Splits a raw query on whitespace runs; punctuation stays attached.
Utterance tokenize_query(std::string_view raw);

// Emits surface<TAB>label per line, blank line between utterances. Tokens
// that carried an NE= input column keep it, so output re-parses to an equal
// corpus. Predictions must match the corpus shape.
std::string write_tagged(const LabeledCorpus& corpus,
                         const std::vector<std::vector<int>>& predictions,
                         const LabelSet& labels);

// Gold labels as prediction-shaped indices (corpus must be labeled).
std::vector<std::vector<int>> gold_labels(const LabeledCorpus& corpus);

}  // namespace mixtag

#endif  // MIXTAG_CORPUS_HPP
