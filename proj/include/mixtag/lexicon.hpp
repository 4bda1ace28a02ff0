#ifndef MIXTAG_LEXICON_HPP
#define MIXTAG_LEXICON_HPP

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mixtag/corpus.hpp"

namespace mixtag {

// A membership set loaded from one resource file or built from training
// data. Language lexicons and the gazetteer are case-folded; the emoticon
// list is exact-match.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::string tag, bool case_folded)
      : tag_(std::move(tag)), case_folded_(case_folded) {}

  const std::string& tag() const { return tag_; }
  bool case_folded() const { return case_folded_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Folds the key iff the lexicon is case-folded.
  void insert(std::string_view word);
  bool contains(std::string_view word) const;

  // Entries in byte order, for deterministic file output.
  std::vector<std::string> sorted_entries() const;

 private:
  std::string tag_;
  bool case_folded_ = true;
  std::unordered_set<std::string> entries_;
};

// word<TAB>count lines; words with count >= min_frequency survive,
// duplicates keep the max count. Frequencies are discarded afterwards.
Lexicon load_frequency_list(std::string_view text, std::string tag,
                            long min_frequency = 1);

// roman<TAB>native lines; only the Roman column is kept.
Lexicon load_pair_list(std::string_view text, std::string tag);

// One entry per line, blanks ignored.
Lexicon load_line_list(std::string_view text, std::string tag,
                       bool case_folded);

// Per-language wordlists from a labeled corpus: each language lexicon holds
// the case-folded surfaces gold-labeled with that language. NE/MIX/X and any
// non-language labels contribute nothing. Empty lexicons are permitted here.
std::map<std::string, Lexicon> build_wordlists_from_corpus(
    const LabeledCorpus& corpus);

// NE-labeled surfaces, case-folded. Empty result permitted.
Lexicon build_gazetteer_from_corpus(const LabeledCorpus& corpus);

// The nine language lexicons (fixed en..te order) plus emoticons and
// gazetteer. Languages without a resource hold empty lexicons and their LEX
// feature column stays 0.
struct ResourceBundle {
  std::array<Lexicon, 9> per_language;
  Lexicon emoticons{"emoticon", false};
  Lexicon gazetteer{"gazetteer", true};

  static int language_index(std::string_view code);  // -1 when not a language
  const Lexicon& language(int index) const { return per_language.at(index); }
};

}  // namespace mixtag

#endif  // MIXTAG_LEXICON_HPP
