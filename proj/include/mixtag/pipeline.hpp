#ifndef MIXTAG_PIPELINE_HPP
#define MIXTAG_PIPELINE_HPP

#include <array>
#include <ostream>
#include <string>
#include <string_view>

#include "mixtag/corpus.hpp"
#include "mixtag/lexicon.hpp"
#include "mixtag/templates.hpp"

namespace mixtag {

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Where feature resources come from. Per-language entries take the forms
// freq:PATH (word<TAB>count), pairs:PATH (roman<TAB>native), list:PATH or a
// bare PATH (one word per line). wordlists_dir points at a directory written
// by build-lexicons and fills in any language without an explicit entry.
struct ResourceSpec {
  std::array<std::string, 9> lexicons;  // en..te order
  std::string wordlists_dir;
  std::string emoticons;
  std::string gazetteer;
};

// Loads every referenced resource up front. A language with no usable
// source gets an empty lexicon and a warning line; an explicitly named file
// that is missing or malformed is an error.
ResourceBundle load_resources(const ResourceSpec& spec, std::ostream& warn);

LabelSet parse_label_csv(const std::string& csv);  // "" -> default_set()

// "default" or a path to a template file
TemplateSet load_templates(const std::string& spec);

// wordlist.<code>.txt per language plus gazetteer.txt, entries sorted, into
// out_dir (created if needed). Reports one line per file to info.
void write_wordlist_files(const LabeledCorpus& corpus,
                          const std::string& out_dir, std::ostream& info);

}  // namespace mixtag

#endif  // MIXTAG_PIPELINE_HPP
