#include "golden_fixture.hpp"

#include "mixtag/corpus.hpp"
#include "mixtag/features.hpp"
#include "mixtag/lexicon.hpp"
#include "mixtag/templates.hpp"

namespace mixtag::testing {

std::string default_expansion_dump() {
  // Mumbai carries an external NE=1 column; the rest have none.
  LabeledCorpus corpus = parse_corpus(
      "Mumbai\tNE=1\ntake\n:/\nangul-er\n30\n", false, LabelSet::default_set());
  const Utterance& utt = corpus.utterances[0];

  ResourceBundle bundle;
  bundle.per_language[0] = Lexicon("en", true);
  bundle.per_language[0].insert("take");
  bundle.per_language[0].insert("this");
  bundle.per_language[1] = Lexicon("bn", true);
  bundle.per_language[1].insert("take");
  bundle.per_language[1].insert("ami");
  bundle.emoticons = Lexicon("emoticon", false);
  bundle.emoticons.insert(":/");
  bundle.gazetteer = Lexicon("gazetteer", true);
  bundle.gazetteer.insert("Mumbai");

  ObservationMatrix matrix = build_observation_matrix(utt, bundle, {});
  TemplateSet templates = default_template_set();

  std::string out;
  for (std::size_t t = 0; t < matrix.size(); ++t) {
    if (t > 0) out += '\n';
    out += "# token " + std::to_string(t) + ": " + utt.tokens[t].surface + '\n';
    for (const Template& tpl : templates.templates()) {
      if (tpl.kind == TemplateKind::kBigram && t == 0) continue;
      out += expand(tpl, matrix, t);
      out += '\n';
    }
  }
  return out;
}

}  // namespace mixtag::testing
