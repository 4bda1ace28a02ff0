#ifndef MIXTAG_TEMPLATES_HPP
#define MIXTAG_TEMPLATES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "mixtag/features.hpp"

namespace mixtag {

enum class TemplateKind { kUnigram, kBigram };

struct TemplateMacro {
  int row_offset = 0;  // any integer; window references
  int col = 0;         // >= 0, validated against the observation layout

  bool operator==(const TemplateMacro&) const = default;
};

// One feature-generation macro line. literals has macros.size()+1 entries:
// the literal text before, between, and after the macro sites.
struct Template {
  std::string id;
  TemplateKind kind = TemplateKind::kUnigram;
  std::vector<TemplateMacro> macros;
  std::vector<std::string> literals;

  bool operator==(const Template&) const = default;
};

class TemplateSet {
 public:
  TemplateSet() = default;
  explicit TemplateSet(std::vector<Template> templates);

  const std::vector<Template>& templates() const { return templates_; }
  bool empty() const { return templates_.empty(); }

  bool has_unigram() const;

  // Throws DataError when a macro references a column outside the layout.
  void validate_columns(int num_columns = kObservationColumns) const;

  // Canonical source text; parses back to an equal TemplateSet.
  std::string pretty_print() const;

  bool operator==(const TemplateSet&) const = default;

 private:
  std::vector<Template> templates_;
};

// One template per line; '#' comments and blank lines ignored. Macro syntax
// %x[row,col]. Ids must start with U or B and be unique; a bare "B" line is
// the macro-less label-bigram template. %t and %m macros are rejected.
TemplateSet parse_templates(std::string_view text);

// Expanded feature string for one template at position t: the id, ':', and
// the literals joined with substituted matrix cells. Out-of-range rows
// substitute "_B-k" / "_B+k".
std::string expand(const Template& tpl, const ObservationMatrix& matrix,
                   std::size_t t);

// The shipped default battery: window unigrams over tokens r in [-3,3],
// length, one unigram per flag column, relational lexicon pairs (all pairs
// involving en or hi plus the remaining adjacent pairs), the NE pair, and
// the bare bigram.
TemplateSet default_template_set();

}  // namespace mixtag

#endif  // MIXTAG_TEMPLATES_HPP
