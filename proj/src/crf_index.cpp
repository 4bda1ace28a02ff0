#include <algorithm>
#include <map>

#include "mixtag/crf.hpp"
#include "mixtag/errors.hpp"

namespace mixtag {

FeatureIndex::FeatureIndex(std::vector<std::string> unigram_strings,
                           std::vector<std::string> bigram_strings,
                           int num_labels)
    : unigram_strings_(std::move(unigram_strings)),
      bigram_strings_(std::move(bigram_strings)),
      num_labels_(num_labels) {
  if (num_labels_ < 2) throw ConfigError("need at least two labels");
  std::sort(unigram_strings_.begin(), unigram_strings_.end());
  unigram_strings_.erase(
      std::unique(unigram_strings_.begin(), unigram_strings_.end()),
      unigram_strings_.end());
  std::sort(bigram_strings_.begin(), bigram_strings_.end());
  bigram_strings_.erase(
      std::unique(bigram_strings_.begin(), bigram_strings_.end()),
      bigram_strings_.end());
  const auto L = static_cast<std::size_t>(num_labels_);
  num_weights_ = unigram_strings_.size() * L + bigram_strings_.size() * L * L;
}

namespace {

std::int64_t sorted_position(const std::vector<std::string>& strings,
                             std::string_view s) {
  auto it = std::lower_bound(strings.begin(), strings.end(), s);
  if (it == strings.end() || *it != s) return -1;
  return it - strings.begin();
}

}  // namespace

std::int64_t FeatureIndex::unigram_base(std::string_view s) const {
  std::int64_t pos = sorted_position(unigram_strings_, s);
  if (pos < 0) return -1;
  return pos * num_labels_;
}

std::int64_t FeatureIndex::bigram_base(std::string_view s) const {
  std::int64_t pos = sorted_position(bigram_strings_, s);
  if (pos < 0) return -1;
  return static_cast<std::int64_t>(num_unigram_weights()) +
         pos * num_labels_ * num_labels_;
}

ExpandedSequence expand_sequence(const TemplateSet& templates,
                                 const ObservationMatrix& matrix,
                                 int ngram_max) {
  const std::size_t T = matrix.size();
  ExpandedSequence out;
  out.uni.resize(T);
  out.bi.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    for (const Template& tpl : templates.templates()) {
      if (tpl.kind == TemplateKind::kUnigram) {
        out.uni[t].push_back(expand(tpl, matrix, t));
      } else if (t > 0) {
        out.bi[t].push_back(expand(tpl, matrix, t));
      }
    }
    if (ngram_max > 0) {
      for (std::string& g : char_ngrams(matrix.at(t, 0), ngram_max)) {
        out.uni[t].push_back(std::move(g));
      }
    }
    // Features are boolean: a string firing twice at one position is one
    // feature, not a count of two.
    for (auto* v : {&out.uni[t], &out.bi[t]}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
  }
  return out;
}

CompiledSequence compile_sequence(const FeatureIndex& index,
                                  const ExpandedSequence& expanded,
                                  const std::vector<int>* gold) {
  const std::size_t T = expanded.uni.size();
  CompiledSequence seq;
  if (gold) {
    if (gold->size() != T) throw DataError("gold label count mismatch");
    for (int g : *gold) {
      if (g < 0 || g >= index.num_labels()) {
        throw DataError("token without a valid gold label");
      }
    }
    seq.gold = *gold;
  }
  seq.uni.resize(T);
  seq.bi.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    for (const std::string& s : expanded.uni[t]) {
      std::int64_t base = index.unigram_base(s);
      if (base >= 0) seq.uni[t].push_back(static_cast<std::uint32_t>(base));
    }
    for (const std::string& s : expanded.bi[t]) {
      std::int64_t base = index.bigram_base(s);
      if (base >= 0) seq.bi[t].push_back(static_cast<std::uint32_t>(base));
    }
  }
  return seq;
}

FeatureIndex build_feature_index(const LabeledCorpus& corpus,
                                 const TemplateSet& templates,
                                 const ResourceBundle& bundle,
                                 const TrainConfig& config) {
  if (!corpus.labeled) throw DataError("corpus is not labeled");
  if (corpus.utterances.empty()) throw DataError("empty corpus");
  if (config.min_count < 1) throw ConfigError("min_count must be >= 1");
  if (!templates.has_unigram() && config.ngram_max == 0) {
    throw ConfigError("template set has no unigram templates");
  }

  FeatureOptions options;
  options.ascii_only = config.ascii_only;

  // Occurrence counts of expanded strings; one position fires a string at
  // most once. std::map so the cutoff survivors come out already sorted.
  std::map<std::string, int> uni_counts;
  std::map<std::string, int> bi_counts;
  for (const Utterance& utt : corpus.utterances) {
    ObservationMatrix matrix = build_observation_matrix(utt, bundle, options);
    ExpandedSequence expanded =
        expand_sequence(templates, matrix, config.ngram_max);
    for (const auto& strings : expanded.uni) {
      for (const std::string& s : strings) ++uni_counts[s];
    }
    for (const auto& strings : expanded.bi) {
      for (const std::string& s : strings) ++bi_counts[s];
    }
  }

  std::vector<std::string> uni_strings;
  for (const auto& [s, n] : uni_counts) {
    if (n >= config.min_count) uni_strings.push_back(s);
  }
  std::vector<std::string> bi_strings;
  for (const auto& [s, n] : bi_counts) {
    if (n >= config.min_count) bi_strings.push_back(s);
  }
  if (uni_strings.empty()) throw DataError("no features");
  return FeatureIndex(std::move(uni_strings), std::move(bi_strings),
                      corpus.labels.size());
}

}  // namespace mixtag
