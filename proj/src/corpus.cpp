#include "mixtag/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "mixtag/chars.hpp"
#include "mixtag/errors.hpp"

namespace mixtag {

LabelSet::LabelSet(std::vector<std::string> codes) : codes_(std::move(codes)) {
  if (codes_.empty()) throw ConfigError("label set is empty");
  std::unordered_set<std::string> seen;
  for (const auto& c : codes_) {
    if (c.empty()) throw ConfigError("empty label code");
    if (c.find_first_of(" \t\r\n") != std::string::npos) {
      throw ConfigError("label code '" + c + "' contains whitespace");
    }
    if (!seen.insert(c).second) throw ConfigError("duplicate label code '" + c + "'");
  }
}

LabelSet LabelSet::default_set() {
  return LabelSet({"en", "bn", "hi", "gu", "kn", "ml", "mr", "ta", "te", "NE",
                   "MIX", "X"});
}

const std::vector<std::string>& LabelSet::language_codes() {
  static const std::vector<std::string> kLanguages = {
      "en", "bn", "hi", "gu", "kn", "ml", "mr", "ta", "te"};
  return kLanguages;
}

int LabelSet::index_of(std::string_view code) const {
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (codes_[i] == code) return static_cast<int>(i);
  }
  return -1;
}

const std::string& LabelSet::code(int index) const { return codes_.at(index); }

std::size_t LabeledCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& u : utterances) n += u.size();
  return n;
}

namespace {

// Splits a line into columns on tabs or runs of spaces.
std::vector<std::string_view> split_columns(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    cols.push_back(line.substr(start, i - start));
  }
  return cols;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

LabeledCorpus parse_corpus(std::string_view text, bool expect_labels,
                           const LabelSet& labels) {
  if (!chars::valid_utf8(text)) throw DataError("corpus is not valid UTF-8");

  LabeledCorpus corpus;
  corpus.labeled = expect_labels;
  corpus.labels = labels;

  Utterance current;
  auto flush = [&] {
    if (!current.tokens.empty()) {
      corpus.utterances.push_back(std::move(current));
      current = Utterance{};
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    bool last = eol == std::string_view::npos;
    std::string_view line = strip_cr(
        text.substr(pos, last ? text.size() - pos : eol - pos));
    ++line_no;
    if (last && line.empty()) break;

    auto cols = split_columns(line);
    if (cols.empty()) {
      flush();  // consecutive blank lines just produce empty flushes
    } else {
      Token tok;
      tok.surface = std::string(cols[0]);
      std::size_t next = 1;
      if (next < cols.size() && cols[next].starts_with("NE=")) {
        std::string_view v = cols[next].substr(3);
        if (v != "0" && v != "1") {
          throw DataError("line " + std::to_string(line_no) +
                          ": NE column must be NE=0 or NE=1");
        }
        tok.external_ne = v == "1" ? 1 : 0;
        ++next;
      }
      if (expect_labels) {
        if (next >= cols.size()) {
          throw DataError("line " + std::to_string(line_no) +
                          ": label column missing");
        }
        int idx = labels.index_of(cols[next]);
        if (idx < 0) {
          throw DataError("line " + std::to_string(line_no) +
                          ": unknown label " + std::string(cols[next]));
        }
        tok.gold = idx;
        ++next;
      }
      if (next != cols.size()) {
        throw DataError("line " + std::to_string(line_no) +
                        ": unexpected column '" + std::string(cols[next]) + "'");
      }
      current.tokens.push_back(std::move(tok));
    }
    if (last) break;
    pos = eol + 1;
  }
  flush();

  if (corpus.utterances.empty()) throw DataError("empty corpus");
  return corpus;
}

Utterance tokenize_query(std::string_view raw) {
  if (!chars::valid_utf8(raw)) throw DataError("query is not valid UTF-8");
  Utterance utt;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' ||
                              raw[i] == '\n' || raw[i] == '\r')) {
      ++i;
    }
    if (i >= raw.size()) break;
    std::size_t start = i;
    while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' &&
           raw[i] != '\n' && raw[i] != '\r') {
      ++i;
    }
    utt.tokens.push_back(Token{std::string(raw.substr(start, i - start)), -1, -1});
  }
  if (utt.tokens.empty()) throw DataError("empty query");
  return utt;
}

std::string write_tagged(const LabeledCorpus& corpus,
                         const std::vector<std::vector<int>>& predictions,
                         const LabelSet& labels) {
  if (predictions.size() != corpus.utterances.size()) {
    throw DataError("prediction shape mismatch: " +
                    std::to_string(predictions.size()) + " utterances vs " +
                    std::to_string(corpus.utterances.size()));
  }
  std::string out;
  for (std::size_t u = 0; u < corpus.utterances.size(); ++u) {
    const Utterance& utt = corpus.utterances[u];
    if (predictions[u].size() != utt.size()) {
      throw DataError("prediction shape mismatch at utterance " +
                      std::to_string(u));
    }
    if (u > 0) out.push_back('\n');
    for (std::size_t t = 0; t < utt.size(); ++t) {
      const Token& tok = utt.tokens[t];
      out += tok.surface;
      if (tok.external_ne >= 0) {
        out += tok.external_ne ? "\tNE=1" : "\tNE=0";
      }
      out.push_back('\t');
      out += labels.code(predictions[u][t]);
      out.push_back('\n');
    }
  }
  return out;
}

std::vector<std::vector<int>> gold_labels(const LabeledCorpus& corpus) {
  if (!corpus.labeled) throw DataError("corpus is unlabeled");
  std::vector<std::vector<int>> gold;
  gold.reserve(corpus.utterances.size());
  for (const auto& utt : corpus.utterances) {
    std::vector<int> row;
    row.reserve(utt.size());
    for (const auto& tok : utt.tokens) row.push_back(tok.gold);
    gold.push_back(std::move(row));
  }
  return gold;
}

}  // namespace mixtag
