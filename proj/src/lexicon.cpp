#include "mixtag/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "mixtag/chars.hpp"
#include "mixtag/errors.hpp"

namespace mixtag {

void Lexicon::insert(std::string_view word) {
  entries_.insert(case_folded_ ? chars::to_lower(word) : std::string(word));
}

bool Lexicon::contains(std::string_view word) const {
  if (entries_.empty()) return false;
  if (case_folded_) {
    return entries_.count(chars::to_lower(word)) > 0;
  }
  return entries_.count(std::string(word)) > 0;
}

std::vector<std::string> Lexicon::sorted_entries() const {
  std::vector<std::string> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Line {
  std::string_view text;
  std::size_t number;
};

// Yields lines with numbers, CR stripped.
std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  std::size_t no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    bool last = eol == std::string_view::npos;
    std::string_view line =
        text.substr(pos, last ? text.size() - pos : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++no;
    if (!(last && line.empty())) lines.push_back({line, no});
    if (last) break;
    pos = eol + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Lexicon load_frequency_list(std::string_view text, std::string tag,
                            long min_frequency) {
  if (!chars::valid_utf8(text)) throw DataError("frequency list is not valid UTF-8");
  // Max count per word first, then filter.
  std::unordered_map<std::string, long> counts;
  for (const Line& line : lines_of(text)) {
    if (trim(line.text).empty()) continue;
    std::size_t tab = line.text.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError("line " + std::to_string(line.number) +
                      ": expected word<TAB>count");
    }
    std::string_view word = line.text.substr(0, tab);
    std::string_view count_text = trim(line.text.substr(tab + 1));
    long count = 0;
    auto [ptr, ec] = std::from_chars(
        count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size() ||
        count < 0) {
      throw DataError("line " + std::to_string(line.number) +
                      ": malformed count '" + std::string(count_text) + "'");
    }
    auto [it, inserted] = counts.emplace(std::string(word), count);
    if (!inserted) it->second = std::max(it->second, count);
  }
  Lexicon lex(std::move(tag), true);
  for (const auto& [word, count] : counts) {
    if (count >= min_frequency) lex.insert(word);
  }
  if (lex.empty()) throw DataError("empty lexicon");
  return lex;
}

Lexicon load_pair_list(std::string_view text, std::string tag) {
  if (!chars::valid_utf8(text)) throw DataError("pair list is not valid UTF-8");
  Lexicon lex(std::move(tag), true);
  for (const Line& line : lines_of(text)) {
    if (trim(line.text).empty()) continue;
    std::size_t tab = line.text.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw DataError("line " + std::to_string(line.number) +
                      ": expected roman<TAB>native");
    }
    lex.insert(line.text.substr(0, tab));
  }
  if (lex.empty()) throw DataError("empty lexicon");
  return lex;
}

Lexicon load_line_list(std::string_view text, std::string tag,
                       bool case_folded) {
  if (!chars::valid_utf8(text)) throw DataError("line list is not valid UTF-8");
  Lexicon lex(std::move(tag), case_folded);
  for (const Line& line : lines_of(text)) {
    std::string_view entry = trim(line.text);
    if (entry.empty()) continue;
    lex.insert(entry);
  }
  if (lex.empty()) throw DataError("empty lexicon");
  return lex;
}

std::map<std::string, Lexicon> build_wordlists_from_corpus(
    const LabeledCorpus& corpus) {
  if (!corpus.labeled) throw DataError("cannot build wordlists: corpus is unlabeled");
  if (corpus.utterances.empty()) throw DataError("cannot build wordlists: empty corpus");
  std::map<std::string, Lexicon> lists;
  for (const std::string& code : LabelSet::language_codes()) {
    lists.emplace(code, Lexicon(code, true));
  }
  for (const auto& utt : corpus.utterances) {
    for (const auto& tok : utt.tokens) {
      const std::string& code = corpus.labels.code(tok.gold);
      auto it = lists.find(code);
      if (it != lists.end()) it->second.insert(tok.surface);
    }
  }
  return lists;
}

Lexicon build_gazetteer_from_corpus(const LabeledCorpus& corpus) {
  if (!corpus.labeled) throw DataError("cannot build gazetteer: corpus is unlabeled");
  Lexicon gaz("gazetteer", true);
  int ne = corpus.labels.index_of("NE");
  if (ne < 0) return gaz;
  for (const auto& utt : corpus.utterances) {
    for (const auto& tok : utt.tokens) {
      if (tok.gold == ne) gaz.insert(tok.surface);
    }
  }
  return gaz;
}

int ResourceBundle::language_index(std::string_view code) {
  const auto& langs = LabelSet::language_codes();
  for (std::size_t i = 0; i < langs.size(); ++i) {
    if (langs[i] == code) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace mixtag
