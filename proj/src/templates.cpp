#include "mixtag/templates.hpp"

#include <charconv>
#include <unordered_set>

#include "mixtag/errors.hpp"

namespace mixtag {

TemplateSet::TemplateSet(std::vector<Template> templates)
    : templates_(std::move(templates)) {
  std::unordered_set<std::string_view> ids;
  for (const Template& t : templates_) {
    if (!ids.insert(t.id).second) {
      throw DataError("duplicate template id '" + t.id + "'");
    }
  }
}

bool TemplateSet::has_unigram() const {
  for (const Template& t : templates_) {
    if (t.kind == TemplateKind::kUnigram) return true;
  }
  return false;
}

void TemplateSet::validate_columns(int num_columns) const {
  for (const Template& t : templates_) {
    for (const TemplateMacro& m : t.macros) {
      if (m.col >= num_columns) {
        throw DataError("layout mismatch: template " + t.id +
                        " references column " + std::to_string(m.col) +
                        " but the observation layout has " +
                        std::to_string(num_columns) + " columns");
      }
    }
  }
}

std::string TemplateSet::pretty_print() const {
  std::string out;
  for (const Template& t : templates_) {
    out += t.id;
    if (!(t.kind == TemplateKind::kBigram && t.macros.empty() &&
          t.literals.size() == 1 && t.literals[0].empty())) {
      out.push_back(':');
      for (std::size_t i = 0; i < t.macros.size(); ++i) {
        out += t.literals[i];
        out += "%x[" + std::to_string(t.macros[i].row_offset) + "," +
               std::to_string(t.macros[i].col) + "]";
      }
      out += t.literals.back();
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

int parse_int(std::string_view s, std::size_t line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DataError("line " + std::to_string(line_no) + ": malformed " +
                    std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

Template parse_template_line(std::string_view line, std::size_t line_no) {
  Template tpl;
  if (line.find('\t') != std::string_view::npos) {
    throw DataError("line " + std::to_string(line_no) +
                    ": tab character not allowed in template");
  }
  char head = line.front();
  if (head == 'U') {
    tpl.kind = TemplateKind::kUnigram;
  } else if (head == 'B') {
    tpl.kind = TemplateKind::kBigram;
  } else {
    throw DataError("line " + std::to_string(line_no) +
                    ": template id must start with U or B");
  }

  std::size_t colon = line.find(':');
  if (colon == std::string_view::npos) {
    if (tpl.kind != TemplateKind::kBigram) {
      throw DataError("line " + std::to_string(line_no) +
                      ": unigram template needs ':' and a body");
    }
    tpl.id = std::string(line);
    tpl.literals = {""};
    return tpl;  // bare bigram form, possibly with a suffix id like B1
  }
  tpl.id = std::string(line.substr(0, colon));
  std::string_view body = line.substr(colon + 1);

  std::string literal;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == '%') {
      if (i + 1 >= body.size()) {
        throw DataError("line " + std::to_string(line_no) +
                        ": dangling '%' in template body");
      }
      char m = body[i + 1];
      if (m == 't' || m == 'm') {
        throw DataError("line " + std::to_string(line_no) + ": macro %" +
                        std::string(1, m) + " is not supported");
      }
      if (m != 'x') {
        throw DataError("line " + std::to_string(line_no) +
                        ": unknown macro '%" + std::string(1, m) + "'");
      }
      if (i + 2 >= body.size() || body[i + 2] != '[') {
        throw DataError("line " + std::to_string(line_no) +
                        ": malformed macro, expected %x[row,col]");
      }
      std::size_t close = body.find(']', i + 3);
      if (close == std::string_view::npos) {
        throw DataError("line " + std::to_string(line_no) +
                        ": malformed macro, missing ']'");
      }
      std::string_view args = body.substr(i + 3, close - (i + 3));
      std::size_t comma = args.find(',');
      if (comma == std::string_view::npos) {
        throw DataError("line " + std::to_string(line_no) +
                        ": malformed macro, expected %x[row,col]");
      }
      TemplateMacro macro;
      macro.row_offset = parse_int(args.substr(0, comma), line_no, "row offset");
      macro.col = parse_int(args.substr(comma + 1), line_no, "column");
      if (macro.col < 0) {
        throw DataError("line " + std::to_string(line_no) +
                        ": macro column must be >= 0");
      }
      tpl.literals.push_back(std::move(literal));
      literal.clear();
      tpl.macros.push_back(macro);
      i = close + 1;
    } else {
      literal.push_back(body[i]);
      ++i;
    }
  }
  tpl.literals.push_back(std::move(literal));
  return tpl;
}

}  // namespace

TemplateSet parse_templates(std::string_view text) {
  std::vector<Template> templates;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    bool last = eol == std::string_view::npos;
    std::string_view line =
        text.substr(pos, last ? text.size() - pos : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    // Trim trailing spaces; leading space means a malformed id, caught below.
    while (!line.empty() && line.back() == ' ') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') {
      Template tpl = parse_template_line(line, line_no);
      if (!ids.insert(tpl.id).second) {
        throw DataError("line " + std::to_string(line_no) +
                        ": duplicate template id '" + tpl.id + "'");
      }
      templates.push_back(std::move(tpl));
    }
    if (last) break;
    pos = eol + 1;
  }
  if (templates.empty()) throw DataError("template file contains no templates");
  return TemplateSet(std::move(templates));
}

std::string expand(const Template& tpl, const ObservationMatrix& matrix,
                   std::size_t t) {
  std::string out = tpl.id;
  out.push_back(':');
  for (std::size_t i = 0; i < tpl.macros.size(); ++i) {
    out += tpl.literals[i];
    long row = static_cast<long>(t) + tpl.macros[i].row_offset;
    if (row < 0) {
      out += "_B" + std::to_string(row);  // "_B-k"
    } else if (row >= static_cast<long>(matrix.size())) {
      out += "_B+" + std::to_string(row - static_cast<long>(matrix.size()) + 1);
    } else {
      out += matrix.at(static_cast<std::size_t>(row), tpl.macros[i].col);
    }
  }
  out += tpl.literals.back();
  return out;
}

TemplateSet default_template_set() {
  std::vector<Template> templates;
  auto add = [&templates](std::string id, TemplateKind kind,
                          std::vector<TemplateMacro> macros,
                          std::vector<std::string> literals) {
    templates.push_back(
        {std::move(id), kind, std::move(macros), std::move(literals)});
  };
  auto unigram_id = [](int n) {
    return (n < 10 ? "U0" : "U") + std::to_string(n);
  };

  int n = 0;
  // Token window: current token and the three tokens either side.
  for (int offset = -3; offset <= 3; ++offset) {
    add(unigram_id(n++), TemplateKind::kUnigram, {{offset, 0}}, {"", ""});
  }
  // Token length.
  add(unigram_id(n++), TemplateKind::kUnigram, {{0, 1}}, {"", ""});
  // One unigram per flag column (CAP, CHR, LEX, NE).
  for (int col = 2; col <= 22; ++col) {
    add(unigram_id(n++), TemplateKind::kUnigram, {{0, col}}, {"", ""});
  }
  // Relational lexicon pairs: queries mix an Indian language with English or
  // Hindi, so pair en and hi with every language, plus the remaining
  // adjacent pairs so each neighbouring LEX column pair is covered.
  const int lex_en = 12, lex_hi = 14;
  for (int a = 12; a <= 20; ++a) {
    for (int b = a + 1; b <= 20; ++b) {
      if (a == lex_en || a == lex_hi || b == lex_hi || b == a + 1) {
        add(unigram_id(n++), TemplateKind::kUnigram, {{0, a}, {0, b}},
            {"", "/", ""});
      }
    }
  }
  // Relational NE pair: gazetteer hit combined with the external NE column.
  add(unigram_id(n++), TemplateKind::kUnigram, {{0, 21}, {0, 22}},
      {"", "/", ""});
  // Label bigram.
  add("B", TemplateKind::kBigram, {}, {""});
  return TemplateSet(std::move(templates));
}

}  // namespace mixtag
