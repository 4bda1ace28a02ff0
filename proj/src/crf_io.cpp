#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "mixtag/crf.hpp"
#include "mixtag/errors.hpp"

namespace mixtag {

namespace {

constexpr std::string_view kMagic = "MIXTAG-CRF";
constexpr std::string_view kVersion = "v1";

// Shortest decimal form that parses back to the same double.
std::string render_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw DataError("line " + std::to_string(line_no) + ": " + what);
}

struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  bool done() const { return pos >= text.size(); }

  std::string_view next(const char* context) {
    if (done()) {
      throw DataError("unexpected end of model file (expected " +
                      std::string(context) + ")");
    }
    std::size_t eol = text.find('\n', pos);
    std::string_view line;
    if (eol == std::string_view::npos) {
      line = text.substr(pos);
      pos = text.size();
    } else {
      line = text.substr(pos, eol - pos);
      pos = eol + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    return line;
  }
};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(line_no, "malformed number '" + std::string(s) + "'");
  }
  return v;
}

long parse_long(std::string_view s, std::size_t line_no) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(line_no, "malformed integer '" + std::string(s) + "'");
  }
  return v;
}

// key=value field with a known key
std::string_view config_value(std::string_view field, std::string_view key,
                              std::size_t line_no) {
  std::size_t eq = field.find('=');
  if (eq == std::string_view::npos || field.substr(0, eq) != key) {
    fail(line_no, "expected '" + std::string(key) + "=...', got '" +
                      std::string(field) + "'");
  }
  return field.substr(eq + 1);
}

bool parse_flag(std::string_view s, std::size_t line_no) {
  if (s == "0") return false;
  if (s == "1") return true;
  fail(line_no, "expected 0 or 1, got '" + std::string(s) + "'");
}

}  // namespace

std::string save_model(const CrfModel& model) {
  const int L = model.labels.size();
  std::string out;
  out += kMagic;
  out += ' ';
  out += kVersion;
  out += '\n';

  out += "labels";
  for (int y = 0; y < L; ++y) {
    out += '\t';
    out += model.labels.code(y);
  }
  out += '\n';

  const TrainConfig& c = model.config;
  out += "config";
  out += "\tl2=" + render_double(c.l2);
  out += "\tmax_iters=" + std::to_string(c.max_iters);
  out += "\ttol=" + render_double(c.tol);
  out += "\tmin_count=" + std::to_string(c.min_count);
  out += "\tngram_max=" + std::to_string(c.ngram_max);
  out += std::string("\tascii_only=") + (c.ascii_only ? "1" : "0");
  out += std::string("\tconverged=") + (model.converged ? "1" : "0");
  out += '\n';

  out += "templates\t" +
         std::to_string(model.templates.templates().size()) + '\n';
  out += model.templates.pretty_print();

  out += "features\t" + std::to_string(model.index.num_weights()) + '\n';
  std::size_t slot = 0;
  for (const std::string& s : model.index.unigram_strings()) {
    for (int y = 0; y < L; ++y, ++slot) {
      out += s;
      out += '\t';
      out += model.labels.code(y);
      out += '\t';
      out += render_double(model.weights[slot]);
      out += '\n';
    }
  }
  for (const std::string& s : model.index.bigram_strings()) {
    for (int yp = 0; yp < L; ++yp) {
      for (int y = 0; y < L; ++y, ++slot) {
        out += s;
        out += '\t';
        out += model.labels.code(yp);
        out += '\t';
        out += model.labels.code(y);
        out += '\t';
        out += render_double(model.weights[slot]);
        out += '\n';
      }
    }
  }
  return out;
}

CrfModel load_model(std::string_view text) {
  LineCursor cursor{text};

  std::string_view header = cursor.next("header");
  if (header != "MIXTAG-CRF v1") {
    if (header.substr(0, kMagic.size()) == kMagic) {
      fail(cursor.line_no, "unsupported model version '" +
                               std::string(header) + "'");
    }
    fail(cursor.line_no, "not a model file");
  }

  CrfModel model;

  auto label_fields = split_tabs(cursor.next("labels"));
  if (label_fields.empty() || label_fields[0] != "labels" ||
      label_fields.size() < 2) {
    fail(cursor.line_no, "expected labels line");
  }
  std::vector<std::string> codes(label_fields.begin() + 1, label_fields.end());
  try {
    model.labels = LabelSet(std::move(codes));
  } catch (const ConfigError& e) {
    fail(cursor.line_no, e.what());
  }
  const int L = model.labels.size();

  auto config_fields = split_tabs(cursor.next("config"));
  if (config_fields.size() != 8 || config_fields[0] != "config") {
    fail(cursor.line_no, "expected config line with 7 settings");
  }
  TrainConfig config;
  std::size_t ln = cursor.line_no;
  config.l2 = parse_double(config_value(config_fields[1], "l2", ln), ln);
  config.max_iters = static_cast<int>(
      parse_long(config_value(config_fields[2], "max_iters", ln), ln));
  config.tol = parse_double(config_value(config_fields[3], "tol", ln), ln);
  config.min_count = static_cast<int>(
      parse_long(config_value(config_fields[4], "min_count", ln), ln));
  config.ngram_max = static_cast<int>(
      parse_long(config_value(config_fields[5], "ngram_max", ln), ln));
  config.ascii_only =
      parse_flag(config_value(config_fields[6], "ascii_only", ln), ln);
  model.converged =
      parse_flag(config_value(config_fields[7], "converged", ln), ln);
  model.config = config;

  auto template_head = split_tabs(cursor.next("templates"));
  if (template_head.size() != 2 || template_head[0] != "templates") {
    fail(cursor.line_no, "expected templates line");
  }
  long num_templates = parse_long(template_head[1], cursor.line_no);
  if (num_templates < 1) fail(cursor.line_no, "template count must be >= 1");
  std::string template_text;
  std::size_t templates_start_line = cursor.line_no + 1;
  for (long i = 0; i < num_templates; ++i) {
    template_text += cursor.next("a template");
    template_text += '\n';
  }
  try {
    model.templates = parse_templates(template_text);
    model.templates.validate_columns(kObservationColumns);
  } catch (const DataError& e) {
    throw DataError("templates starting at line " +
                    std::to_string(templates_start_line) + ": " + e.what());
  }

  auto feature_head = split_tabs(cursor.next("features"));
  if (feature_head.size() != 2 || feature_head[0] != "features") {
    fail(cursor.line_no, "expected features line");
  }
  long num_weights = parse_long(feature_head[1], cursor.line_no);
  if (num_weights < 0) fail(cursor.line_no, "negative feature count");

  std::vector<std::string> uni_strings, bi_strings;
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(num_weights));
  bool in_bigrams = false;
  int group_pos = 0;  // position inside the current string's label block
  for (long i = 0; i < num_weights; ++i) {
    auto fields = split_tabs(cursor.next("a feature"));
    std::size_t fline = cursor.line_no;
    if (fields.size() != 3 && fields.size() != 4) {
      fail(fline, "expected 3 or 4 tab-separated feature fields");
    }
    bool bigram = fields.size() == 4;
    const std::string_view string_field = fields[0];
    auto& strings = bigram ? bi_strings : uni_strings;
    const int group_size = bigram ? L * L : L;

    if (bigram && !in_bigrams) {
      if (group_pos != 0) fail(fline, "truncated unigram label block");
      in_bigrams = true;
    } else if (!bigram && in_bigrams) {
      fail(fline, "unigram feature after bigram features");
    }

    if (group_pos == 0) {
      if (!strings.empty() && string_field <= strings.back()) {
        fail(fline, "feature strings out of order");
      }
      strings.emplace_back(string_field);
    } else if (string_field != strings.back()) {
      fail(fline, "truncated label block for '" + strings.back() + "'");
    }

    int expect_prev = group_pos / L;
    int expect_label = group_pos % L;
    if (bigram) {
      if (fields[1] != model.labels.code(expect_prev) ||
          fields[2] != model.labels.code(expect_label)) {
        fail(fline, "label pair out of order");
      }
    } else {
      if (fields[1] != model.labels.code(expect_label)) {
        fail(fline, "label out of order");
      }
    }

    double w = parse_double(fields.back(), fline);
    if (!std::isfinite(w)) fail(fline, "weight is not finite");
    weights.push_back(w);
    group_pos = (group_pos + 1) % group_size;
  }
  if (group_pos != 0) {
    fail(cursor.line_no, "feature count does not close the last label block");
  }
  while (!cursor.done()) {
    if (!cursor.next("end of file").empty()) {
      fail(cursor.line_no, "trailing content after features");
    }
  }

  model.index =
      FeatureIndex(std::move(uni_strings), std::move(bi_strings), L);
  if (model.index.num_weights() != weights.size()) {
    throw DataError("feature block does not match its declared size");
  }
  model.weights = std::move(weights);
  return model;
}

}  // namespace mixtag
