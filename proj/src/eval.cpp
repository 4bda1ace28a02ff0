#include "mixtag/eval.hpp"

#include <algorithm>
#include <cstdio>

#include "mixtag/errors.hpp"

namespace mixtag {

long ConfusionMatrix::total() const {
  long sum = 0;
  for (const auto& row : counts) {
    for (long c : row) sum += c;
  }
  return sum;
}

long ConfusionMatrix::trace() const {
  long sum = 0;
  for (int i = 0; i < size(); ++i) sum += counts[i][i];
  return sum;
}

long ConfusionMatrix::row_sum(int gold) const {
  long sum = 0;
  for (long c : counts[gold]) sum += c;
  return sum;
}

long ConfusionMatrix::col_sum(int pred) const {
  long sum = 0;
  for (const auto& row : counts) sum += row[pred];
  return sum;
}

ConfusionMatrix confusion_matrix(const std::vector<std::vector<int>>& gold,
                                 const std::vector<std::vector<int>>& pred,
                                 int num_labels) {
  if (gold.size() != pred.size()) {
    throw DataError("shape mismatch: " + std::to_string(gold.size()) +
                    " gold utterances vs " + std::to_string(pred.size()) +
                    " predicted");
  }
  ConfusionMatrix cm;
  cm.counts.assign(num_labels, std::vector<long>(num_labels, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size()) {
      throw DataError("shape mismatch in utterance " + std::to_string(i + 1) +
                      ": " + std::to_string(gold[i].size()) +
                      " gold tokens vs " + std::to_string(pred[i].size()) +
                      " predicted");
    }
    for (std::size_t t = 0; t < gold[i].size(); ++t) {
      int g = gold[i][t], p = pred[i][t];
      if (g < 0 || g >= num_labels || p < 0 || p >= num_labels) {
        throw DataError("label index out of range in utterance " +
                        std::to_string(i + 1));
      }
      ++cm.counts[g][p];
    }
  }
  return cm;
}

std::vector<LabelScore> per_label_prf(const ConfusionMatrix& cm) {
  std::vector<LabelScore> scores(cm.size());
  for (int l = 0; l < cm.size(); ++l) {
    LabelScore& s = scores[l];
    s.support = cm.row_sum(l);
    s.predicted = cm.col_sum(l);
    long hit = cm.counts[l][l];
    s.precision = s.predicted > 0 ? static_cast<double>(hit) / s.predicted : 0.0;
    s.recall = s.support > 0 ? static_cast<double>(hit) / s.support : 0.0;
    double pr = s.precision + s.recall;
    s.f_measure = pr > 0 ? 2.0 * s.precision * s.recall / pr : 0.0;
  }
  return scores;
}

EvalReport aggregate(const std::vector<std::vector<int>>& gold,
                     const std::vector<std::vector<int>>& pred,
                     int num_labels) {
  EvalReport report;
  report.confusion = confusion_matrix(gold, pred, num_labels);
  long total = report.confusion.total();
  if (total == 0) throw DataError("empty evaluation");
  report.per_label = per_label_prf(report.confusion);
  report.token_accuracy =
      static_cast<double>(report.confusion.trace()) / total;

  long exact = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == pred[i]) ++exact;
  }
  report.utterance_accuracy = static_cast<double>(exact) / gold.size();

  double f_sum = 0.0;
  int seen = 0;
  double weighted = 0.0;
  for (const LabelScore& s : report.per_label) {
    if (s.support + s.predicted > 0) {
      f_sum += s.f_measure;
      ++seen;
    }
    weighted += static_cast<double>(s.support) / total * s.f_measure;
  }
  report.macro_f = seen > 0 ? f_sum / seen : 0.0;
  report.weighted_f = weighted;
  return report;
}

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void pad_to(std::string& line, std::size_t width) {
  if (line.size() < width) line.append(width - line.size(), ' ');
}

std::string render_text(const EvalReport& r, const LabelSet& labels) {
  std::size_t name_width = 5;  // "Label"
  for (int l = 0; l < labels.size(); ++l) {
    name_width = std::max(name_width, labels.code(l).size());
  }

  std::string out;
  {
    std::string head = "Label";
    pad_to(head, name_width);
    out += head + "  Precision     Recall  F-Measure    Support\n";
  }
  for (int l = 0; l < labels.size(); ++l) {
    const LabelScore& s = r.per_label[l];
    std::string line = labels.code(l);
    pad_to(line, name_width);
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %9.4f  %9.4f  %9.4f  %9ld",
                  s.precision, s.recall, s.f_measure, s.support);
    out += line;
    out += buf;
    out += '\n';
  }
  out += '\n';
  out += "Tokens Accuracy (in %)      " +
         fmt("%.4f", 100.0 * r.token_accuracy) + '\n';
  out += "Utterances Accuracy (in %)  " +
         fmt("%.4f", 100.0 * r.utterance_accuracy) + '\n';
  out += "Average F-Measure           " + fmt("%.6f", r.macro_f) + '\n';
  out += "Weighted F-Measure          " + fmt("%.6f", r.weighted_f) + '\n';
  out += '\n';

  out += "Confusion matrix (rows gold, columns predicted)\n";
  std::size_t cell = 5;
  for (int l = 0; l < labels.size(); ++l) {
    cell = std::max(cell, labels.code(l).size());
    cell = std::max(cell, std::to_string(r.confusion.col_sum(l)).size());
  }
  auto right = [cell](std::string v) {
    std::string s(cell > v.size() ? cell - v.size() : 0, ' ');
    return s + v;
  };
  {
    std::string line(name_width, ' ');
    for (int p = 0; p < labels.size(); ++p) {
      line += "  " + right(labels.code(p));
    }
    out += line + '\n';
  }
  for (int g = 0; g < labels.size(); ++g) {
    std::string line = labels.code(g);
    pad_to(line, name_width);
    for (int p = 0; p < labels.size(); ++p) {
      line += "  " + right(std::to_string(r.confusion.counts[g][p]));
    }
    out += line + '\n';
  }
  return out;
}

std::string render_csv(const EvalReport& r, const LabelSet& labels) {
  std::string out = "label,precision,recall,f_measure,support\n";
  for (int l = 0; l < labels.size(); ++l) {
    const LabelScore& s = r.per_label[l];
    out += labels.code(l) + ',' + fmt("%.6f", s.precision) + ',' +
           fmt("%.6f", s.recall) + ',' + fmt("%.6f", s.f_measure) + ',' +
           std::to_string(s.support) + '\n';
  }
  out += "\nmetric,value\n";
  out += "tokens_accuracy_percent," + fmt("%.4f", 100.0 * r.token_accuracy) + '\n';
  out += "utterances_accuracy_percent," +
         fmt("%.4f", 100.0 * r.utterance_accuracy) + '\n';
  out += "average_f_measure," + fmt("%.6f", r.macro_f) + '\n';
  out += "weighted_f_measure," + fmt("%.6f", r.weighted_f) + '\n';

  out += "\ngold\\pred";
  for (int p = 0; p < labels.size(); ++p) out += ',' + labels.code(p);
  out += '\n';
  for (int g = 0; g < labels.size(); ++g) {
    out += labels.code(g);
    for (int p = 0; p < labels.size(); ++p) {
      out += ',' + std::to_string(r.confusion.counts[g][p]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string render_report(const EvalReport& report, const LabelSet& labels,
                          ReportFormat format) {
  if (report.per_label.size() != static_cast<std::size_t>(labels.size())) {
    throw ConfigError("report and label set disagree");
  }
  return format == ReportFormat::kText ? render_text(report, labels)
                                       : render_csv(report, labels);
}

}  // namespace mixtag
