#ifndef MIXTAG_EVAL_HPP
#define MIXTAG_EVAL_HPP

#include <string>
#include <vector>

#include "mixtag/corpus.hpp"

namespace mixtag {

// counts[gold][pred] over the configured label set
struct ConfusionMatrix {
  std::vector<std::vector<long>> counts;

  int size() const { return static_cast<int>(counts.size()); }
  long total() const;
  long trace() const;
  long row_sum(int gold) const;
  long col_sum(int pred) const;
};

ConfusionMatrix confusion_matrix(const std::vector<std::vector<int>>& gold,
                                 const std::vector<std::vector<int>>& pred,
                                 int num_labels);

struct LabelScore {
  double precision = 0.0;  // diag / column sum, 0 when nothing predicted
  double recall = 0.0;     // diag / row sum, 0 when no gold tokens
  double f_measure = 0.0;  // 2PR/(P+R), 0 when P+R == 0
  long support = 0;        // gold tokens with this label
  long predicted = 0;      // tokens predicted as this label
};

std::vector<LabelScore> per_label_prf(const ConfusionMatrix& cm);

struct EvalReport {
  std::vector<LabelScore> per_label;
  double token_accuracy = 0.0;
  double utterance_accuracy = 0.0;
  double macro_f = 0.0;    // mean F over labels seen in gold or predictions
  double weighted_f = 0.0; // F averaged with gold-support weights
  ConfusionMatrix confusion;
};

EvalReport aggregate(const std::vector<std::vector<int>>& gold,
                     const std::vector<std::vector<int>>& pred,
                     int num_labels);

enum class ReportFormat { kText, kCsv };

std::string render_report(const EvalReport& report, const LabelSet& labels,
                          ReportFormat format);

}  // namespace mixtag

#endif  // MIXTAG_EVAL_HPP
