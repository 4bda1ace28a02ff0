#ifndef MIXTAG_CRF_HPP
#define MIXTAG_CRF_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mixtag/corpus.hpp"
#include "mixtag/features.hpp"
#include "mixtag/lexicon.hpp"
#include "mixtag/templates.hpp"

namespace mixtag {

struct TrainConfig {
  double l2 = 1.0;        // L2 coefficient on the negative log-likelihood
  int max_iters = 200;
  double tol = 1e-5;      // stop when |df| / max(|f|, 1) drops below this
  int min_count = 1;      // feature count cutoff
  int threads = 0;        // 0 = all available
  int ngram_max = 0;      // 0 = off, else add character n-gram features, n<=this
  bool ascii_only = false;
};

// Maps expanded feature strings to weight slots. Unigram strings come first,
// each owning L consecutive slots (one per label); bigram strings follow,
// each owning L*L slots (previous-label major). Strings are kept sorted so
// numbering is a pure function of the string sets.
class FeatureIndex {
 public:
  FeatureIndex() = default;
  FeatureIndex(std::vector<std::string> unigram_strings,
               std::vector<std::string> bigram_strings, int num_labels);

  int num_labels() const { return num_labels_; }
  std::size_t num_weights() const { return num_weights_; }
  std::size_t num_unigram_weights() const {
    return unigram_strings_.size() * static_cast<std::size_t>(num_labels_);
  }

  const std::vector<std::string>& unigram_strings() const {
    return unigram_strings_;
  }
  const std::vector<std::string>& bigram_strings() const {
    return bigram_strings_;
  }

  // Base slot of a string's block, or -1 when unseen. Slot of (s, y) is
  // unigram_base(s) + y; slot of (s, yp, y) is bigram_base(s) + yp*L + y.
  std::int64_t unigram_base(std::string_view s) const;
  std::int64_t bigram_base(std::string_view s) const;

 private:
  // Lookups binary-search the sorted vectors; no side tables to keep in sync.
  std::vector<std::string> unigram_strings_;
  std::vector<std::string> bigram_strings_;
  int num_labels_ = 0;
  std::size_t num_weights_ = 0;
};

struct CrfModel {
  LabelSet labels;
  TemplateSet templates;
  FeatureIndex index;
  std::vector<double> weights;
  TrainConfig config;
  bool converged = true;
};

// Per-position expanded feature strings, deduplicated. uni[t] holds the
// unigram strings at position t (template expansions plus character n-grams
// of the surface when enabled); bi[t] holds the bigram strings anchored at
// destination position t, so bi[0] is always empty.
struct ExpandedSequence {
  std::vector<std::vector<std::string>> uni;
  std::vector<std::vector<std::string>> bi;
};

ExpandedSequence expand_sequence(const TemplateSet& templates,
                                 const ObservationMatrix& matrix,
                                 int ngram_max);

// One training sequence resolved against a FeatureIndex: gold labels plus
// the base slots of the known feature strings at each position. Unknown
// strings are dropped here and contribute nothing anywhere.
struct CompiledSequence {
  std::vector<int> gold;
  std::vector<std::vector<std::uint32_t>> uni;  // base slots per position
  std::vector<std::vector<std::uint32_t>> bi;   // base slots, bi[0] empty

  std::size_t length() const { return uni.size(); }
};

CompiledSequence compile_sequence(const FeatureIndex& index,
                                  const ExpandedSequence& expanded,
                                  const std::vector<int>* gold);

FeatureIndex build_feature_index(const LabeledCorpus& corpus,
                                 const TemplateSet& templates,
                                 const ResourceBundle& bundle,
                                 const TrainConfig& config);

std::vector<CompiledSequence> compile_corpus(const LabeledCorpus& corpus,
                                             const TemplateSet& templates,
                                             const FeatureIndex& index,
                                             const ResourceBundle& bundle,
                                             const TrainConfig& config);

// Log-domain scores for one sequence. node[t*L + y]; edge[(t-1)*L*L +
// yp*L + y] is the transition into position t, so edges exist for t >= 1.
struct Lattice {
  std::size_t T = 0;
  int L = 0;
  std::vector<double> node;
  std::vector<double> edge;

  double node_at(std::size_t t, int y) const {
    return node[t * static_cast<std::size_t>(L) + static_cast<std::size_t>(y)];
  }
  double edge_at(std::size_t t, int yp, int y) const {
    return edge[((t - 1) * static_cast<std::size_t>(L) +
                 static_cast<std::size_t>(yp)) *
                    static_cast<std::size_t>(L) +
                static_cast<std::size_t>(y)];
  }
};

Lattice score_compiled(const CompiledSequence& seq,
                       const std::vector<double>& weights, int num_labels);
Lattice score_lattice(const CrfModel& model, const ObservationMatrix& matrix);

double log_sum_exp(const double* v, std::size_t n);

// alpha/beta are T*L log-domain tables laid out like Lattice::node.
struct ForwardBackward {
  std::vector<double> alpha;
  std::vector<double> beta;
  double log_z = 0.0;           // from the forward pass
  double log_z_backward = 0.0;  // consistency check
};

ForwardBackward forward_backward(const Lattice& lat);

// node[t*L + y] = P(y_t = y); edge laid out like Lattice::edge holds the
// pairwise posteriors P(y_{t-1} = yp, y_t = y).
struct Marginals {
  std::vector<double> node;
  std::vector<double> edge;
};

Marginals posterior_marginals(const Lattice& lat, const ForwardBackward& fb);
Marginals posterior_marginals(const Lattice& lat);

// Regularized negative log-likelihood and its gradient over compiled
// sequences. Parallel over utterances; per-utterance contributions are
// reduced in utterance order, so the result is identical for any thread
// count. grad is resized and overwritten.
double nll_and_gradient(const std::vector<CompiledSequence>& data,
                        int num_labels, const std::vector<double>& weights,
                        double l2, int threads, std::vector<double>& grad);

// Serial single-pass accumulation, kept as the reference the parallel path
// is checked against (same math, different summation order).
double nll_gradient_reference(const std::vector<CompiledSequence>& data,
                              int num_labels,
                              const std::vector<double>& weights, double l2,
                              std::vector<double>& grad);

// Convenience wrapper for tests and gradient checks: expands and compiles
// the corpus under the model's templates and index, then evaluates.
std::pair<double, std::vector<double>> nll_and_gradient(
    const CrfModel& model, const LabeledCorpus& corpus,
    const ResourceBundle& bundle, double l2);

CrfModel train(const LabeledCorpus& corpus, const TemplateSet& templates,
               const ResourceBundle& bundle, const TrainConfig& config,
               std::ostream* log = nullptr);

std::vector<int> viterbi_path(const Lattice& lat);
std::vector<int> viterbi_decode(const CrfModel& model,
                                const ObservationMatrix& matrix);

// Decodes every utterance, in order. Parallel and order-preserving.
std::vector<std::vector<int>> decode_corpus(const CrfModel& model,
                                            const LabeledCorpus& corpus,
                                            const ResourceBundle& bundle,
                                            int threads);

std::string save_model(const CrfModel& model);
CrfModel load_model(std::string_view text);

}  // namespace mixtag

#endif  // MIXTAG_CRF_HPP
