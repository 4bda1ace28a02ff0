#include <algorithm>
#include <cmath>

#include "mixtag/crf.hpp"
#include "mixtag/errors.hpp"
#include "parallel.hpp"

namespace mixtag {

namespace {

// Walks one sequence and hands every (weight slot, expected - empirical)
// pair to sink in a fixed order: positions ascending, feature bases in
// stored order, labels ascending. Returns the sequence's share of the
// negative log-likelihood.
template <typename Sink>
double sequence_terms(const CompiledSequence& seq, int num_labels,
                      const std::vector<double>& weights, Sink&& sink) {
  const std::size_t T = seq.length();
  const auto L = static_cast<std::size_t>(num_labels);
  Lattice lat = score_compiled(seq, weights, num_labels);
  ForwardBackward fb = forward_backward(lat);
  Marginals marg = posterior_marginals(lat, fb);

  double gold_score = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const auto gold = static_cast<std::size_t>(seq.gold[t]);
    gold_score += lat.node[t * L + gold];
    if (t > 0) {
      gold_score +=
          lat.edge[((t - 1) * L + static_cast<std::size_t>(seq.gold[t - 1])) *
                       L +
                   gold];
    }
    for (std::uint32_t base : seq.uni[t]) {
      for (std::size_t y = 0; y < L; ++y) {
        double g = marg.node[t * L + y] - (y == gold ? 1.0 : 0.0);
        sink(base + y, g);
      }
    }
    if (t == 0) continue;
    const auto gold_prev = static_cast<std::size_t>(seq.gold[t - 1]);
    const double* edge_marg = &marg.edge[(t - 1) * L * L];
    for (std::uint32_t base : seq.bi[t]) {
      for (std::size_t yp = 0; yp < L; ++yp) {
        for (std::size_t y = 0; y < L; ++y) {
          double g = edge_marg[yp * L + y] -
                     (yp == gold_prev && y == gold ? 1.0 : 0.0);
          sink(base + yp * L + y, g);
        }
      }
    }
  }
  return fb.log_z - gold_score;
}

double add_regularizer(const std::vector<double>& weights, double l2,
                       std::vector<double>& grad) {
  double penalty = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    penalty += weights[k] * weights[k];
    grad[k] += l2 * weights[k];
  }
  return 0.5 * l2 * penalty;
}

void check_finite(double value, const std::vector<double>& grad) {
  if (!std::isfinite(value)) throw NumericError("numeric overflow");
  for (double g : grad) {
    if (!std::isfinite(g)) throw NumericError("numeric overflow");
  }
}

// Dense scratch reused across the utterances one thread handles. Entries
// are live only when their stamp matches the current epoch, so resetting
// between utterances costs nothing.
struct SparseAccumulator {
  std::vector<double> value;
  std::vector<std::uint32_t> stamp;
  std::vector<std::uint32_t> touched;
  std::uint32_t epoch = 0;

  explicit SparseAccumulator(std::size_t n) : value(n, 0.0), stamp(n, 0) {}

  void begin() {
    ++epoch;
    touched.clear();
  }
  void add(std::uint32_t idx, double v) {
    if (stamp[idx] != epoch) {
      stamp[idx] = epoch;
      value[idx] = 0.0;
      touched.push_back(idx);
    }
    value[idx] += v;
  }
  // (slot, total) pairs sorted by slot
  std::vector<std::pair<std::uint32_t, double>> take() {
    std::sort(touched.begin(), touched.end());
    std::vector<std::pair<std::uint32_t, double>> out;
    out.reserve(touched.size());
    for (std::uint32_t idx : touched) out.emplace_back(idx, value[idx]);
    return out;
  }
};

}  // namespace

double nll_and_gradient(const std::vector<CompiledSequence>& data,
                        int num_labels, const std::vector<double>& weights,
                        double l2, int threads, std::vector<double>& grad) {
  const std::size_t n = data.size();
  std::vector<std::vector<std::pair<std::uint32_t, double>>> parts(n);
  std::vector<double> nll_parts(n, 0.0);
  const int nthreads = resolve_threads(threads);

#pragma omp parallel num_threads(nthreads)
  {
    SparseAccumulator acc(weights.size());
#pragma omp for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
      acc.begin();
      nll_parts[i] = sequence_terms(
          data[i], num_labels, weights,
          [&acc](std::uint32_t idx, double v) { acc.add(idx, v); });
      parts[i] = acc.take();
    }
  }

  // Reduce in utterance order: the sum is the same no matter which thread
  // produced which part.
  double value = 0.0;
  grad.assign(weights.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    value += nll_parts[i];
    for (const auto& [idx, v] : parts[i]) grad[idx] += v;
  }
  value += add_regularizer(weights, l2, grad);
  check_finite(value, grad);
  return value;
}

double nll_gradient_reference(const std::vector<CompiledSequence>& data,
                              int num_labels,
                              const std::vector<double>& weights, double l2,
                              std::vector<double>& grad) {
  double value = 0.0;
  grad.assign(weights.size(), 0.0);
  for (const CompiledSequence& seq : data) {
    value += sequence_terms(seq, num_labels, weights,
                            [&grad](std::uint32_t idx, double v) {
                              grad[idx] += v;
                            });
  }
  value += add_regularizer(weights, l2, grad);
  check_finite(value, grad);
  return value;
}

std::vector<CompiledSequence> compile_corpus(const LabeledCorpus& corpus,
                                             const TemplateSet& templates,
                                             const FeatureIndex& index,
                                             const ResourceBundle& bundle,
                                             const TrainConfig& config) {
  if (!corpus.labeled) throw DataError("corpus is not labeled");
  FeatureOptions options;
  options.ascii_only = config.ascii_only;
  std::vector<CompiledSequence> data;
  data.reserve(corpus.utterances.size());
  for (const Utterance& utt : corpus.utterances) {
    ObservationMatrix matrix = build_observation_matrix(utt, bundle, options);
    ExpandedSequence expanded =
        expand_sequence(templates, matrix, config.ngram_max);
    std::vector<int> gold(utt.size());
    for (std::size_t t = 0; t < utt.size(); ++t) gold[t] = utt.tokens[t].gold;
    data.push_back(compile_sequence(index, expanded, &gold));
  }
  return data;
}

std::pair<double, std::vector<double>> nll_and_gradient(
    const CrfModel& model, const LabeledCorpus& corpus,
    const ResourceBundle& bundle, double l2) {
  std::vector<CompiledSequence> data = compile_corpus(
      corpus, model.templates, model.index, bundle, model.config);
  std::vector<double> grad;
  double value = nll_and_gradient(data, model.labels.size(), model.weights,
                                  l2, model.config.threads, grad);
  return {value, std::move(grad)};
}

}  // namespace mixtag
