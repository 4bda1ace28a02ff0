#include <cmath>
#include <cstdlib>

#include "mixtag/crf.hpp"
#include "mixtag/errors.hpp"
#include "parallel.hpp"

namespace mixtag {

double log_sum_exp(const double* v, std::size_t n) {
  double m = v[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] > m) m = v[i];
  }
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::exp(v[i] - m);
  return m + std::log(sum);
}

Lattice score_compiled(const CompiledSequence& seq,
                       const std::vector<double>& weights, int num_labels) {
  const std::size_t T = seq.length();
  const auto L = static_cast<std::size_t>(num_labels);
  Lattice lat;
  lat.T = T;
  lat.L = num_labels;
  lat.node.assign(T * L, 0.0);
  lat.edge.assign(T > 0 ? (T - 1) * L * L : 0, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::uint32_t base : seq.uni[t]) {
      for (std::size_t y = 0; y < L; ++y) {
        lat.node[t * L + y] += weights[base + y];
      }
    }
    if (t == 0) continue;
    double* edge = &lat.edge[(t - 1) * L * L];
    for (std::uint32_t base : seq.bi[t]) {
      const double* w = &weights[base];
      for (std::size_t i = 0; i < L * L; ++i) edge[i] += w[i];
    }
  }
  return lat;
}

Lattice score_lattice(const CrfModel& model, const ObservationMatrix& matrix) {
  model.templates.validate_columns(kObservationColumns);
  ExpandedSequence expanded =
      expand_sequence(model.templates, matrix, model.config.ngram_max);
  CompiledSequence seq = compile_sequence(model.index, expanded, nullptr);
  return score_compiled(seq, model.weights, model.labels.size());
}

ForwardBackward forward_backward(const Lattice& lat) {
  const std::size_t T = lat.T;
  const auto L = static_cast<std::size_t>(lat.L);
  ForwardBackward fb;
  if (T == 0) return fb;
  fb.alpha.assign(T * L, 0.0);
  fb.beta.assign(T * L, 0.0);
  std::vector<double> scratch(L);

  for (std::size_t y = 0; y < L; ++y) fb.alpha[y] = lat.node[y];
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t yp = 0; yp < L; ++yp) {
        scratch[yp] = fb.alpha[(t - 1) * L + yp] +
                      lat.edge[((t - 1) * L + yp) * L + y];
      }
      fb.alpha[t * L + y] = lat.node[t * L + y] + log_sum_exp(scratch.data(), L);
    }
  }
  fb.log_z = log_sum_exp(&fb.alpha[(T - 1) * L], L);

  // beta[T-1] stays 0
  for (std::size_t t = T - 1; t-- > 0;) {
    for (std::size_t yp = 0; yp < L; ++yp) {
      for (std::size_t y = 0; y < L; ++y) {
        scratch[y] = lat.edge[(t * L + yp) * L + y] +
                     lat.node[(t + 1) * L + y] + fb.beta[(t + 1) * L + y];
      }
      fb.beta[t * L + yp] = log_sum_exp(scratch.data(), L);
    }
  }
  for (std::size_t y = 0; y < L; ++y) scratch[y] = lat.node[y] + fb.beta[y];
  fb.log_z_backward = log_sum_exp(scratch.data(), L);
  return fb;
}

Marginals posterior_marginals(const Lattice& lat, const ForwardBackward& fb) {
  const std::size_t T = lat.T;
  const auto L = static_cast<std::size_t>(lat.L);
  Marginals marg;
  marg.node.resize(T * L);
  marg.edge.resize(T > 0 ? (T - 1) * L * L : 0);
  for (std::size_t i = 0; i < T * L; ++i) {
    marg.node[i] = std::exp(fb.alpha[i] + fb.beta[i] - fb.log_z);
  }
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t yp = 0; yp < L; ++yp) {
      for (std::size_t y = 0; y < L; ++y) {
        std::size_t e = ((t - 1) * L + yp) * L + y;
        marg.edge[e] = std::exp(fb.alpha[(t - 1) * L + yp] + lat.edge[e] +
                                lat.node[t * L + y] + fb.beta[t * L + y] -
                                fb.log_z);
      }
    }
  }
  return marg;
}

Marginals posterior_marginals(const Lattice& lat) {
  return posterior_marginals(lat, forward_backward(lat));
}

std::vector<int> viterbi_path(const Lattice& lat) {
  const std::size_t T = lat.T;
  if (T == 0) return {};
  const auto L = static_cast<std::size_t>(lat.L);
  std::vector<double> best(T * L);
  std::vector<int> back(T * L, 0);
  for (std::size_t y = 0; y < L; ++y) best[y] = lat.node[y];
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      double best_score = best[(t - 1) * L] + lat.edge[(t - 1) * L * L + y];
      int best_prev = 0;
      for (std::size_t yp = 1; yp < L; ++yp) {
        double s = best[(t - 1) * L + yp] + lat.edge[((t - 1) * L + yp) * L + y];
        // strict > keeps the lowest previous label on ties
        if (s > best_score) {
          best_score = s;
          best_prev = static_cast<int>(yp);
        }
      }
      best[t * L + y] = best_score + lat.node[t * L + y];
      back[t * L + y] = best_prev;
    }
  }
  std::size_t last = 0;
  for (std::size_t y = 1; y < L; ++y) {
    if (best[(T - 1) * L + y] > best[(T - 1) * L + last]) last = y;
  }
  std::vector<int> path(T);
  path[T - 1] = static_cast<int>(last);
  for (std::size_t t = T - 1; t > 0; --t) {
    path[t - 1] = back[t * L + static_cast<std::size_t>(path[t])];
  }
  return path;
}

std::vector<int> viterbi_decode(const CrfModel& model,
                                const ObservationMatrix& matrix) {
  if (matrix.size() == 0) return {};
  return viterbi_path(score_lattice(model, matrix));
}

std::vector<std::vector<int>> decode_corpus(const CrfModel& model,
                                            const LabeledCorpus& corpus,
                                            const ResourceBundle& bundle,
                                            int threads) {
  model.templates.validate_columns(kObservationColumns);
  const std::size_t n = corpus.utterances.size();
  std::vector<std::vector<int>> out(n);
  const int nthreads = resolve_threads(threads);
  FeatureOptions options;
  options.ascii_only = model.config.ascii_only;
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    ObservationMatrix matrix =
        build_observation_matrix(corpus.utterances[i], bundle, options);
    ExpandedSequence expanded =
        expand_sequence(model.templates, matrix, model.config.ngram_max);
    CompiledSequence seq = compile_sequence(model.index, expanded, nullptr);
    out[i] = viterbi_path(score_compiled(seq, model.weights, model.labels.size()));
  }
  return out;
}

}  // namespace mixtag
