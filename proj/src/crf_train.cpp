#include "mixtag/crf.hpp"
#include "mixtag/errors.hpp"
#include "mixtag/lbfgs.hpp"

namespace mixtag {

namespace {

void validate_config(const TrainConfig& config) {
  if (config.l2 < 0) throw ConfigError("l2 must be >= 0");
  if (config.max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (config.tol <= 0) throw ConfigError("tol must be > 0");
  if (config.min_count < 1) throw ConfigError("min_count must be >= 1");
  if (config.ngram_max < 0 || config.ngram_max > 5) {
    throw ConfigError("ngram_max must be in [0,5]");
  }
  if (config.threads < 0) throw ConfigError("threads must be >= 0");
}

}  // namespace

CrfModel train(const LabeledCorpus& corpus, const TemplateSet& templates,
               const ResourceBundle& bundle, const TrainConfig& config,
               std::ostream* log) {
  validate_config(config);
  if (!corpus.labeled) throw DataError("corpus is not labeled");
  if (corpus.labels.size() < 2) throw ConfigError("need at least two labels");
  templates.validate_columns(kObservationColumns);

  CrfModel model;
  model.labels = corpus.labels;
  model.templates = templates;
  model.config = config;
  model.index = build_feature_index(corpus, templates, bundle, config);
  model.weights.assign(model.index.num_weights(), 0.0);

  std::vector<CompiledSequence> data =
      compile_corpus(corpus, templates, model.index, bundle, config);

  const int num_labels = corpus.labels.size();
  auto objective = [&data, num_labels, &config](const std::vector<double>& x,
                                                std::vector<double>& grad) {
    return nll_and_gradient(data, num_labels, x, config.l2, config.threads,
                            grad);
  };

  LbfgsOptions options;
  options.max_iters = config.max_iters;
  options.tol = config.tol;
  LbfgsResult result = lbfgs_minimize(objective, model.weights, options, log);
  model.converged = result.converged;
  if (log) {
    *log << "finished after " << result.iterations
         << " iterations, objective " << result.value
         << (result.converged ? "" : " (iteration limit hit)") << "\n";
  }
  return model;
}

}  // namespace mixtag
