#include "mixtag/cli.hpp"

#include <algorithm>
#include <array>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixtag/corpus.hpp"
#include "mixtag/crf.hpp"
#include "mixtag/errors.hpp"
#include "mixtag/eval.hpp"
#include "mixtag/features.hpp"
#include "mixtag/pipeline.hpp"
#include "mixtag/templates.hpp"

namespace mixtag {

namespace {

using nlohmann::json;

json load_config_json(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return json::object();
  json parsed;
  try {
    parsed = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (!parsed.is_object()) {
    throw ConfigError("config file '" + path + "' must hold a JSON object");
  }
  static const char* kKnown[] = {
      "lex_en",    "lex_bn",    "lex_hi",   "lex_gu",    "lex_kn",
      "lex_ml",    "lex_mr",    "lex_ta",   "lex_te",    "wordlists",
      "emoticons", "gazetteer", "templates", "labels",   "l2",
      "max_iters", "tol",       "min_count", "ngrams",   "ascii_only",
      "threads",   "seed"};
  for (const auto& [key, value] : parsed.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown),
                     [&key](const char* k) { return key == k; }) ==
        std::end(kKnown)) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return parsed;
}

template <typename T>
void config_default(const json& cfg, const char* key, T& out) {
  if (!cfg.contains(key)) return;
  try {
    out = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + std::string(key) +
                      "' has the wrong type");
  }
}

struct ResourceFlags {
  std::array<std::string, 9> lex;
  std::string wordlists;
  std::string emoticons;
  std::string gazetteer;

  ResourceSpec spec() const {
    return ResourceSpec{lex, wordlists, emoticons, gazetteer};
  }
};

void add_resource_flags(CLI::App* cmd, ResourceFlags& r, const json& cfg) {
  const auto& codes = LabelSet::language_codes();
  for (std::size_t i = 0; i < codes.size(); ++i) {
    config_default(cfg, ("lex_" + codes[i]).c_str(), r.lex[i]);
    cmd->add_option("--lex-" + codes[i], r.lex[i],
                    "lexicon for " + codes[i] +
                        ": freq:PATH, pairs:PATH, list:PATH or plain PATH");
  }
  config_default(cfg, "wordlists", r.wordlists);
  cmd->add_option("--wordlists", r.wordlists,
                  "directory written by build-lexicons; fills languages "
                  "without an explicit --lex-XX");
  config_default(cfg, "emoticons", r.emoticons);
  cmd->add_option("--emoticons", r.emoticons, "emoticon list, one per line");
  config_default(cfg, "gazetteer", r.gazetteer);
  cmd->add_option("--gazetteer", r.gazetteer,
                  "named-entity list, one per line");
}

void add_config_flag(CLI::App* cmd, std::string& path) {
  cmd->add_option("--config", path,
                  "JSON file with defaults for these flags; flags win");
}

LabeledCorpus parse_corpus_file(const std::string& path, bool expect_labels,
                                const LabelSet& labels) {
  try {
    return parse_corpus(read_file(path), expect_labels, labels);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void emit(const std::string& out_path, std::string_view content,
          std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_file(out_path, content);
  }
}

int run_impl(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  json cfg = load_config_json(args);

  CLI::App app{"word-level language tagger for Roman-script code-mixed text"};
  app.require_subcommand(1);

  // ---- build-lexicons ----
  auto* cmd_build = app.add_subcommand(
      "build-lexicons", "extract per-language wordlists and a gazetteer "
                        "from a labeled corpus");
  struct {
    std::string train, out_dir, labels, config;
  } build_opts;
  config_default(cfg, "labels", build_opts.labels);
  cmd_build->add_option("--train", build_opts.train, "labeled corpus")
      ->required();
  cmd_build->add_option("--out-dir", build_opts.out_dir, "output directory")
      ->required();
  cmd_build->add_option("--labels", build_opts.labels,
                        "comma-separated label set override");
  add_config_flag(cmd_build, build_opts.config);

  // ---- features ----
  auto* cmd_features = app.add_subcommand(
      "features", "dump the observation matrix for a corpus as TSV");
  struct {
    std::string input, labels, out, config;
    bool labeled = false;
    bool ascii_only = false;
    ResourceFlags resources;
  } feat_opts;
  config_default(cfg, "labels", feat_opts.labels);
  config_default(cfg, "ascii_only", feat_opts.ascii_only);
  cmd_features->add_option("--input", feat_opts.input, "corpus file")
      ->required();
  cmd_features->add_flag("--labeled", feat_opts.labeled,
                         "input carries gold labels; echo them as a final "
                         "column");
  cmd_features->add_flag("--ascii-only", feat_opts.ascii_only,
                         "restrict letter and case tests to ASCII");
  cmd_features->add_option("--labels", feat_opts.labels,
                           "comma-separated label set override");
  cmd_features->add_option("-o,--out", feat_opts.out,
                           "output file (default stdout)");
  add_resource_flags(cmd_features, feat_opts.resources, cfg);
  add_config_flag(cmd_features, feat_opts.config);

  // ---- train ----
  auto* cmd_train =
      app.add_subcommand("train", "train a tagging model on a labeled corpus");
  struct {
    std::string train, templates = "default", labels, out, config;
    long seed = 0;
    TrainConfig tc;
    ResourceFlags resources;
  } train_opts;
  config_default(cfg, "templates", train_opts.templates);
  config_default(cfg, "labels", train_opts.labels);
  config_default(cfg, "l2", train_opts.tc.l2);
  config_default(cfg, "max_iters", train_opts.tc.max_iters);
  config_default(cfg, "tol", train_opts.tc.tol);
  config_default(cfg, "min_count", train_opts.tc.min_count);
  config_default(cfg, "ngrams", train_opts.tc.ngram_max);
  config_default(cfg, "ascii_only", train_opts.tc.ascii_only);
  config_default(cfg, "threads", train_opts.tc.threads);
  config_default(cfg, "seed", train_opts.seed);
  cmd_train->add_option("--train", train_opts.train, "labeled corpus")
      ->required();
  cmd_train->add_option("-o,--out", train_opts.out, "model file to write")
      ->required();
  cmd_train->add_option("--templates", train_opts.templates,
                        "'default' or a template file");
  cmd_train->add_option("--labels", train_opts.labels,
                        "comma-separated label set override");
  cmd_train->add_option("--l2", train_opts.tc.l2, "L2 coefficient");
  cmd_train->add_option("--max-iters", train_opts.tc.max_iters,
                        "iteration cap");
  cmd_train->add_option("--tol", train_opts.tc.tol,
                        "relative objective-change stopping threshold");
  cmd_train->add_option("--min-count", train_opts.tc.min_count,
                        "drop feature strings seen fewer times than this");
  cmd_train->add_option("--ngrams", train_opts.tc.ngram_max,
                        "also use character n-grams up to this length (0=off)");
  cmd_train->add_flag("--ascii-only", train_opts.tc.ascii_only,
                      "restrict letter and case tests to ASCII");
  cmd_train->add_option("--threads", train_opts.tc.threads,
                        "worker threads (0 = all); results do not depend on "
                        "this");
  cmd_train->add_option("--seed", train_opts.seed,
                        "accepted and ignored; training is deterministic");
  add_resource_flags(cmd_train, train_opts.resources, cfg);
  add_config_flag(cmd_train, train_opts.config);

  // ---- tag ----
  auto* cmd_tag = app.add_subcommand("tag", "label a corpus with a model");
  struct {
    std::string model, input, out, config;
    bool labeled = false;
    int threads = 0;
    ResourceFlags resources;
  } tag_opts;
  config_default(cfg, "threads", tag_opts.threads);
  cmd_tag->add_option("--model", tag_opts.model, "model file")->required();
  cmd_tag->add_option("--input", tag_opts.input, "corpus to tag")->required();
  cmd_tag->add_flag("--labeled", tag_opts.labeled,
                    "input carries gold labels; they are ignored");
  cmd_tag->add_option("--threads", tag_opts.threads,
                      "worker threads (0 = all)");
  cmd_tag->add_option("-o,--out", tag_opts.out,
                      "output file (default stdout)");
  add_resource_flags(cmd_tag, tag_opts.resources, cfg);
  add_config_flag(cmd_tag, tag_opts.config);

  // ---- eval ----
  auto* cmd_eval = app.add_subcommand(
      "eval", "score a predicted corpus against a gold corpus");
  struct {
    std::string gold, pred, labels, out, config;
    bool csv = false;
  } eval_opts;
  config_default(cfg, "labels", eval_opts.labels);
  cmd_eval->add_option("--gold", eval_opts.gold, "gold corpus")->required();
  cmd_eval->add_option("--pred", eval_opts.pred, "predicted corpus")
      ->required();
  cmd_eval->add_option("--labels", eval_opts.labels,
                       "comma-separated label set override");
  cmd_eval->add_flag("--csv", eval_opts.csv, "machine-readable output");
  cmd_eval->add_option("-o,--out", eval_opts.out,
                       "output file (default stdout)");
  add_config_flag(cmd_eval, eval_opts.config);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (cmd_build->parsed()) {
    LabelSet labels = parse_label_csv(build_opts.labels);
    LabeledCorpus corpus = parse_corpus_file(build_opts.train, true, labels);
    write_wordlist_files(corpus, build_opts.out_dir, out);
    return 0;
  }

  if (cmd_features->parsed()) {
    LabelSet labels = parse_label_csv(feat_opts.labels);
    LabeledCorpus corpus =
        parse_corpus_file(feat_opts.input, feat_opts.labeled, labels);
    ResourceBundle bundle = load_resources(feat_opts.resources.spec(), err);
    FeatureOptions options;
    options.ascii_only = feat_opts.ascii_only;
    std::string result;
    for (const Utterance& utt : corpus.utterances) {
      if (!result.empty()) result += '\n';
      ObservationMatrix matrix =
          build_observation_matrix(utt, bundle, options);
      result += render_matrix_tsv(matrix, utt,
                                  feat_opts.labeled ? &labels : nullptr);
    }
    emit(feat_opts.out, result, out);
    return 0;
  }

  if (cmd_train->parsed()) {
    LabelSet labels = parse_label_csv(train_opts.labels);
    LabeledCorpus corpus = parse_corpus_file(train_opts.train, true, labels);
    ResourceBundle bundle = load_resources(train_opts.resources.spec(), err);
    TemplateSet templates = load_templates(train_opts.templates);
    CrfModel model = train(corpus, templates, bundle, train_opts.tc, &out);
    if (!model.converged) {
      err << "warning: hit the iteration limit before converging\n";
    }
    write_file(train_opts.out, save_model(model));
    out << "wrote " << train_opts.out << " ("
        << model.index.num_weights() << " weights)\n";
    return 0;
  }

  if (cmd_tag->parsed()) {
    CrfModel model = load_model(read_file(tag_opts.model));
    LabeledCorpus corpus =
        parse_corpus_file(tag_opts.input, tag_opts.labeled, model.labels);
    ResourceBundle bundle = load_resources(tag_opts.resources.spec(), err);
    auto predictions = decode_corpus(model, corpus, bundle, tag_opts.threads);
    emit(tag_opts.out, write_tagged(corpus, predictions, model.labels), out);
    return 0;
  }

  // eval
  LabelSet labels = parse_label_csv(eval_opts.labels);
  LabeledCorpus gold = parse_corpus_file(eval_opts.gold, true, labels);
  LabeledCorpus pred = parse_corpus_file(eval_opts.pred, true, labels);
  EvalReport report =
      aggregate(gold_labels(gold), gold_labels(pred), labels.size());
  emit(eval_opts.out,
       render_report(report, labels,
                     eval_opts.csv ? ReportFormat::kCsv : ReportFormat::kText),
       out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return run_impl(args, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mixtag
