// End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
// exit code is the number of failures.
//
//   usage: mixtag_acceptance <mixtag-binary> <source-dir>
//
// The oracle-based checks (gradients, decoding, marginals) run in-process
// against deliberately naive reference implementations; the pipeline checks
// drive the real CLI binary through std::system.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "golden_fixture.hpp"
#include "mixtag/corpus.hpp"
#include "mixtag/crf.hpp"
#include "mixtag/eval.hpp"
#include "mixtag/pipeline.hpp"
#include "mixtag/templates.hpp"
#include "oracles.hpp"
#include "synth.hpp"

#ifdef _WIN32
#error "the acceptance runner shells out POSIX-style"
#endif
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace mixtag;
namespace mt = mixtag::testing;

namespace {

std::string g_mixtag;
fs::path g_scratch;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string spath(const std::string& name) {
  return (g_scratch / name).string();
}

// Runs the real binary; stdout/stderr land in scratch files so failures can
// be inspected after the run.
int run_mixtag(const std::string& args, const std::string& tag) {
  std::string cmd = "\"" + g_mixtag + "\" " + args + " > " +
                    spath(tag + ".out") + " 2> " + spath(tag + ".err");
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
}

// Pulls "key,<value>" out of a CSV eval report.
double csv_metric(const std::string& csv, const std::string& key) {
  std::string needle = key + ",";
  std::size_t pos = csv.find(needle);
  if (pos == std::string::npos) return std::nan("");
  return std::strtod(csv.c_str() + pos + needle.size(), nullptr);
}

bool check_gradient_oracle(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20150801);
  int instances = 0;
  double worst = 0.0;
  while (instances < 20) {
    int L = 2 + static_cast<int>(mt::uniform_below(rng, 3));  // 2..4
    auto Lz = static_cast<std::uint32_t>(L);
    // keep the weight vector at 30 slots or fewer
    std::uint32_t max_uni = (30 - Lz * Lz) / Lz;
    std::uint32_t num_uni =
        2 + mt::uniform_below(rng, std::min<std::uint32_t>(max_uni, 4) - 1);
    std::uint32_t num_bi = 1;
    std::size_t dim = num_uni * Lz + num_bi * Lz * Lz;
    if (dim > 30) continue;

    std::vector<CompiledSequence> data;
    std::size_t T = 1 + mt::uniform_below(rng, 5);  // 1..5
    data.push_back(mt::random_sequence(rng, T, L, num_uni, num_bi));

    std::vector<double> w(dim);
    for (double& v : w) v = mt::uniform_real(rng, -1.0, 1.0);
    double l2 = instances % 2 == 0 ? 0.0 : 0.3;

    std::vector<double> grad;
    nll_gradient_reference(data, L, w, l2, grad);
    auto f = [&](const std::vector<double>& x) {
      std::vector<double> unused;
      return nll_gradient_reference(data, L, x, l2, unused);
    };
    std::vector<double> fd = mt::finite_difference_gradient(f, w, 1e-5);
    for (std::size_t k = 0; k < dim; ++k) {
      double rel = std::abs(grad[k] - fd[k]) /
                   std::max({std::abs(grad[k]), std::abs(fd[k]), 1.0});
      worst = std::max(worst, rel);
    }
    ++instances;
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << instances << " instances, worst relative error " << worst << ", "
    << elapsed << "s";
  detail = d.str();
  return worst <= 1e-6 && elapsed < 5.0;
}

bool check_inference_oracle(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20150802);
  double worst_logz = 0.0;
  int exact_hits = 0;
  const int kModels = 100;
  for (int m = 0; m < kModels; ++m) {
    std::size_t T = 1 + mt::uniform_below(rng, 6);  // 1..6
    int L = 2 + static_cast<int>(mt::uniform_below(rng, 3));
    Lattice lat = mt::random_lattice(rng, T, L, 3.0);
    mt::BruteForce bf = mt::brute_force(lat);

    std::vector<int> path = viterbi_path(lat);
    // both sides accumulate in the same association order, so the best
    // score must match bit for bit
    if (mt::path_score(lat, path) == bf.best_score) ++exact_hits;

    ForwardBackward fb = forward_backward(lat);
    worst_logz = std::max(worst_logz, std::abs(fb.log_z - bf.log_z));
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << exact_hits << "/" << kModels << " exact decodes, worst |logZ delta| "
    << worst_logz << ", " << elapsed << "s";
  detail = d.str();
  return exact_hits == kModels && worst_logz <= 1e-9 && elapsed < 10.0;
}

bool check_marginal_consistency(std::string& detail) {
  std::mt19937 rng(20150803);
  double worst = 0.0;
  for (int m = 0; m < 50; ++m) {
    std::size_t T = 1 + mt::uniform_below(rng, 6);
    int L = 2 + static_cast<int>(mt::uniform_below(rng, 3));
    auto Lz = static_cast<std::size_t>(L);
    Lattice lat = mt::random_lattice(rng, T, L, 3.0);
    ForwardBackward fb = forward_backward(lat);
    Marginals marg = posterior_marginals(lat, fb);

    worst = std::max(worst, std::abs(fb.log_z - fb.log_z_backward));
    for (std::size_t t = 0; t < T; ++t) {
      double sum = 0.0;
      for (std::size_t y = 0; y < Lz; ++y) sum += marg.node[t * Lz + y];
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    for (std::size_t t = 1; t < T; ++t) {
      for (std::size_t y = 0; y < Lz; ++y) {
        double acc = 0.0;
        for (std::size_t yp = 0; yp < Lz; ++yp) {
          acc += marg.edge[((t - 1) * Lz + yp) * Lz + y];
        }
        worst = std::max(worst, std::abs(acc - marg.node[t * Lz + y]));
      }
      for (std::size_t yp = 0; yp < Lz; ++yp) {
        double acc = 0.0;
        for (std::size_t y = 0; y < Lz; ++y) {
          acc += marg.edge[((t - 1) * Lz + yp) * Lz + y];
        }
        worst = std::max(worst, std::abs(acc - marg.node[(t - 1) * Lz + yp]));
      }
    }
  }
  std::ostringstream d;
  d << "worst inconsistency " << worst;
  detail = d.str();
  return worst <= 1e-9;
}

bool check_synthetic_pipeline(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  mt::SynthOptions opt;  // 200-word vocabularies, 200 train / 50 test
  mt::SynthData data = mt::make_synthetic(opt);
  write_file(spath("synth_train.tsv"), data.train_tsv);
  write_file(spath("synth_test.tsv"), data.test_tsv);

  std::string lexdir = spath("synth_lex");
  if (run_mixtag("build-lexicons --train " + spath("synth_train.tsv") +
                     " --out-dir " + lexdir + " --labels en,bn",
                 "synth_build") != 0) {
    detail = "build-lexicons failed, see synth_build.err";
    return false;
  }
  if (run_mixtag("train --train " + spath("synth_train.tsv") + " -o " +
                     spath("synth_model.txt") +
                     " --labels en,bn --wordlists " + lexdir,
                 "synth_train") != 0) {
    detail = "train failed, see synth_train.err";
    return false;
  }
  for (const char* split : {"train", "test"}) {
    std::string s(split);
    if (run_mixtag("tag --model " + spath("synth_model.txt") + " --input " +
                       spath("synth_" + s + ".tsv") +
                       " --labeled --wordlists " + lexdir + " -o " +
                       spath("synth_" + s + "_pred.tsv"),
                   "synth_tag_" + s) != 0) {
      detail = "tag failed on the " + s + " split";
      return false;
    }
    if (run_mixtag("eval --gold " + spath("synth_" + s + ".tsv") + " --pred " +
                       spath("synth_" + s + "_pred.tsv") +
                       " --labels en,bn --csv -o " +
                       spath("synth_" + s + "_eval.csv"),
                   "synth_eval_" + s) != 0) {
      detail = "eval failed on the " + s + " split";
      return false;
    }
  }
  double train_acc = csv_metric(read_file(spath("synth_train_eval.csv")),
                                "tokens_accuracy_percent");
  double test_acc = csv_metric(read_file(spath("synth_test_eval.csv")),
                               "tokens_accuracy_percent");
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "train " << train_acc << "%, test " << test_acc << "%, " << elapsed
    << "s";
  detail = d.str();
  return train_acc >= 99.0 && test_acc >= 95.0 && elapsed < 30.0;
}

bool check_context_disambiguation(std::string& detail) {
  mt::SynthOptions opt;
  opt.switch_prob = 0.0;  // monolingual utterances: context is decisive
  opt.shared_word = "take";
  opt.seed = 20150814;
  mt::SynthData data = mt::make_synthetic(opt);

  LabelSet labels({"en", "bn"});
  LabeledCorpus train_corpus = parse_corpus(data.train_tsv, true, labels);
  LabeledCorpus test_corpus = parse_corpus(data.test_tsv, true, labels);

  ResourceBundle bundle;
  auto lists = build_wordlists_from_corpus(train_corpus);
  for (std::size_t i = 0; i < LabelSet::language_codes().size(); ++i) {
    bundle.per_language[i] = lists.at(LabelSet::language_codes()[i]);
  }
  // the shared word sits in both lexicons, so its LEX columns cannot
  // separate the labels
  if (!bundle.per_language[0].contains("take") ||
      !bundle.per_language[1].contains("take")) {
    detail = "shared word missing from a lexicon";
    return false;
  }

  TrainConfig config;
  CrfModel model = train(train_corpus, default_template_set(), bundle, config);
  auto pred = decode_corpus(model, test_corpus, bundle, 0);
  auto gold = gold_labels(test_corpus);

  long shared_total = 0, shared_hit = 0, gold_en = 0, gold_bn = 0;
  for (std::size_t u = 0; u < test_corpus.size(); ++u) {
    const Utterance& utt = test_corpus.utterances[u];
    for (std::size_t t = 0; t < utt.size(); ++t) {
      if (utt.tokens[t].surface != "take") continue;
      ++shared_total;
      (gold[u][t] == 0 ? gold_en : gold_bn) += 1;
      if (pred[u][t] == gold[u][t]) ++shared_hit;
    }
  }
  double acc = shared_total > 0
                   ? static_cast<double>(shared_hit) / shared_total
                   : 0.0;
  std::ostringstream d;
  d << shared_hit << "/" << shared_total << " shared tokens right (gold en "
    << gold_en << ", bn " << gold_bn << ")";
  detail = d.str();
  // require both labels represented so the check cannot pass vacuously
  return shared_total >= 10 && gold_en > 0 && gold_bn > 0 && acc >= 0.9;
}

bool check_metrics_hand_case(std::string& detail) {
  // labels en=0 bn=1 hi=2; gold [en en bn hi], predicted [en bn bn hi]
  std::vector<std::vector<int>> gold{{0, 0, 1, 2}};
  std::vector<std::vector<int>> pred{{0, 1, 1, 2}};
  EvalReport r = aggregate(gold, pred, 3);

  auto close = [](double a, double b) { return std::abs(a - b) < 1e-12; };
  bool ok = r.token_accuracy == 0.75 && r.utterance_accuracy == 0.0 &&
            close(r.macro_f, 7.0 / 9.0) && close(r.weighted_f, 0.75) &&
            r.per_label[0].precision == 1.0 && r.per_label[0].recall == 0.5 &&
            close(r.per_label[0].f_measure, 2.0 / 3.0) &&
            r.per_label[1].precision == 0.5 && r.per_label[1].recall == 1.0 &&
            close(r.per_label[1].f_measure, 2.0 / 3.0) &&
            r.per_label[2].f_measure == 1.0;
  detail = ok ? "all values exact" : "a metric disagrees with the hand values";
  return ok;
}

bool check_template_golden(std::string& detail, const fs::path& source_dir) {
  fs::path golden = source_dir / "tests" / "golden" /
                    "default_expansion.golden";
  std::string expected = read_file(golden.string());
  std::string actual = mt::default_expansion_dump();
  if (actual == expected) {
    detail = std::to_string(expected.size()) + " bytes identical";
    return true;
  }
  // point at the first diverging line to make drift debuggable
  std::istringstream a(actual), e(expected);
  std::string la, le;
  int line = 0;
  while (true) {
    ++line;
    bool ga = static_cast<bool>(std::getline(a, la));
    bool ge = static_cast<bool>(std::getline(e, le));
    if (!ga && !ge) break;
    if (la != le || ga != ge) {
      detail = "first difference at line " + std::to_string(line) + ": got '" +
               la + "', expected '" + le + "'";
      return false;
    }
  }
  detail = "content differs";
  return false;
}

bool check_determinism(std::string& detail) {
  mt::SynthOptions opt;
  opt.train_utterances = 60;
  opt.test_utterances = 1;
  mt::SynthData data = mt::make_synthetic(opt);
  write_file(spath("det_train.tsv"), data.train_tsv);

  // identical runs except for the thread count
  for (const char* pass : {"a", "b"}) {
    std::string threads = pass[0] == 'a' ? "1" : "2";
    if (run_mixtag("train --train " + spath("det_train.tsv") + " -o " +
                       spath(std::string("det_model_") + pass + ".txt") +
                       " --labels en,bn --threads " + threads,
                   std::string("det_train_") + pass) != 0) {
      detail = "train failed, see det_train_" + std::string(pass) + ".err";
      return false;
    }
  }
  std::string a = read_file(spath("det_model_a.txt"));
  std::string b = read_file(spath("det_model_b.txt"));
  if (a != b) {
    detail = "two training runs produced different model files";
    return false;
  }
  CrfModel loaded = load_model(a);
  if (save_model(loaded) != a) {
    detail = "save -> load -> save changed the file";
    return false;
  }
  detail = std::to_string(a.size()) + " byte model stable across runs and "
           "thread counts";
  return true;
}

bool check_report_format(std::string& detail) {
  write_file(spath("report_gold.tsv"),
             "ami\tbn\nbhalo\tbn\nlyrics\ten\n\nSachin\tNE\n");
  if (run_mixtag("eval --gold " + spath("report_gold.tsv") + " --pred " +
                     spath("report_gold.tsv"),
                 "report_eval") != 0) {
    detail = "eval failed, see report_eval.err";
    return false;
  }
  std::string text = read_file(spath("report_eval.out"));
  const char* rows[] = {
      "Tokens Accuracy (in %)      100.0000\n",
      "Utterances Accuracy (in %)  100.0000\n",
      "Average F-Measure           1.000000\n",
      "Weighted F-Measure          1.000000\n",
  };
  for (const char* row : rows) {
    if (text.find(row) == std::string::npos) {
      detail = std::string("missing row: ") + row;
      detail.pop_back();  // trailing newline
      return false;
    }
  }
  detail = "all four aggregate rows present with stated precision";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <mixtag-binary> <source-dir>\n";
    return 2;
  }
  g_mixtag = argv[1];
  fs::path source_dir = argv[2];
  g_scratch = fs::current_path() / "acceptance_scratch";
  fs::create_directories(g_scratch);

  struct Check {
    const char* name;
    std::function<bool(std::string&)> fn;
  };
  const Check checks[] = {
      {"gradient matches finite differences", check_gradient_oracle},
      {"decoding and partition match enumeration", check_inference_oracle},
      {"marginals are self-consistent", check_marginal_consistency},
      {"synthetic corpus pipeline accuracy", check_synthetic_pipeline},
      {"shared words resolved by context", check_context_disambiguation},
      {"metrics match the hand-checked case", check_metrics_hand_case},
      {"default template expansion is frozen",
       [&source_dir](std::string& d) {
         return check_template_golden(d, source_dir);
       }},
      {"training is deterministic", check_determinism},
      {"report format", check_report_format},
  };

  int failures = 0;
  for (const Check& check : checks) {
    std::string detail;
    bool ok = false;
    try {
      ok = check.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << check.name
              << (detail.empty() ? "" : "  (" + detail + ")") << "\n";
  }
  if (failures > 0) {
    std::cout << failures << " check(s) failed\n";
  }
  return failures;
}
