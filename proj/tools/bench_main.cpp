// Times the parallel gradient against the serial reference on a synthetic
// workload and checks they agree. Usage: mixtag_bench [utterances] [labels]
// [features] [repeats].

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "mixtag/crf.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

// mt19937 output is portable; the stdlib distributions are not, so sample
// by hand.
std::uint32_t uniform_below(std::mt19937& rng, std::uint32_t n) {
  std::uint32_t limit = UINT32_MAX - UINT32_MAX % n;
  std::uint32_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

double uniform_pm1(std::mt19937& rng) {
  return (static_cast<double>(rng()) / 4294967295.0) * 2.0 - 1.0;
}

std::vector<mixtag::CompiledSequence> make_workload(std::size_t utterances,
                                                    int labels,
                                                    std::uint32_t features,
                                                    std::mt19937& rng) {
  const auto L = static_cast<std::uint32_t>(labels);
  // split the feature budget: 3/4 unigram strings, 1/4 bigram strings
  const std::uint32_t uni_strings = features * 3 / 4;
  const std::uint32_t bi_strings = features - uni_strings;
  const std::uint32_t uni_slots = uni_strings * L;

  std::vector<mixtag::CompiledSequence> data(utterances);
  for (auto& seq : data) {
    std::size_t T = 3 + uniform_below(rng, 6);  // 3..8 tokens
    seq.gold.resize(T);
    seq.uni.resize(T);
    seq.bi.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
      seq.gold[t] = static_cast<int>(uniform_below(rng, L));
      std::size_t active = 5 + uniform_below(rng, 8);  // firing strings
      for (std::size_t k = 0; k < active; ++k) {
        seq.uni[t].push_back(uniform_below(rng, uni_strings) * L);
      }
      if (t > 0 && bi_strings > 0) {
        seq.bi[t].push_back(uni_slots + uniform_below(rng, bi_strings) * L * L);
      }
    }
  }
  return data;
}

double time_ms(int repeats, const std::vector<mixtag::CompiledSequence>& data,
               int labels, const std::vector<double>& w, int threads,
               bool reference, std::vector<double>& grad, double& value) {
  auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) {
    value = reference
                ? mixtag::nll_gradient_reference(data, labels, w, 1.0, grad)
                : mixtag::nll_and_gradient(data, labels, w, 1.0, threads, grad);
  }
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() /
         repeats;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t utterances = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  int labels = argc > 2 ? std::atoi(argv[2]) : 12;
  auto features =
      argc > 3 ? static_cast<std::uint32_t>(std::strtoul(argv[3], nullptr, 10))
               : std::uint32_t{20000};
  int repeats = argc > 4 ? std::atoi(argv[4]) : 5;
  if (utterances == 0 || labels < 2 || features < 4 || repeats < 1) {
    std::fprintf(stderr, "bad arguments\n");
    return 2;
  }

  std::mt19937 rng(20150809);
  auto data = make_workload(utterances, labels, features, rng);
  std::size_t weights = 0;
  for (const auto& seq : data) {
    for (const auto& v : {&seq.uni, &seq.bi}) {
      for (const auto& bases : *v) {
        for (auto b : bases) {
          weights = std::max(
              weights, static_cast<std::size_t>(b) +
                           static_cast<std::size_t>(labels) * labels);
        }
      }
    }
  }
  std::vector<double> w(weights);
  for (auto& x : w) x = 0.1 * uniform_pm1(rng);

  std::printf("workload: %zu utterances, %d labels, %zu weights\n", utterances,
              labels, weights);

  std::vector<double> grad_ref, grad_par;
  double value_ref = 0.0, value_par = 0.0;
  double ms_ref =
      time_ms(repeats, data, labels, w, 1, true, grad_ref, value_ref);
  std::printf("serial reference        %9.2f ms/eval\n", ms_ref);

  int max_threads = 1;
#ifdef _OPENMP
  max_threads = omp_get_max_threads();
#endif
  for (int t = 1; t <= max_threads; t *= 2) {
    double ms = time_ms(repeats, data, labels, w, t, false, grad_par, value_par);
    std::printf("parallel, %2d thread%s    %9.2f ms/eval  (%.2fx)\n", t,
                t == 1 ? " " : "s", ms, ms_ref / ms);
  }

  double max_diff = std::abs(value_ref - value_par);
  for (std::size_t i = 0; i < grad_ref.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(grad_ref[i] - grad_par[i]));
  }
  std::printf("max |serial - parallel| %.3g\n", max_diff);
  if (!(max_diff < 1e-8)) {
    std::printf("MISMATCH: kernels disagree\n");
    return 1;
  }
  return 0;
}
