#ifndef MIXTAG_LBFGS_HPP
#define MIXTAG_LBFGS_HPP

#include <functional>
#include <ostream>
#include <vector>

namespace mixtag {

// Evaluates f(x) and writes the gradient into grad (resized by the callee).
using ObjectiveFn =
    std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

struct LbfgsOptions {
  int history = 10;
  int max_iters = 200;
  double tol = 1e-5;          // on |df| / max(|f_new|, 1)
  double armijo_c1 = 1e-4;
  int max_step_halvings = 60;
};

struct LbfgsResult {
  double value = 0.0;
  int iterations = 0;   // accepted steps
  bool converged = false;
};

// Limited-memory BFGS with Armijo backtracking. Accepted iterates never
// increase the objective; every run on the same inputs takes the same path.
LbfgsResult lbfgs_minimize(const ObjectiveFn& objective,
                           std::vector<double>& x, const LbfgsOptions& options,
                           std::ostream* log = nullptr);

}  // namespace mixtag

#endif  // MIXTAG_LBFGS_HPP
