#include "mixtag/lbfgs.hpp"

#include <cmath>
#include <cstddef>
#include <deque>

#include "mixtag/errors.hpp"

namespace mixtag {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct CurvaturePair {
  std::vector<double> s;  // x_{k+1} - x_k
  std::vector<double> y;  // g_{k+1} - g_k
  double rho;             // 1 / (y . s)
};

// Two-loop recursion: d = -H g, H built from the stored pairs.
void apply_inverse_hessian(const std::deque<CurvaturePair>& pairs,
                           const std::vector<double>& grad,
                           std::vector<double>& direction) {
  direction.assign(grad.begin(), grad.end());
  std::vector<double> alpha(pairs.size());
  for (std::size_t i = pairs.size(); i-- > 0;) {
    alpha[i] = pairs[i].rho * dot(pairs[i].s, direction);
    for (std::size_t k = 0; k < direction.size(); ++k) {
      direction[k] -= alpha[i] * pairs[i].y[k];
    }
  }
  if (!pairs.empty()) {
    const CurvaturePair& last = pairs.back();
    double gamma = 1.0 / (last.rho * dot(last.y, last.y));
    for (double& d : direction) d *= gamma;
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double beta = pairs[i].rho * dot(pairs[i].y, direction);
    for (std::size_t k = 0; k < direction.size(); ++k) {
      direction[k] += (alpha[i] - beta) * pairs[i].s[k];
    }
  }
  for (double& d : direction) d = -d;
}

}  // namespace

LbfgsResult lbfgs_minimize(const ObjectiveFn& objective,
                           std::vector<double>& x, const LbfgsOptions& options,
                           std::ostream* log) {
  if (options.history < 1 || options.max_iters < 0 || options.tol < 0) {
    throw ConfigError("bad optimizer options");
  }
  const std::size_t n = x.size();
  std::vector<double> grad;
  double f = objective(x, grad);
  LbfgsResult result;
  result.value = f;
  if (log) *log << "iter 0 objective " << f << "\n";

  std::deque<CurvaturePair> pairs;
  std::vector<double> direction(n), x_new(n), grad_new;

  for (int iter = 0; iter < options.max_iters; ++iter) {
    double gnorm = std::sqrt(dot(grad, grad));
    if (gnorm == 0.0) {
      result.converged = true;
      break;
    }
    apply_inverse_hessian(pairs, grad, direction);
    double dg = dot(direction, grad);
    if (!(dg < 0.0)) {
      // numerically unusable curvature; fall back to steepest descent
      for (std::size_t k = 0; k < n; ++k) direction[k] = -grad[k];
      dg = -gnorm * gnorm;
    }

    // First step has no curvature scale yet, so normalize it.
    double step = pairs.empty() ? 1.0 / std::max(1.0, gnorm) : 1.0;
    double f_new = f;
    bool accepted = false;
    for (int half = 0; half <= options.max_step_halvings; ++half) {
      for (std::size_t k = 0; k < n; ++k) x_new[k] = x[k] + step * direction[k];
      f_new = objective(x_new, grad_new);
      if (std::isfinite(f_new) &&
          f_new <= f + options.armijo_c1 * step * dg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // no decrease at machine-scale steps: we are at a numerical floor
      result.converged = true;
      break;
    }

    CurvaturePair pair;
    pair.s.resize(n);
    pair.y.resize(n);
    double sy = 0.0, ss = 0.0, yy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      pair.s[k] = x_new[k] - x[k];
      pair.y[k] = grad_new[k] - grad[k];
      sy += pair.s[k] * pair.y[k];
      ss += pair.s[k] * pair.s[k];
      yy += pair.y[k] * pair.y[k];
    }
    if (sy > 1e-10 * std::sqrt(ss) * std::sqrt(yy)) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (pairs.size() > static_cast<std::size_t>(options.history)) {
        pairs.pop_front();
      }
    }

    x.swap(x_new);
    grad.swap(grad_new);
    double df = f - f_new;
    f = f_new;
    result.value = f;
    result.iterations = iter + 1;
    if (log) *log << "iter " << iter + 1 << " objective " << f << "\n";
    if (df / std::max(std::abs(f), 1.0) < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.value = f;
  return result;
}

}  // namespace mixtag
