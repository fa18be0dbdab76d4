#include "radebounds/class_stats.hpp"

#include <algorithm>
#include <cmath>

#include "radebounds/errors.hpp"

namespace rade {

ClassStats class_stats(const EvalMatrix& evals) {
  const std::size_t m = evals.rows();
  const std::size_t K = evals.cols();

  double z_hat = 0.0;
  double sup_abs_sum = 0.0;
  double sup_sq_sum = 0.0;
  double sup_sum = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    double abs_sum = 0.0, sq_sum = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double v = evals(i, k);
      double av = std::abs(v);
      z_hat = std::max(z_hat, av);
      abs_sum += av;
      sq_sum += v * v;
      sum += v;
    }
    sup_abs_sum = std::max(sup_abs_sum, abs_sum);
    sup_sq_sum = std::max(sup_sq_sum, sq_sum);
    sup_sum = std::max(sup_sum, sum);
  }

  ClassStats out;
  out.z_hat = z_hat;
  out.nu_hat = sup_abs_sum / static_cast<double>(m);
  out.wvar_hat = sup_sq_sum / static_cast<double>(m);
  double sup_mean = sup_sum / static_cast<double>(m);
  out.eta_hat = sup_mean - evals.a();
  out.gamma_hat = evals.b() - sup_mean;
  out.c = evals.c();
  out.z = evals.z();
  out.m = m;
  return out;
}

double mcera(const EvalMatrix& evals, const SignMatrix& sigma) {
  const std::size_t m = evals.rows();
  const std::size_t K = evals.cols();
  if (sigma.m() != m) {
    throw_invalid("dimension mismatch: sign matrix is " + std::to_string(sigma.n()) + "x" +
                  std::to_string(sigma.m()) + " but evaluation matrix is " +
                  std::to_string(m) + "x" + std::to_string(K));
  }

  double total = 0.0;
  for (std::size_t j = 0; j < sigma.n(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        sum += sigma.sign(j, i) * evals(i, k);
      }
      best = std::max(best, sum);
    }
    total += best;
  }
  return total / (static_cast<double>(sigma.n()) * static_cast<double>(m));
}

}  // namespace rade
