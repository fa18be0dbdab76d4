#ifndef RADEBOUNDS_CLASS_STATS_HPP
#define RADEBOUNDS_CLASS_STATS_HPP

#include <cstddef>

#include "radebounds/eval_matrix.hpp"

namespace rade {

/// Empirical statistics of a function class on a sample. All suprema run
/// over the class columns; the zero function keeps them nonnegative.
///   z_hat     sup over entries of |f(s)|
///   nu_hat    sup over f of the mean absolute value
///   wvar_hat  sup over f of the mean square (empirical wimpy variance)
///   eta_hat   sup-mean minus a
///   gamma_hat b minus sup-mean
struct ClassStats {
  double z_hat = 0.0;
  double nu_hat = 0.0;
  double wvar_hat = 0.0;
  double eta_hat = 0.0;
  double gamma_hat = 0.0;
  double c = 0.0;       // b - a
  double z = 0.0;       // max{|a|, |b|}
  std::size_t m = 0;    // sample size
};

ClassStats class_stats(const EvalMatrix& evals);

/// Monte Carlo empirical Rademacher average:
/// (1/n) sum_j sup_f (1/m) sum_i sigma_{j,i} f(s_i).
/// The sign matrix must have as many columns as the sample has rows.
double mcera(const EvalMatrix& evals, const SignMatrix& sigma);

}  // namespace rade

#endif
