#ifndef RADEBOUNDS_CHAINS_HPP
#define RADEBOUNDS_CHAINS_HPP

#include "radebounds/bounds.hpp"
#include "radebounds/class_stats.hpp"

namespace rade {

// Convenience layer composing estimator and bound. Every chained
// probabilistic step receives delta/2 (union bound); the split is echoed
// in the result inputs as delta_* entries.

/// Full upper bound on the empirical Rademacher average from a Monte Carlo
/// average and class statistics. `clamp_nu` truncates the result at nu_hat,
/// which always dominates the average.
BoundResult era_upper_from_stats(const ClassStats& stats, double mcera, std::size_t n,
                                 Method era_method, Confidence delta, bool clamp_nu = false);

/// Rademacher-complexity bound chaining an ERA bound (delta/2) into the
/// self-bounding ERA->RC step (delta/2).
BoundResult rc_upper_chained(const ClassStats& stats, double mcera, std::size_t n,
                             Method era_method, Confidence delta, bool clamp_nu = false);

/// Direct n = 1 variance-aware route: the empirical wimpy variance is lifted
/// to a population bound (delta/2) and fed to the one-draw bound (delta/2).
BoundResult rc_upper_n1_var_chained(const ClassStats& stats, double mcera1, Confidence delta);

}  // namespace rade

#endif
