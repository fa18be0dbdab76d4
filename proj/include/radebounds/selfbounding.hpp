#ifndef RADEBOUNDS_SELFBOUNDING_HPP
#define RADEBOUNDS_SELFBOUNDING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "radebounds/eval_matrix.hpp"
#include "radebounds/exact.hpp"

namespace rade {

/// Outcome of checking a self-bounding property over sign or sample
/// configurations. Quantities are reported in the rescaled convention in
/// which the admissible per-coordinate decrement is 1, so a passing report
/// has min_single_decrement >= 0, max_single_decrement <= 1 and
/// max_sum_slack <= 0. Pass/fail itself is decided on the unscaled
/// quantities with exact comparisons.
struct SelfBoundingReport {
  std::string kind;
  double alpha = 1.0;
  double beta = 0.0;
  double max_single_decrement = 0.0;
  double min_single_decrement = 0.0;
  double max_sum_slack = 0.0;
  bool weak = false;
  bool sampled = false;
  std::uint64_t configurations_checked = 0;
  bool passed = false;

  std::string to_json_string() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;    // for sampled mode
  std::uint64_t samples = 4096;
  int threads = 0;           // 0 = available parallelism
};

/// Check that n*m times the Monte Carlo average, as a function of the sign
/// matrix, is (1, nm*nu_hat')-self-bounding (strong) or (1, 2nm*wvar_hat')-
/// self-bounding (weak) after rescaling the class by 1/(2 z_hat). Exhaustive
/// over all 2^(n*m) sign matrices when n*m <= 16, sampled otherwise.
SelfBoundingReport verify_selfbounding_mcera(const EvalMatrix& evals, std::size_t n,
                                             bool weak, const VerifyOptions& opt = {});

/// Check that m*SD is (1, m*eta)- resp. (1, m*gamma)-self-bounding in the
/// sample, with coordinate functions given by the infimum over replacing
/// one sample point by any domain point. Exhaustive over all |X|^m sample
/// configurations when |X| <= 8 and m <= 8, sampled otherwise.
SelfBoundingReport verify_selfbounding_sd(const FiniteDomain& domain, std::size_t m,
                                          Side side, const VerifyOptions& opt = {});

/// Same check at one explicit sample configuration.
SelfBoundingReport verify_selfbounding_sd_at(const FiniteDomain& domain,
                                             const std::vector<std::size_t>& sample,
                                             Side side);

/// Check that m times the empirical wimpy variance is (1, 0)-self-bounding
/// with per-coordinate cap z^2.
SelfBoundingReport verify_selfbounding_wvar(const FiniteDomain& domain, std::size_t m,
                                            const VerifyOptions& opt = {});

/// Check that m times the sup-mean gap above a is (1, 0)-self-bounding with
/// cap c; the gamma variant runs the same check on the negated class.
SelfBoundingReport verify_selfbounding_eta(const FiniteDomain& domain, std::size_t m,
                                           const VerifyOptions& opt = {});
SelfBoundingReport verify_selfbounding_gamma(const FiniteDomain& domain, std::size_t m,
                                             const VerifyOptions& opt = {});

}  // namespace rade

#endif
