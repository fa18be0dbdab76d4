#ifndef RADEBOUNDS_EXACT_HPP
#define RADEBOUNDS_EXACT_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "radebounds/bounds.hpp"
#include "radebounds/eval_matrix.hpp"

namespace rade {

/// Exact empirical Rademacher average by enumeration of all 2^m sign
/// vectors. Capacity: m <= 20.
double era_exact(const EvalMatrix& evals);

/// A function class over an explicit finite domain: row x of `evals` holds
/// the function values at domain point x, and `mu` is the sampling
/// distribution, so every expectation is computable exactly.
struct FiniteDomain {
  FiniteDomain(EvalMatrix evals, std::vector<double> mu);

  std::size_t domain_size() const noexcept { return evals.rows(); }

  double expectation(std::size_t k) const;         // E[f_k]
  double second_moment(std::size_t k) const;       // E[f_k^2]

  double eta() const;        // sup_f E[f] - a
  double gamma() const;      // b - inf_f E[f], the deviation-side gap
  double gamma_at_sup() const;  // b - sup_f E[f], population mirror of gamma_hat
  double wimpy_variance() const;  // sup_f E[f^2]
  double tau() const;        // sup_f Var(f)

  EvalMatrix evals;
  std::vector<double> mu;
};

/// Iterate over all sample multisets of size m from a domain of the given
/// size. `counts[x]` is the multiplicity of domain point x; `tuples` the
/// number of ordered samples the multiset represents.
void for_each_multiset(std::size_t domain_size, std::size_t m,
                       const std::function<void(const std::vector<std::size_t>& counts,
                                                std::uint64_t tuples)>& fn);

/// Probability of drawing any ordered sample with these multiplicities:
/// multinomial(m; counts) * prod_x mu_x^counts_x.
double multiset_probability(const std::vector<std::size_t>& counts,
                            const std::vector<double>& mu);

/// Exact Rademacher complexity E_S[ERA(F, S)] by enumeration over sample
/// multisets. Capacity: |X|^m <= 2^20 and m <= 20.
double exact_rc(const FiniteDomain& domain, std::size_t m);

/// Exact expected supremum deviation E_S[SD(F, S)] for the chosen side,
/// by the same enumeration. Capacity: |X|^m <= 2^20.
double exact_expected_sd(const FiniteDomain& domain, std::size_t m, Side side);

/// Supremum deviation of the sample with the given multiplicities.
double sd_of_counts(const FiniteDomain& domain, const std::vector<std::size_t>& counts,
                    Side side);

}  // namespace rade

#endif
