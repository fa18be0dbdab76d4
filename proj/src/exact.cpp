#include "radebounds/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "radebounds/errors.hpp"

namespace rade {

namespace {

constexpr std::size_t kEraExactMaxM = 20;
constexpr std::uint64_t kExactSampleCap = std::uint64_t{1} << 20;

std::uint64_t pow_u64_capped(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

double era_exact(const EvalMatrix& evals) {
  const std::size_t m = evals.rows();
  const std::size_t K = evals.cols();
  if (m > kEraExactMaxM) {
    throw_capacity("era_exact enumerates 2^m sign vectors; m = " + std::to_string(m) +
                   " would require " + std::to_string(std::uint64_t{1} << std::min<std::size_t>(m, 63)) +
                   " configurations (limit m <= " + std::to_string(kEraExactMaxM) + ")");
  }

  // Gray-code walk: one sign flips per step, so each column sum is updated
  // in O(1). Bit i set means sigma_i = -1.
  std::vector<double> sums(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < m; ++i) sums[k] += evals(i, k);
  }
  auto sup = [&]() {
    double best = sums[0];
    for (std::size_t k = 1; k < K; ++k) best = std::max(best, sums[k]);
    return best;
  };

  const std::uint64_t total = std::uint64_t{1} << m;
  double acc = sup();
  std::uint64_t gray = 0;
  for (std::uint64_t t = 1; t < total; ++t) {
    std::uint64_t bit_index = std::countr_zero(t);
    std::uint64_t bit = std::uint64_t{1} << bit_index;
    gray ^= bit;
    double flip = (gray & bit) ? -2.0 : 2.0;
    for (std::size_t k = 0; k < K; ++k) {
      sums[k] += flip * evals(bit_index, k);
    }
    acc += sup();
  }
  return acc / (static_cast<double>(m) * static_cast<double>(total));
}

FiniteDomain::FiniteDomain(EvalMatrix evals_in, std::vector<double> mu_in)
    : evals(std::move(evals_in)), mu(std::move(mu_in)) {
  if (mu.size() != evals.rows()) {
    throw_invalid("mu has " + std::to_string(mu.size()) + " entries but the domain has " +
                  std::to_string(evals.rows()) + " points");
  }
  double total = 0.0;
  for (double p : mu) {
    if (!(p >= 0.0)) throw_invalid("mu entries must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw_invalid("mu must sum to 1, got " + std::to_string(total));
  }
}

double FiniteDomain::expectation(std::size_t k) const {
  double e = 0.0;
  for (std::size_t x = 0; x < domain_size(); ++x) e += mu[x] * evals(x, k);
  return e;
}

double FiniteDomain::second_moment(std::size_t k) const {
  double e = 0.0;
  for (std::size_t x = 0; x < domain_size(); ++x) e += mu[x] * evals(x, k) * evals(x, k);
  return e;
}

double FiniteDomain::eta() const {
  double sup = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < evals.cols(); ++k) sup = std::max(sup, expectation(k));
  return sup - evals.a();
}

double FiniteDomain::gamma() const {
  double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < evals.cols(); ++k) inf = std::min(inf, expectation(k));
  return evals.b() - inf;
}

double FiniteDomain::gamma_at_sup() const {
  double sup = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < evals.cols(); ++k) sup = std::max(sup, expectation(k));
  return evals.b() - sup;
}

double FiniteDomain::wimpy_variance() const {
  double sup = 0.0;
  for (std::size_t k = 0; k < evals.cols(); ++k) sup = std::max(sup, second_moment(k));
  return sup;
}

double FiniteDomain::tau() const {
  double sup = 0.0;
  for (std::size_t k = 0; k < evals.cols(); ++k) {
    double e = expectation(k);
    sup = std::max(sup, second_moment(k) - e * e);
  }
  return sup;
}

namespace {

void multiset_rec(std::vector<std::size_t>& counts, std::size_t pos, std::size_t remaining,
                  const std::function<void(const std::vector<std::size_t>&, std::uint64_t)>& fn,
                  const std::vector<std::uint64_t>& factorials) {
  if (pos + 1 == counts.size()) {
    counts[pos] = remaining;
    std::uint64_t tuples = factorials[factorials.size() - 1];
    for (std::size_t c : counts) tuples /= factorials[c];
    fn(counts, tuples);
    return;
  }
  for (std::size_t take = 0; take <= remaining; ++take) {
    counts[pos] = take;
    multiset_rec(counts, pos + 1, remaining - take, fn, factorials);
  }
}

}  // namespace

void for_each_multiset(std::size_t domain_size, std::size_t m,
                       const std::function<void(const std::vector<std::size_t>&,
                                                std::uint64_t)>& fn) {
  if (domain_size < 1) throw_invalid("domain must have at least one point");
  if (m < 1) throw_invalid("sample size must be at least 1");
  if (m > 20) {
    throw_capacity("multiset enumeration supports m <= 20, got " + std::to_string(m));
  }
  std::vector<std::uint64_t> factorials(m + 1, 1);
  for (std::size_t i = 1; i <= m; ++i) factorials[i] = factorials[i - 1] * i;
  std::vector<std::size_t> counts(domain_size, 0);
  multiset_rec(counts, 0, m, fn, factorials);
}

double multiset_probability(const std::vector<std::size_t>& counts,
                            const std::vector<double>& mu) {
  std::size_t m = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  std::vector<std::uint64_t> factorials(m + 1, 1);
  for (std::size_t i = 1; i <= m; ++i) factorials[i] = factorials[i - 1] * i;
  std::uint64_t coef = factorials[m];
  double prob = 1.0;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    coef /= factorials[counts[x]];
    for (std::size_t r = 0; r < counts[x]; ++r) prob *= mu[x];
  }
  return static_cast<double>(coef) * prob;
}

namespace {

void check_sample_space(const FiniteDomain& domain, std::size_t m, const char* what) {
  std::uint64_t tuples = pow_u64_capped(domain.domain_size(), m, kExactSampleCap);
  if (tuples > kExactSampleCap) {
    throw_capacity(std::string(what) + " enumerates |X|^m ordered samples; " +
                   std::to_string(domain.domain_size()) + "^" + std::to_string(m) +
                   " exceeds the 2^20 cut-off");
  }
}

}  // namespace

double exact_rc(const FiniteDomain& domain, std::size_t m) {
  check_sample_space(domain, m, "exact_rc");
  if (m > kEraExactMaxM) {
    throw_capacity("exact_rc needs era_exact per sample, which requires m <= " +
                   std::to_string(kEraExactMaxM));
  }
  double rc = 0.0;
  // The ERA is symmetric in the sample, so one evaluation per multiset
  // weighted by the multinomial probability covers every ordered sample.
  for_each_multiset(domain.domain_size(), m, [&](const std::vector<std::size_t>& counts,
                                                 std::uint64_t) {
    double p = multiset_probability(counts, domain.mu);
    if (p == 0.0) return;
    std::vector<std::size_t> rows;
    rows.reserve(m);
    for (std::size_t x = 0; x < counts.size(); ++x) {
      rows.insert(rows.end(), counts[x], x);
    }
    rc += p * era_exact(domain.evals.select_rows(rows));
  });
  return rc;
}

double sd_of_counts(const FiniteDomain& domain, const std::vector<std::size_t>& counts,
                    Side side) {
  const std::size_t K = domain.evals.cols();
  std::size_t m = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    double sum = 0.0;
    for (std::size_t x = 0; x < counts.size(); ++x) {
      sum += static_cast<double>(counts[x]) * domain.evals(x, k);
    }
    double dev = sum / static_cast<double>(m) - domain.expectation(k);
    best = std::max(best, side == Side::pos ? dev : -dev);
  }
  return best;
}

double exact_expected_sd(const FiniteDomain& domain, std::size_t m, Side side) {
  check_sample_space(domain, m, "exact_expected_sd");
  double ez = 0.0;
  for_each_multiset(domain.domain_size(), m, [&](const std::vector<std::size_t>& counts,
                                                 std::uint64_t) {
    double p = multiset_probability(counts, domain.mu);
    if (p == 0.0) return;
    ez += p * sd_of_counts(domain, counts, side);
  });
  return ez;
}

}  // namespace rade
