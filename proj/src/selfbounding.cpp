#include "radebounds/selfbounding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>

#include "json.hpp"
#include "radebounds/errors.hpp"
#include "radebounds/parallel.hpp"
#include "radebounds/rng.hpp"

namespace rade {

std::string SelfBoundingReport::to_json_string() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["max_single_decrement"] = max_single_decrement;
  j["min_single_decrement"] = min_single_decrement;
  j["max_sum_slack"] = max_sum_slack;
  j["weak"] = weak;
  j["sampled"] = sampled;
  j["configurations_checked"] = configurations_checked;
  j["passed"] = passed;
  return j.dump();
}

namespace {

constexpr std::size_t kSignConfigBits = 16;          // exhaustive when n*m <= 16
constexpr std::size_t kSampleDomainLimit = 8;        // exhaustive when |X| <= 8
constexpr std::size_t kSampleSizeLimit = 8;          // ... and m <= 8

// Extremal slacks accumulated over configurations. All merges are max/min,
// so partitioning the configuration space cannot change the result.
struct Extremes {
  double max_dec = -std::numeric_limits<double>::infinity();
  double min_dec = std::numeric_limits<double>::infinity();
  double max_slack = -std::numeric_limits<double>::infinity();

  void absorb(const Extremes& other) {
    max_dec = std::max(max_dec, other.max_dec);
    min_dec = std::min(min_dec, other.min_dec);
    max_slack = std::max(max_slack, other.max_slack);
  }
};

double normalize(double value, double cap) { return cap > 0.0 ? value / cap : 0.0; }

SelfBoundingReport finish_report(std::string kind, const Extremes& ex, double cap,
                                 double sum_cap, double beta_raw, bool weak, bool sampled,
                                 std::uint64_t configurations) {
  SelfBoundingReport rep;
  rep.kind = std::move(kind);
  rep.alpha = 1.0;
  rep.beta = normalize(beta_raw, sum_cap);
  rep.max_single_decrement = normalize(ex.max_dec, cap);
  rep.min_single_decrement = normalize(ex.min_dec, cap);
  rep.max_sum_slack = normalize(ex.max_slack, sum_cap);
  rep.weak = weak;
  rep.sampled = sampled;
  rep.configurations_checked = configurations;
  rep.passed = ex.min_dec >= 0.0 && ex.max_dec <= cap && ex.max_slack <= 0.0;
  if (cap == 0.0) rep.passed = ex.min_dec >= 0.0 && ex.max_dec <= 0.0 && ex.max_slack <= 0.0;
  return rep;
}

}  // namespace

SelfBoundingReport verify_selfbounding_mcera(const EvalMatrix& evals, std::size_t n,
                                             bool weak, const VerifyOptions& opt) {
  if (n < 1) throw_invalid("n must be at least 1");
  const std::size_t m = evals.rows();
  const std::size_t K = evals.cols();
  const std::size_t nm = n * m;

  // Division-free raw statistics; g itself is n*m times the Monte Carlo
  // average, i.e. a plain sum of row suprema.
  double z_hat = 0.0;
  double sup_abs_sum = 0.0;
  double sup_sq_sum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    double abs_sum = 0.0, sq_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double v = evals(i, k);
      z_hat = std::max(z_hat, std::abs(v));
      abs_sum += std::abs(v);
      sq_sum += v * v;
    }
    sup_abs_sum = std::max(sup_abs_sum, abs_sum);
    sup_sq_sum = std::max(sup_sq_sum, sq_sum);
  }
  const double cap = 2.0 * z_hat;
  const double beta_raw = weak ? 2.0 * static_cast<double>(n) * sup_sq_sum
                               : static_cast<double>(n) * sup_abs_sum;
  const double alpha_raw = weak ? 2.0 * z_hat : 1.0;  // coefficient of g in the sum bound
  const double sum_cap = weak ? cap * cap : cap;

  Extremes global;
  std::mutex merge_mutex;
  bool sampled = nm > kSignConfigBits;
  std::uint64_t configurations;

  if (!sampled) {
    // Row supremum for every sign pattern of one row, filled by a gray-code
    // walk (bit i set means sigma_i = -1).
    const std::uint64_t row_patterns = std::uint64_t{1} << m;
    std::vector<double> rowsup(row_patterns);
    {
      std::vector<double> sums(K, 0.0);
      for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t i = 0; i < m; ++i) sums[k] += evals(i, k);
      }
      std::uint64_t gray = 0;
      rowsup[0] = *std::max_element(sums.begin(), sums.end());
      for (std::uint64_t t = 1; t < row_patterns; ++t) {
        std::uint64_t bit_index = std::countr_zero(t);
        std::uint64_t bit = std::uint64_t{1} << bit_index;
        gray ^= bit;
        double flip = (gray & bit) ? -2.0 : 2.0;
        for (std::size_t k = 0; k < K; ++k) sums[k] += flip * evals(bit_index, k);
        rowsup[gray] = *std::max_element(sums.begin(), sums.end());
      }
    }

    configurations = std::uint64_t{1} << nm;
    const std::uint64_t row_mask = row_patterns - 1;
    parallel_chunks(configurations, opt.threads, [&](std::uint64_t begin, std::uint64_t end) {
      Extremes local;
      for (std::uint64_t cfg = begin; cfg < end; ++cfg) {
        double g = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          g += rowsup[(cfg >> (j * m)) & row_mask];
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          std::uint64_t rmask = (cfg >> (j * m)) & row_mask;
          double rv = rowsup[rmask];
          for (std::size_t i = 0; i < m; ++i) {
            double d = rv - rowsup[rmask ^ (std::uint64_t{1} << i)];
            if (d < 0.0) d = 0.0;  // coordinate function is min(g, flipped g)
            local.max_dec = std::max(local.max_dec, d);
            local.min_dec = std::min(local.min_dec, d);
            sum += weak ? d * d : d;
          }
        }
        local.max_slack = std::max(local.max_slack, sum - alpha_raw * g - beta_raw);
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      global.absorb(local);
    });
  } else {
    configurations = opt.samples;
    parallel_chunks(configurations, opt.threads, [&](std::uint64_t begin, std::uint64_t end) {
      Extremes local;
      std::vector<double> sums(n * K);
      std::vector<std::int8_t> signs(nm);
      for (std::uint64_t cfg = begin; cfg < end; ++cfg) {
        std::uint64_t cfg_seed = derive_seed(opt.seed, cfg);
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t i = 0; i < m; ++i) {
            signs[j * m + i] = static_cast<std::int8_t>(rademacher_sign(cfg_seed, j, i));
          }
        }
        double g = 0.0;
        std::vector<double> rowval(n);
        for (std::size_t j = 0; j < n; ++j) {
          double best = -std::numeric_limits<double>::infinity();
          for (std::size_t k = 0; k < K; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += signs[j * m + i] * evals(i, k);
            sums[j * K + k] = s;
            best = std::max(best, s);
          }
          rowval[j] = best;
          g += best;
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t i = 0; i < m; ++i) {
            double flipped = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < K; ++k) {
              flipped = std::max(flipped,
                                 sums[j * K + k] - 2.0 * signs[j * m + i] * evals(i, k));
            }
            double d = rowval[j] - flipped;
            if (d < 0.0) d = 0.0;
            local.max_dec = std::max(local.max_dec, d);
            local.min_dec = std::min(local.min_dec, d);
            sum += weak ? d * d : d;
          }
        }
        local.max_slack = std::max(local.max_slack, sum - alpha_raw * g - beta_raw);
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      global.absorb(local);
    });
  }

  return finish_report(weak ? "mcera-weak" : "mcera", global, cap, sum_cap, beta_raw,
                       weak, sampled, configurations);
}

namespace {

// Shared harness for the sample-replacement checks. The statistic is
// g(S) = max_k (sum_i basis[s_i, k] + shift_k); replacing sample point x by
// x' moves the k-th inner sum by basis[x',k] - basis[x,k]. All quantities
// depend on the sample only through its multiset of domain points.
struct SampleCheck {
  std::string kind;
  std::vector<double> basis;   // |X| x K, row-major
  std::vector<double> shift;   // per-k constant
  std::size_t domain_size = 0;
  std::size_t K = 0;
  double cap = 0.0;            // admissible raw per-coordinate decrement
  double beta_raw = 0.0;
};

void check_counts(const SampleCheck& chk, const std::vector<std::size_t>& counts,
                  Extremes& ex) {
  const std::size_t X = chk.domain_size;
  const std::size_t K = chk.K;
  std::vector<double> base(K);
  double g = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    double s = chk.shift[k];
    for (std::size_t x = 0; x < X; ++x) {
      if (counts[x]) s += static_cast<double>(counts[x]) * chk.basis[x * K + k];
    }
    base[k] = s;
    g = std::max(g, s);
  }

  double sum = 0.0;
  for (std::size_t x = 0; x < X; ++x) {
    if (!counts[x]) continue;
    double replaced_min = std::numeric_limits<double>::infinity();
    for (std::size_t xp = 0; xp < X; ++xp) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < K; ++k) {
        best = std::max(best, base[k] - chk.basis[x * K + k] + chk.basis[xp * K + k]);
      }
      replaced_min = std::min(replaced_min, best);
    }
    double d = g - replaced_min;
    ex.max_dec = std::max(ex.max_dec, d);
    ex.min_dec = std::min(ex.min_dec, d);
    sum += static_cast<double>(counts[x]) * d;
  }
  ex.max_slack = std::max(ex.max_slack, sum - g - chk.beta_raw);
}

SelfBoundingReport run_sample_check(const SampleCheck& chk, std::size_t m,
                                    const VerifyOptions& opt) {
  if (m < 1) throw_invalid("sample size must be at least 1");
  Extremes ex;
  bool sampled = chk.domain_size > kSampleDomainLimit || m > kSampleSizeLimit;
  std::uint64_t configurations;
  if (!sampled) {
    configurations = 1;
    for (std::size_t i = 0; i < m; ++i) configurations *= chk.domain_size;
    for_each_multiset(chk.domain_size, m,
                      [&](const std::vector<std::size_t>& counts, std::uint64_t) {
                        check_counts(chk, counts, ex);
                      });
  } else {
    configurations = opt.samples;
    SplitMix64 rng(derive_seed(opt.seed, 0x5dca5e));
    std::vector<std::size_t> counts(chk.domain_size);
    for (std::uint64_t s = 0; s < configurations; ++s) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t i = 0; i < m; ++i) ++counts[rng.below(chk.domain_size)];
      check_counts(chk, counts, ex);
    }
  }
  return finish_report(chk.kind, ex, chk.cap, chk.cap, chk.beta_raw, false, sampled,
                       configurations);
}

SampleCheck make_sd_check(const FiniteDomain& domain, std::size_t m, Side side) {
  const std::size_t X = domain.domain_size();
  const std::size_t K = domain.evals.cols();
  SampleCheck chk;
  chk.kind = side == Side::pos ? "sd-pos" : "sd-neg";
  chk.domain_size = X;
  chk.K = K;
  chk.cap = domain.evals.c();
  chk.basis.resize(X * K);
  chk.shift.resize(K);
  double md = static_cast<double>(m);
  for (std::size_t k = 0; k < K; ++k) {
    double e = domain.expectation(k);
    chk.shift[k] = side == Side::pos ? -md * e : md * e;
    for (std::size_t x = 0; x < X; ++x) {
      double v = domain.evals(x, k);
      chk.basis[x * K + k] = side == Side::pos ? v : -v;
    }
  }
  chk.beta_raw = md * (side == Side::pos ? domain.eta() : domain.gamma());
  return chk;
}

SampleCheck make_gap_check(const FiniteDomain& domain, std::size_t m, const char* kind) {
  const std::size_t X = domain.domain_size();
  const std::size_t K = domain.evals.cols();
  SampleCheck chk;
  chk.kind = kind;
  chk.domain_size = X;
  chk.K = K;
  chk.cap = domain.evals.c();
  chk.basis.resize(X * K);
  chk.shift.assign(K, -static_cast<double>(m) * domain.evals.a());
  for (std::size_t x = 0; x < X; ++x) {
    for (std::size_t k = 0; k < K; ++k) chk.basis[x * K + k] = domain.evals(x, k);
  }
  chk.beta_raw = 0.0;
  return chk;
}

}  // namespace

SelfBoundingReport verify_selfbounding_sd(const FiniteDomain& domain, std::size_t m,
                                          Side side, const VerifyOptions& opt) {
  return run_sample_check(make_sd_check(domain, m, side), m, opt);
}

SelfBoundingReport verify_selfbounding_sd_at(const FiniteDomain& domain,
                                             const std::vector<std::size_t>& sample,
                                             Side side) {
  if (sample.empty()) throw_invalid("sample must be nonempty");
  std::vector<std::size_t> counts(domain.domain_size(), 0);
  for (std::size_t idx : sample) {
    if (idx >= domain.domain_size()) {
      throw_invalid("sample index " + std::to_string(idx) + " out of range for domain of size " +
                    std::to_string(domain.domain_size()));
    }
    ++counts[idx];
  }
  SampleCheck chk = make_sd_check(domain, sample.size(), side);
  Extremes ex;
  check_counts(chk, counts, ex);
  return finish_report(chk.kind, ex, chk.cap, chk.cap, chk.beta_raw, false, false, 1);
}

SelfBoundingReport verify_selfbounding_wvar(const FiniteDomain& domain, std::size_t m,
                                            const VerifyOptions& opt) {
  const std::size_t X = domain.domain_size();
  const std::size_t K = domain.evals.cols();
  SampleCheck chk;
  chk.kind = "wvar";
  chk.domain_size = X;
  chk.K = K;
  double z = domain.evals.z();
  chk.cap = z * z;
  chk.basis.resize(X * K);
  chk.shift.assign(K, 0.0);
  for (std::size_t x = 0; x < X; ++x) {
    for (std::size_t k = 0; k < K; ++k) {
      double v = domain.evals(x, k);
      chk.basis[x * K + k] = v * v;
    }
  }
  chk.beta_raw = 0.0;
  return run_sample_check(chk, m, opt);
}

SelfBoundingReport verify_selfbounding_eta(const FiniteDomain& domain, std::size_t m,
                                           const VerifyOptions& opt) {
  return run_sample_check(make_gap_check(domain, m, "eta"), m, opt);
}

SelfBoundingReport verify_selfbounding_gamma(const FiniteDomain& domain, std::size_t m,
                                             const VerifyOptions& opt) {
  FiniteDomain negated(domain.evals.negated(), domain.mu);
  SampleCheck chk = make_gap_check(negated, m, "gamma");
  return run_sample_check(chk, m, opt);
}

}  // namespace rade
