#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "oracle_helpers.hpp"
#include "radebounds/class_stats.hpp"
#include "radebounds/coverage.hpp"
#include "radebounds/errors.hpp"
#include "radebounds/exact.hpp"
#include "radebounds/selfbounding.hpp"

using namespace rade;

namespace {

EvalMatrix two_function_class() {
  return EvalMatrix({0.0, 1.0, 0.0, 1.0}, 2, 2, 0.0, 1.0);
}

FiniteDomain indicator_domain() {
  // X = {x1, x2}, f1 = indicator of x1, uniform mu
  return FiniteDomain(EvalMatrix({0.0, 1.0, 0.0, 0.0}, 2, 2, 0.0, 1.0), {0.5, 0.5});
}

}  // namespace

TEST_CASE("era_exact on the stated examples") {
  EvalMatrix zero_only({0.0, 0.0}, 2, 1, 0.0, 1.0);
  CHECK(era_exact(zero_only) == 0.0);

  // 4 sign vectors give suprema {1, 0, 0, 0} for the mean of f1
  CHECK(era_exact(two_function_class()) == 0.25);
}

TEST_CASE("era_exact capacity error states the enumeration cost") {
  std::vector<double> values(21, 0.0);
  EvalMatrix mat(std::move(values), 21, 1, 0.0, 1.0);
  try {
    era_exact(mat);
    FAIL("m = 21 accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::capacity);
    CHECK(std::string(e.what()).find("2^m") != std::string::npos);
  }
}

TEST_CASE("era_exact equals the average of mcera over all sign matrices") {
  SplitMix64 rng(2025);
  for (int rep = 0; rep < 5; ++rep) {
    std::size_t n = 1 + rng.below(3);
    std::size_t m = 1 + rng.below(4);  // nm <= 12
    std::size_t K = 2 + rng.below(4);
    EvalMatrix mat = testutil::random_dyadic_matrix(m, K, -0.5, 0.5, -32, 32, rng);

    std::size_t nm = n * m;
    testutil::KahanSum acc;
    for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << nm); ++cfg) {
      std::vector<std::int8_t> signs(nm);
      for (std::size_t bit = 0; bit < nm; ++bit) {
        signs[bit] = (cfg >> bit) & 1 ? -1 : 1;
      }
      acc.add(mcera(mat, SignMatrix::from_values(std::move(signs), n, m)));
    }
    double mean = acc.sum / static_cast<double>(std::uint64_t{1} << nm);
    CHECK(testutil::approx_rel(mean, era_exact(mat), 1e-12));
  }
}

TEST_CASE("era_exact sits within four standard errors of a Monte Carlo mean") {
  SplitMix64 rng(404);
  EvalMatrix mat = testutil::random_dyadic_matrix(8, 4, 0.0, 1.0, 0, 64, rng);
  const std::size_t draws = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < draws; ++t) {
    double v = mcera(mat, SignMatrix(1, 8, derive_seed(9, t)));
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / draws;
  double var = (sum_sq / draws - mean * mean) / draws;
  double se = std::sqrt(var);
  CHECK(std::abs(era_exact(mat) - mean) <= 4.0 * se);
}

TEST_CASE("finite domain expectations are exact") {
  FiniteDomain dom = indicator_domain();
  CHECK(dom.expectation(1) == 0.5);
  CHECK(dom.second_moment(1) == 0.5);
  CHECK(dom.eta() == 0.5);
  CHECK(dom.gamma() == 1.0);         // b - inf E[f], the zero function has E = 0
  CHECK(dom.gamma_at_sup() == 0.5);  // b - sup E[f]
  CHECK(dom.wimpy_variance() == 0.5);
  CHECK(dom.tau() == 0.25);

  CHECK_THROWS_AS(FiniteDomain(indicator_domain().evals, {0.7, 0.7}), error);
  CHECK_THROWS_AS(FiniteDomain(indicator_domain().evals, {1.0}), error);
}

TEST_CASE("multiset enumeration covers the whole sample space") {
  std::uint64_t total_tuples = 0;
  std::size_t multisets = 0;
  for_each_multiset(3, 4, [&](const std::vector<std::size_t>& counts, std::uint64_t tuples) {
    CHECK(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == 4);
    total_tuples += tuples;
    ++multisets;
  });
  CHECK(total_tuples == 81);  // 3^4
  CHECK(multisets == 15);     // C(6, 4)

  // probabilities sum to one
  std::vector<double> mu{0.5, 0.25, 0.25};
  double total_p = 0.0;
  for_each_multiset(3, 4, [&](const std::vector<std::size_t>& counts, std::uint64_t) {
    total_p += multiset_probability(counts, mu);
  });
  CHECK(total_p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact RC agrees with direct tuple enumeration on a tiny case") {
  FiniteDomain dom = indicator_domain();
  const std::size_t m = 3;
  // direct enumeration over all 2^3 ordered samples, uniform mu
  double direct = 0.0;
  for (std::size_t cfg = 0; cfg < 8; ++cfg) {
    std::vector<std::size_t> rows{cfg & 1, (cfg >> 1) & 1, (cfg >> 2) & 1};
    direct += era_exact(dom.evals.select_rows(rows)) / 8.0;
  }
  CHECK(testutil::approx_rel(exact_rc(dom, m), direct, 1e-13));
}

TEST_CASE("exact expected SD agrees with direct tuple enumeration") {
  FiniteDomain dom = indicator_domain();
  double direct = 0.0;
  for (std::size_t cfg = 0; cfg < 8; ++cfg) {
    std::vector<std::size_t> rows{cfg & 1, (cfg >> 1) & 1, (cfg >> 2) & 1};
    std::vector<std::size_t> counts(2, 0);
    for (auto r : rows) ++counts[r];
    direct += sd_of_counts(dom, counts, Side::pos) / 8.0;
  }
  CHECK(testutil::approx_rel(exact_expected_sd(dom, 3, Side::pos), direct, 1e-13));
}

TEST_CASE("mcera self-bounding verifier on the stated examples") {
  EvalMatrix zero_only({0.0, 0.0}, 2, 1, 0.0, 1.0);
  SelfBoundingReport r0 = verify_selfbounding_mcera(zero_only, 1, false);
  CHECK(r0.passed);
  CHECK(r0.max_single_decrement == 0.0);

  SelfBoundingReport r1 = verify_selfbounding_mcera(two_function_class(), 1, false);
  CHECK(r1.passed);
  CHECK(r1.configurations_checked == 4);
  CHECK_FALSE(r1.sampled);
  CHECK(r1.max_single_decrement <= 1.0);
  CHECK(r1.beta == doctest::Approx(2.0 * 0.5).epsilon(1e-12));  // nm * nu_hat / (2 z_hat)
  CHECK(r1.max_sum_slack <= 0.0);
}

TEST_CASE("mcera self-bounding holds on random classes, strong and weak") {
  SplitMix64 rng(777);
  for (int rep = 0; rep < 100; ++rep) {
    // entries are multiples of 1/64 within [-0.4, 0.6]
    EvalMatrix mat = testutil::random_dyadic_matrix(3, 4, -0.4, 0.6, -25, 38, rng);
    SelfBoundingReport strong = verify_selfbounding_mcera(mat, 2, false);
    SelfBoundingReport weak = verify_selfbounding_mcera(mat, 2, true);
    CAPTURE(rep);
    CHECK(strong.passed);
    CHECK(weak.passed);
    CHECK(strong.configurations_checked == 64);
    CHECK(weak.weak);
  }
}

TEST_CASE("mcera verifier samples beyond the exhaustive cut-off") {
  SplitMix64 rng(88);
  EvalMatrix mat = testutil::random_dyadic_matrix(9, 3, 0.0, 1.0, 0, 64, rng);
  VerifyOptions opt;
  opt.seed = 5;
  opt.samples = 512;
  SelfBoundingReport rep = verify_selfbounding_mcera(mat, 2, false, opt);  // nm = 18
  CHECK(rep.sampled);
  CHECK(rep.configurations_checked == 512);
  CHECK(rep.passed);

  SelfBoundingReport again = verify_selfbounding_mcera(mat, 2, false, opt);
  CHECK(rep.to_json_string() == again.to_json_string());
}

TEST_CASE("SD self-bounding verifier on the indicator example") {
  FiniteDomain dom = indicator_domain();
  SelfBoundingReport rep = verify_selfbounding_sd(dom, 3, Side::pos);
  CHECK(rep.passed);
  CHECK_FALSE(rep.sampled);
  CHECK(rep.configurations_checked == 8);
  CHECK(rep.beta == doctest::Approx(3.0 * 0.5).epsilon(1e-12));  // m * eta / c

  SelfBoundingReport at = verify_selfbounding_sd_at(dom, {0, 1, 1}, Side::pos);
  CHECK(at.passed);
  CHECK(at.configurations_checked == 1);
}

TEST_CASE("negated class swaps the SD sides") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    EvalMatrix mat = testutil::random_dyadic_matrix(4, 3, -0.375, 0.625, -24, 40, rng);
    FiniteDomain dom(mat, {0.25, 0.25, 0.25, 0.25});
    FiniteDomain neg(mat.negated(), {0.25, 0.25, 0.25, 0.25});
    SelfBoundingReport pos = verify_selfbounding_sd(dom, 3, Side::pos);
    SelfBoundingReport negrep = verify_selfbounding_sd(neg, 3, Side::neg);
    CHECK(pos.passed);
    CHECK(negrep.passed);
    CHECK(pos.max_single_decrement == negrep.max_single_decrement);
    CHECK(pos.max_sum_slack == negrep.max_sum_slack);
    CHECK(pos.beta == negrep.beta);
  }
}

TEST_CASE("SD self-bounding holds on random classes, both sides") {
  SplitMix64 rng(555);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t X = (rng.next() & 1u) ? 2 : 4;
    std::size_t m = 3 + rng.below(2);
    EvalMatrix mat = testutil::random_dyadic_matrix(X, 4, -0.375, 0.625, -24, 40, rng);
    FiniteDomain dom(mat, std::vector<double>(X, 1.0 / static_cast<double>(X)));
    CAPTURE(rep);
    CHECK(verify_selfbounding_sd(dom, m, Side::pos).passed);
    CHECK(verify_selfbounding_sd(dom, m, Side::neg).passed);
  }
}

TEST_CASE("wimpy variance and gap statistics are (1,0)-self-bounding") {
  FiniteDomain dom = indicator_domain();
  CHECK(verify_selfbounding_wvar(dom, 3).passed);
  CHECK(verify_selfbounding_eta(dom, 3).passed);
  CHECK(verify_selfbounding_gamma(dom, 3).passed);

  SplitMix64 rng(999);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t X = (rng.next() & 1u) ? 2 : 4;
    std::size_t m = 3 + rng.below(3);
    EvalMatrix mat = testutil::random_dyadic_matrix(X, 4, -0.5, 0.5, -32, 32, rng);
    FiniteDomain dom2(mat, std::vector<double>(X, 1.0 / static_cast<double>(X)));
    CAPTURE(rep);
    SelfBoundingReport wv = verify_selfbounding_wvar(dom2, m);
    SelfBoundingReport eta = verify_selfbounding_eta(dom2, m);
    SelfBoundingReport gamma = verify_selfbounding_gamma(dom2, m);
    CHECK(wv.passed);
    CHECK(eta.passed);
    CHECK(gamma.passed);
    CHECK(wv.beta == 0.0);
    CHECK(eta.beta == 0.0);
  }
}

TEST_CASE("verifier reports are invariant under row and column permutation") {
  SplitMix64 rng(121);
  EvalMatrix mat = testutil::random_dyadic_matrix(4, 3, -0.5, 0.5, -32, 32, rng);
  std::vector<double> mu{0.5, 0.25, 0.125, 0.125};
  FiniteDomain dom(mat, mu);

  // permute domain points and columns
  std::vector<std::size_t> row_perm{2, 0, 3, 1};
  std::size_t K = mat.cols();
  std::vector<double> pvals(4 * K);
  std::vector<double> pmu(4);
  for (std::size_t x = 0; x < 4; ++x) {
    pmu[x] = mu[row_perm[x]];
    for (std::size_t k = 0; k < K; ++k) {
      pvals[x * K + k] = mat(row_perm[x], (k + 1) % K);
    }
  }
  FiniteDomain pdom(EvalMatrix(std::move(pvals), 4, K, mat.a(), mat.b()), pmu);

  SelfBoundingReport a = verify_selfbounding_sd(dom, 3, Side::pos);
  SelfBoundingReport b = verify_selfbounding_sd(pdom, 3, Side::pos);
  CHECK(a.max_single_decrement == b.max_single_decrement);
  CHECK(a.min_single_decrement == b.min_single_decrement);
  CHECK(a.max_sum_slack == b.max_sum_slack);
}

TEST_CASE("sample-replacement verifier samples beyond the cut-off") {
  SplitMix64 rng(77);
  EvalMatrix mat = testutil::random_dyadic_matrix(4, 3, 0.0, 1.0, 0, 64, rng);
  FiniteDomain dom(mat, std::vector<double>(4, 0.25));
  VerifyOptions opt;
  opt.seed = 3;
  opt.samples = 256;
  SelfBoundingReport rep = verify_selfbounding_sd(dom, 9, Side::pos, opt);  // m > 8
  CHECK(rep.sampled);
  CHECK(rep.configurations_checked == 256);
  CHECK(rep.passed);
}

TEST_CASE("coverage: ERA bounds against the exact enumeration oracle") {
  GeneratorSpec gen = random_binary_generator(4, 4, 8, 2, 11);
  CoverageConfig cfg;
  cfg.bound = Method::era_bd;
  cfg.trials = 2000;
  cfg.delta = 0.05;
  cfg.seed = 7;
  CoverageReport rep = coverage_experiment(cfg, gen);
  CHECK(rep.trials == 2000);
  CHECK(rep.failure_frequency <= 0.05);
  CHECK(rep.ground_truth.find("era_exact") != std::string::npos);

  CoverageReport again = coverage_experiment(cfg, gen);
  CHECK(rep.to_json_string() == again.to_json_string());
}

TEST_CASE("coverage: wimpy variance estimator on a 2-point domain") {
  GeneratorSpec gen = random_binary_generator(2, 4, 16, 1, 13);
  CoverageConfig cfg;
  cfg.bound = Method::wvar_ub;
  cfg.trials = 2000;
  cfg.delta = 0.1;
  cfg.seed = 21;
  CHECK(coverage_experiment(cfg, gen).failure_frequency <= 0.1);
}

TEST_CASE("coverage: trivial delta close to one") {
  GeneratorSpec gen = random_binary_generator(2, 3, 8, 1, 5);
  CoverageConfig cfg;
  cfg.bound = Method::eta_ub;
  cfg.trials = 500;
  cfg.delta = 0.999;
  cfg.seed = 3;
  CHECK(coverage_experiment(cfg, gen).failure_frequency <= 0.999);
}

TEST_CASE("coverage: RC and SD kinds run against enumerated ground truth") {
  GeneratorSpec gen = random_binary_generator(3, 3, 6, 1, 17);
  for (Method method : {Method::rc_n1_bd, Method::rc_n1_var, Method::sd_bd,
                        Method::sd_bousquet, Method::sd_sb_pos, Method::sd_sb_neg}) {
    CoverageConfig cfg;
    cfg.bound = method;
    cfg.trials = 500;
    cfg.delta = 0.1;
    cfg.seed = 19;
    CAPTURE(method_tag(method));
    CHECK(coverage_experiment(cfg, gen).failure_frequency <= 0.1);
  }
}

TEST_CASE("coverage capacity errors") {
  GeneratorSpec big_m = random_binary_generator(2, 3, 21, 1, 5);
  CoverageConfig cfg;
  cfg.bound = Method::era_bd;
  cfg.trials = 10;
  cfg.delta = 0.1;
  CHECK_THROWS_AS(coverage_experiment(cfg, big_m), error);

  GeneratorSpec big_space = random_binary_generator(8, 3, 8, 1, 5);  // 8^8 > 2^20
  cfg.bound = Method::rc_n1_bd;
  try {
    coverage_experiment(cfg, big_space);
    FAIL("oversized sample space accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::capacity);
  }

  cfg.bound = Method::tau_bhatia_davis;
  GeneratorSpec gen = random_binary_generator(2, 3, 4, 1, 5);
  CHECK_THROWS_AS(coverage_experiment(cfg, gen), error);
}

TEST_CASE("coverage config JSON front end") {
  std::string out = coverage_from_json(
      R"({"bound":"era-bd","trials":200,"delta":0.1,"seed":3,
          "generator":{"kind":"binary","domain_size":4,"k":3,"m":6,"n":1}})");
  CHECK(out.find("\"bound\":\"ERA_BD\"") != std::string::npos);
  CHECK(out.find("\"trials\":200") != std::string::npos);
  CHECK_THROWS_AS(coverage_from_json("{nope"), error);
  CHECK_THROWS_AS(coverage_from_json(R"({"bound":"no-such"})"), error);
}
