#ifndef RADEBOUNDS_COVERAGE_HPP
#define RADEBOUNDS_COVERAGE_HPP

#include <cstdint>
#include <string>

#include "radebounds/bounds.hpp"
#include "radebounds/exact.hpp"

namespace rade {

/// Synthetic class + sampling distribution with exactly computable ground
/// truth, plus the per-trial sample size m and sign-vector count n.
struct GeneratorSpec {
  GeneratorSpec(FiniteDomain domain, std::size_t m, std::size_t n, std::string descriptor);

  FiniteDomain domain;
  std::size_t m;
  std::size_t n;
  std::string descriptor;  // echoed in reports
};

/// Random binary class: entries in {0, b} over [0, b].
GeneratorSpec random_binary_generator(std::size_t domain_size, std::size_t functions,
                                      std::size_t m, std::size_t n, std::uint64_t value_seed,
                                      double b = 1.0);

/// Random class with dyadic entries (multiples of (b-a)/64) in [a, b].
GeneratorSpec random_dyadic_generator(std::size_t domain_size, std::size_t functions,
                                      std::size_t m, std::size_t n, std::uint64_t value_seed,
                                      double a = -0.25, double b = 0.75);

struct CoverageConfig {
  Method bound = Method::era_bd;
  std::size_t trials = 10000;
  double delta = 0.05;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct CoverageReport {
  Method bound;
  double delta = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double failure_frequency = 0.0;
  std::uint64_t seed = 0;
  std::string ground_truth;   // which exact oracle the bound was tested against
  std::string generator;
  std::size_t m = 0;
  std::size_t n = 0;

  std::string to_json_string() const;
};

/// Seeded Monte Carlo estimate of the failure frequency of a probabilistic
/// bound: the fraction of trials in which the bound excluded the exactly
/// computed ground truth. Deterministic given the seed.
CoverageReport coverage_experiment(const CoverageConfig& config, const GeneratorSpec& gen);

/// JSON front end used by the C API and the CLI; see README for the schema.
std::string coverage_from_json(const std::string& config_json);

}  // namespace rade

#endif
