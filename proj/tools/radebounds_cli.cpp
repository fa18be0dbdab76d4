// Command-line front end for the radebounds shared library. All computation
// happens behind the C API; this layer only marshals flags and files.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "radebounds.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerificationFailed = 2;
constexpr int kExitCapacity = 3;

int exit_code_for(rade_status status) {
  switch (status) {
    case RADE_OK:
      return kExitOk;
    case RADE_ERR_CAPACITY:
      return kExitCapacity;
    default:
      return kExitValidation;
  }
}

int fail(rade_status status) {
  std::cerr << "error: " << rade_last_error() << "\n";
  return exit_code_for(status);
}

int emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return kExitOk;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file " << output_path << "\n";
    return kExitValidation;
  }
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
  return kExitOk;
}

struct MatrixHandle {
  rade_matrix* ptr = nullptr;
  ~MatrixHandle() { rade_matrix_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { rade_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

int resolve_threads_flag(int flag_value) {
  if (flag_value != 0) return flag_value;
  if (const char* env = std::getenv("RADE_BOUNDS_THREADS")) {
    return std::atoi(env);
  }
  return 0;  // library default: available parallelism
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concentration bounds for Monte Carlo Rademacher averages"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rade_version());

  std::string output_path;
  app.add_option("-o,--output", output_path, "Write output to a file instead of stdout")
      ->capture_default_str();
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker thread cap (default: RADE_BOUNDS_THREADS or all cores)");

  // ---- stats ----
  auto* stats_cmd = app.add_subcommand("stats", "Empirical class statistics from a CSV file");
  std::string stats_input;
  stats_cmd->add_option("--input,-i", stats_input, "Evaluation-matrix CSV")->required();

  // ---- bound ----
  auto* bound_cmd = app.add_subcommand(
      "bound", "Evaluate one bound, from explicit parameters or from a CSV file");
  std::string bound_method;
  bound_cmd->add_option("method", bound_method, "Bound method (kebab-case, e.g. era-bd)")
      ->required();
  std::string bound_input;
  bound_cmd->add_option("--input,-i", bound_input,
                        "Evaluation-matrix CSV; plugs statistics into the bound");
  std::uint64_t sigma_seed = 0;
  bound_cmd->add_option("--sigma-seed", sigma_seed, "Seed of the Rademacher sign matrix");
  std::string era_method = "era-sb-nu";
  bound_cmd->add_option("--era-method", era_method,
                        "ERA bound chained into rc-from-era in CSV mode");
  bool clamp_nu = false;
  bound_cmd->add_flag("--clamp-nu", clamp_nu, "Truncate ERA bounds at nu_hat");
  double delta_flag = 0.05;
  bound_cmd->add_option("--delta", delta_flag, "Confidence parameter in (0,1)");
  std::size_t n_flag = 1;
  bound_cmd->add_option("--n", n_flag, "Number of Rademacher sign vectors");
  // free-form numeric parameters forwarded to the method dispatcher
  std::vector<std::pair<std::string, std::string>> numeric_params = {
      {"--z", "z"},           {"--z-hat", "z_hat"},       {"--nu-hat", "nu_hat"},
      {"--wvar-hat", "wvar_hat"}, {"--mcera", "mcera"},   {"--mcera1", "mcera1"},
      {"--era-ub", "era_ub"}, {"--c", "c"},               {"--wvar-ub", "wvar_ub"},
      {"--eta-hat", "eta_hat"}, {"--gamma-hat", "gamma_hat"}, {"--eta-ub", "eta_ub"},
      {"--gamma-ub", "gamma_ub"}, {"--eta", "eta"},       {"--gamma", "gamma"},
      {"--ez-ub", "ez_ub"},   {"--tau", "tau"},           {"--m", "m"},
  };
  std::vector<std::optional<double>> numeric_values(numeric_params.size());
  for (std::size_t i = 0; i < numeric_params.size(); ++i) {
    bound_cmd->add_option(numeric_params[i].first, numeric_values[i],
                          "Parameter " + numeric_params[i].second);
  }

  // ---- verify ----
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a self-bounding property by enumeration");
  std::string verify_kind;
  verify_cmd
      ->add_option("kind", verify_kind, "One of: mcera, sd-pos, sd-neg, wvar, eta, gamma")
      ->required();
  std::string verify_input;
  verify_cmd->add_option("--input,-i", verify_input, "Evaluation/domain-matrix CSV")
      ->required();
  std::size_t verify_m = 0;
  verify_cmd->add_option("--m", verify_m, "Sample size (sample-replacement kinds)");
  std::size_t verify_n = 1;
  verify_cmd->add_option("--n", verify_n, "Sign-vector count (mcera kind)");
  bool verify_weak = false;
  verify_cmd->add_flag("--weak", verify_weak, "Check the weak self-bounding property");
  std::string verify_mu;
  verify_cmd->add_option("--mu", verify_mu,
                         "Comma-separated sampling distribution (default uniform)");
  std::uint64_t verify_seed = 0;
  verify_cmd->add_option("--seed", verify_seed, "Seed for sampled mode");
  std::uint64_t verify_samples = 0;
  verify_cmd->add_option("--samples", verify_samples,
                         "Configurations to draw beyond the exhaustive cut-off");

  // ---- coverage ----
  auto* coverage_cmd = app.add_subcommand(
      "coverage", "Seeded failure-frequency experiment against exact oracles");
  std::string coverage_bound;
  coverage_cmd->add_option("--bound", coverage_bound, "Bound method to test")->required();
  std::size_t coverage_trials = 10000;
  coverage_cmd->add_option("--trials", coverage_trials, "Number of trials");
  double coverage_delta = 0.05;
  coverage_cmd->add_option("--delta", coverage_delta, "Confidence parameter");
  std::uint64_t coverage_seed = 0;
  coverage_cmd->add_option("--seed", coverage_seed, "Experiment seed");
  std::string coverage_spec;
  coverage_cmd->add_option("--spec", coverage_spec, "Generator spec JSON file");
  std::string coverage_generator = "binary";
  coverage_cmd->add_option("--generator", coverage_generator, "binary or dyadic");
  std::size_t coverage_domain = 4, coverage_k = 4, coverage_m = 8, coverage_n = 2;
  coverage_cmd->add_option("--domain-size", coverage_domain, "Domain points");
  coverage_cmd->add_option("--k", coverage_k, "Functions in the class");
  coverage_cmd->add_option("--m", coverage_m, "Sample size per trial");
  coverage_cmd->add_option("--n", coverage_n, "Sign vectors per trial");
  std::uint64_t coverage_value_seed = 1;
  coverage_cmd->add_option("--value-seed", coverage_value_seed, "Class generator seed");

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "Deterministic bound-comparison tables");
  int sweep_figure = 0;
  sweep_cmd->add_option("--figure", sweep_figure, "1, 2 or 3")->required();
  std::size_t sweep_m = 1'000'000;
  sweep_cmd->add_option("--m", sweep_m, "Sample size");
  std::size_t sweep_n = 1;
  sweep_cmd->add_option("--n", sweep_n, "Sign-vector count");
  double sweep_delta = 0.05;
  sweep_cmd->add_option("--delta", sweep_delta, "Confidence parameter");
  double sweep_C = 1e6;
  sweep_cmd->add_option("--C", sweep_C, "Class-size constant of the simulated average");
  std::size_t sweep_grid = 0;
  sweep_cmd->add_option("--grid", sweep_grid, "Grid points (default 200, or 100 per axis)");
  double sweep_lo = 0.0, sweep_hi = 0.0;
  sweep_cmd->add_option("--lo", sweep_lo, "Sweep lower end (default 1/m)");
  sweep_cmd->add_option("--hi", sweep_hi, "Sweep upper end");
  std::string sweep_mode = "simulated";
  sweep_cmd->add_option("--mode", sweep_mode, "simulated or worst-case");

  CLI11_PARSE(app, argc, argv);
  threads = resolve_threads_flag(threads);

  if (*stats_cmd) {
    MatrixHandle mat;
    rade_status st = rade_matrix_load_csv(stats_input.c_str(), &mat.ptr);
    if (st != RADE_OK) return fail(st);
    OwnedString json;
    st = rade_stats_json(mat.ptr, &json.ptr);
    if (st != RADE_OK) return fail(st);
    return emit(json.str(), output_path);
  }

  if (*bound_cmd) {
    OwnedString json;
    rade_status st;
    if (!bound_input.empty()) {
      MatrixHandle mat;
      st = rade_matrix_load_csv(bound_input.c_str(), &mat.ptr);
      if (st != RADE_OK) return fail(st);
      st = rade_bound_from_matrix_json(mat.ptr, bound_method.c_str(), n_flag, sigma_seed,
                                       delta_flag, era_method.c_str(), clamp_nu ? 1 : 0,
                                       &json.ptr);
    } else {
      std::ostringstream params;
      params << "{";
      params << "\"delta\":" << delta_flag;
      params << ",\"n\":" << n_flag;
      for (std::size_t i = 0; i < numeric_params.size(); ++i) {
        if (numeric_values[i]) {
          params << ",\"" << numeric_params[i].second << "\":" << *numeric_values[i];
        }
      }
      params << "}";
      st = rade_bound_json(bound_method.c_str(), params.str().c_str(), &json.ptr);
    }
    if (st != RADE_OK) return fail(st);
    return emit(json.str(), output_path);
  }

  if (*verify_cmd) {
    MatrixHandle mat;
    rade_status st = rade_matrix_load_csv(verify_input.c_str(), &mat.ptr);
    if (st != RADE_OK) return fail(st);

    std::vector<double> mu;
    if (!verify_mu.empty()) {
      std::stringstream ss(verify_mu);
      std::string field;
      while (std::getline(ss, field, ',')) mu.push_back(std::atof(field.c_str()));
    }
    if (verify_kind != "mcera" && verify_m == 0) {
      std::cerr << "error: kind `" << verify_kind << "` requires --m\n";
      return kExitValidation;
    }
    OwnedString json;
    int passed = 0;
    st = rade_verify_json(verify_kind.c_str(), mat.ptr, mu.empty() ? nullptr : mu.data(),
                          verify_m, verify_n, verify_weak ? 1 : 0, verify_seed,
                          verify_samples, threads, &json.ptr, &passed);
    if (st != RADE_OK) return fail(st);
    int rc = emit(json.str(), output_path);
    if (rc != kExitOk) return rc;
    return passed ? kExitOk : kExitVerificationFailed;
  }

  if (*coverage_cmd) {
    std::string config;
    if (!coverage_spec.empty()) {
      std::ifstream in(coverage_spec);
      if (!in) {
        std::cerr << "error: cannot open spec file " << coverage_spec << "\n";
        return kExitValidation;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      config = buf.str();
    } else {
      std::ostringstream buf;
      buf << "{\"bound\":\"" << json_escape(coverage_bound) << "\""
          << ",\"trials\":" << coverage_trials << ",\"delta\":" << coverage_delta
          << ",\"seed\":" << coverage_seed << ",\"threads\":" << threads
          << ",\"generator\":{\"kind\":\"" << json_escape(coverage_generator) << "\""
          << ",\"domain_size\":" << coverage_domain << ",\"k\":" << coverage_k
          << ",\"m\":" << coverage_m << ",\"n\":" << coverage_n
          << ",\"value_seed\":" << coverage_value_seed << "}}";
      config = buf.str();
    }
    OwnedString json;
    rade_status st = rade_coverage_json(config.c_str(), &json.ptr);
    if (st != RADE_OK) return fail(st);
    return emit(json.str(), output_path);
  }

  if (*sweep_cmd) {
    std::ostringstream buf;
    buf << "{\"figure\":" << sweep_figure << ",\"m\":" << sweep_m << ",\"n\":" << sweep_n
        << ",\"delta\":" << sweep_delta << ",\"C\":" << sweep_C
        << ",\"grid_points\":" << sweep_grid << ",\"lo\":" << sweep_lo
        << ",\"hi\":" << sweep_hi << ",\"mcera_mode\":\"" << json_escape(sweep_mode) << "\""
        << ",\"threads\":" << threads << "}";
    std::cerr << "# sweep figure=" << sweep_figure << " m=" << sweep_m << " n=" << sweep_n
              << " delta=" << sweep_delta << "\n";
    OwnedString csv;
    rade_status st = rade_sweep_csv(buf.str().c_str(), &csv.ptr);
    if (st != RADE_OK) return fail(st);
    return emit(csv.str(), output_path);
  }

  return kExitValidation;
}
