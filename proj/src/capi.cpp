#include "radebounds.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include "json.hpp"
#include "radebounds/bounds.hpp"
#include "radebounds/chains.hpp"
#include "radebounds/class_stats.hpp"
#include "radebounds/coverage.hpp"
#include "radebounds/errors.hpp"
#include "radebounds/exact.hpp"
#include "radebounds/selfbounding.hpp"
#include "radebounds/simulation.hpp"
#include "radebounds/tails.hpp"

struct rade_matrix {
  rade::EvalMatrix impl;
};

namespace {

thread_local std::string g_last_error;

rade_status map_error(const rade::error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case rade::errc::invalid_argument:
      return RADE_ERR_INVALID;
    case rade::errc::parse:
      return RADE_ERR_PARSE;
    case rade::errc::capacity:
      return RADE_ERR_CAPACITY;
  }
  return RADE_ERR_INTERNAL;
}

template <typename Fn>
rade_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RADE_OK;
  } catch (const rade::error& e) {
    return map_error(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RADE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RADE_ERR_INTERNAL;
  }
}

void require(const void* ptr, const char* name) {
  if (ptr == nullptr) {
    rade::throw_invalid(std::string("`") + name + "` must not be null");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

double json_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    rade::throw_invalid(std::string("method requires numeric parameter `") + key + "`");
  }
  return j[key].get<double>();
}

std::size_t json_count(const nlohmann::json& j, const char* key) {
  double v = json_number(j, key);
  if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    rade::throw_invalid(std::string("parameter `") + key + "` must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

rade::BoundResult dispatch_bound(const std::string& method_name, const nlohmann::json& p) {
  using namespace rade;
  auto method = method_from_cli_name(method_name);
  if (!method) throw_invalid("unknown bound method `" + method_name + "`");
  switch (*method) {
    case Method::era_bd:
      return era_bound_bd(json_number(p, "z"), json_count(p, "n"), json_count(p, "m"),
                          Confidence(json_number(p, "delta")));
    case Method::era_sb_nu:
      return era_bound_sb_nu(json_number(p, "mcera"), json_number(p, "z_hat"),
                             json_number(p, "nu_hat"), json_count(p, "n"), json_count(p, "m"),
                             Confidence(json_number(p, "delta")));
    case Method::era_sb_wvar:
      return era_bound_sb_wvar(json_number(p, "mcera"), json_number(p, "z_hat"),
                               json_number(p, "wvar_hat"), json_count(p, "n"),
                               json_count(p, "m"), Confidence(json_number(p, "delta")));
    case Method::rc_from_era:
      return rc_bound_from_era(json_number(p, "era_ub"), json_number(p, "c"),
                               json_count(p, "m"), Confidence(json_number(p, "delta")));
    case Method::rc_n1_bd:
      return rc_bound_n1_bd(json_number(p, "mcera1"), json_number(p, "z"), json_count(p, "m"),
                            Confidence(json_number(p, "delta")));
    case Method::rc_n1_var:
      return rc_bound_n1_var(json_number(p, "mcera1"), json_number(p, "z"),
                             json_number(p, "wvar_ub"), json_count(p, "m"),
                             Confidence(json_number(p, "delta")));
    case Method::wvar_ub:
      return wvar_upper_bound(json_number(p, "wvar_hat"), json_number(p, "z"),
                              json_count(p, "m"), Confidence(json_number(p, "delta")));
    case Method::eta_ub:
      return eta_upper_bound(json_number(p, "eta_hat"), json_number(p, "c"),
                             json_count(p, "m"), Confidence(json_number(p, "delta")));
    case Method::gamma_ub:
      return gamma_upper_bound(json_number(p, "gamma_hat"), json_number(p, "c"),
                               json_count(p, "m"), Confidence(json_number(p, "delta")));
    case Method::tau_bhatia_davis:
      return tau_upper_bhatia_davis(json_number(p, "eta_ub"), json_number(p, "gamma_ub"),
                                    json_number(p, "c"));
    case Method::sd_bd:
      return sd_bound_bd(json_number(p, "c"), json_count(p, "m"),
                         Confidence(json_number(p, "delta")));
    case Method::sd_bousquet: {
      SupDeviationInputs inp{json_number(p, "ez_ub"), json_number(p, "tau"),
                             json_number(p, "c"), json_count(p, "m")};
      return sd_bound_bousquet(inp, Confidence(json_number(p, "delta")));
    }
    case Method::sd_sb_pos: {
      SupDeviationInputs inp{json_number(p, "ez_ub"), 0.0, json_number(p, "c"),
                             json_count(p, "m")};
      return sd_bound_sb(inp, json_number(p, "eta"), Side::pos,
                         Confidence(json_number(p, "delta")));
    }
    case Method::sd_sb_neg: {
      SupDeviationInputs inp{json_number(p, "ez_ub"), 0.0, json_number(p, "c"),
                             json_count(p, "m")};
      return sd_bound_sb(inp, json_number(p, "gamma"), Side::neg,
                         Confidence(json_number(p, "delta")));
    }
  }
  throw_invalid("unknown bound method `" + method_name + "`");
}

std::string stats_json(const rade::EvalMatrix& mat) {
  rade::ClassStats s = rade::class_stats(mat);
  nlohmann::json j;
  j["m"] = s.m;
  j["K"] = mat.cols();
  j["a"] = mat.a();
  j["b"] = mat.b();
  j["c"] = s.c;
  j["z"] = s.z;
  j["z_hat"] = s.z_hat;
  j["nu_hat"] = s.nu_hat;
  j["wvar_hat"] = s.wvar_hat;
  j["eta_hat"] = s.eta_hat;
  j["gamma_hat"] = s.gamma_hat;
  j["zero_column_added"] = mat.zero_column_added();
  return j.dump();
}

}  // namespace

extern "C" {

const char* rade_version(void) { return "1.0.0"; }

const char* rade_last_error(void) { return g_last_error.c_str(); }

void rade_string_free(char* s) { std::free(s); }

rade_status rade_matrix_create(const double* values, size_t rows, size_t cols, double a,
                               double b, rade_matrix** out) {
  return guarded([&] {
    require(values, "values");
    require(out, "out");
    std::vector<double> v(values, values + rows * cols);
    *out = new rade_matrix{rade::EvalMatrix(std::move(v), rows, cols, a, b)};
  });
}

rade_status rade_matrix_load_csv(const char* path, rade_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new rade_matrix{rade::load_eval_csv(std::filesystem::path(path))};
  });
}

void rade_matrix_free(rade_matrix* mat) { delete mat; }

size_t rade_matrix_rows(const rade_matrix* mat) { return mat ? mat->impl.rows() : 0; }
size_t rade_matrix_cols(const rade_matrix* mat) { return mat ? mat->impl.cols() : 0; }
double rade_matrix_a(const rade_matrix* mat) { return mat ? mat->impl.a() : 0.0; }
double rade_matrix_b(const rade_matrix* mat) { return mat ? mat->impl.b() : 0.0; }
int rade_matrix_zero_column_added(const rade_matrix* mat) {
  return mat && mat->impl.zero_column_added() ? 1 : 0;
}

rade_status rade_matrix_get(const rade_matrix* mat, size_t row, size_t col, double* out) {
  return guarded([&] {
    require(mat, "mat");
    require(out, "out");
    if (row >= mat->impl.rows() || col >= mat->impl.cols()) {
      rade::throw_invalid("index (" + std::to_string(row) + ", " + std::to_string(col) +
                          ") out of range");
    }
    *out = mat->impl(row, col);
  });
}

rade_status rade_stats(const rade_matrix* mat, rade_class_stats* out) {
  return guarded([&] {
    require(mat, "mat");
    require(out, "out");
    rade::ClassStats s = rade::class_stats(mat->impl);
    *out = rade_class_stats{s.z_hat, s.nu_hat, s.wvar_hat, s.eta_hat,
                            s.gamma_hat, s.c, s.z, s.m};
  });
}

rade_status rade_stats_json(const rade_matrix* mat, char** json_out) {
  return guarded([&] {
    require(mat, "mat");
    require(json_out, "json_out");
    *json_out = dup_string(stats_json(mat->impl));
  });
}

rade_status rade_mcera_seeded(const rade_matrix* mat, size_t n, uint64_t seed, double* out) {
  return guarded([&] {
    require(mat, "mat");
    require(out, "out");
    rade::SignMatrix sigma(n, mat->impl.rows(), seed);
    *out = rade::mcera(mat->impl, sigma);
  });
}

rade_status rade_mcera_signs(const rade_matrix* mat, const int8_t* signs, size_t n,
                             double* out) {
  return guarded([&] {
    require(mat, "mat");
    require(signs, "signs");
    require(out, "out");
    std::vector<std::int8_t> v(signs, signs + n * mat->impl.rows());
    rade::SignMatrix sigma = rade::SignMatrix::from_values(std::move(v), n, mat->impl.rows());
    *out = rade::mcera(mat->impl, sigma);
  });
}

rade_status rade_era_exact(const rade_matrix* mat, double* out) {
  return guarded([&] {
    require(mat, "mat");
    require(out, "out");
    *out = rade::era_exact(mat->impl);
  });
}

rade_status rade_bennett_h(double x, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = rade::bennett_h(x);
  });
}

rade_status rade_fixed_point(double u, double v, double y, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = rade::fixed_point(u, v, y);
  });
}

#define RADE_BOUND_IMPL(expr)    \
  return guarded([&] {           \
    require(out, "out");         \
    *out = (expr).value;         \
  })

rade_status rade_bound_era_bd(double z, size_t n, size_t m, double delta, double* out) {
  RADE_BOUND_IMPL(rade::era_bound_bd(z, n, m, rade::Confidence(delta)));
}

rade_status rade_bound_era_sb_nu(double mcera, double z_hat, double nu_hat, size_t n,
                                 size_t m, double delta, double* out) {
  RADE_BOUND_IMPL(rade::era_bound_sb_nu(mcera, z_hat, nu_hat, n, m, rade::Confidence(delta)));
}

rade_status rade_bound_era_sb_wvar(double mcera, double z_hat, double wvar_hat, size_t n,
                                   size_t m, double delta, double* out) {
  RADE_BOUND_IMPL(
      rade::era_bound_sb_wvar(mcera, z_hat, wvar_hat, n, m, rade::Confidence(delta)));
}

rade_status rade_bound_rc_from_era(double era_ub, double c, size_t m, double delta,
                                   double* out) {
  RADE_BOUND_IMPL(rade::rc_bound_from_era(era_ub, c, m, rade::Confidence(delta)));
}

rade_status rade_bound_rc_n1_bd(double mcera1, double z, size_t m, double delta, double* out) {
  RADE_BOUND_IMPL(rade::rc_bound_n1_bd(mcera1, z, m, rade::Confidence(delta)));
}

rade_status rade_bound_rc_n1_var(double mcera1, double z, double wvar_ub, size_t m,
                                 double delta, double* out) {
  RADE_BOUND_IMPL(rade::rc_bound_n1_var(mcera1, z, wvar_ub, m, rade::Confidence(delta)));
}

rade_status rade_bound_wvar_ub(double wvar_hat, double z, size_t m, double delta,
                               double* out) {
  RADE_BOUND_IMPL(rade::wvar_upper_bound(wvar_hat, z, m, rade::Confidence(delta)));
}

rade_status rade_bound_eta_ub(double eta_hat, double c, size_t m, double delta, double* out) {
  RADE_BOUND_IMPL(rade::eta_upper_bound(eta_hat, c, m, rade::Confidence(delta)));
}

rade_status rade_bound_gamma_ub(double gamma_hat, double c, size_t m, double delta,
                                double* out) {
  RADE_BOUND_IMPL(rade::gamma_upper_bound(gamma_hat, c, m, rade::Confidence(delta)));
}

rade_status rade_bound_tau_bhatia_davis(double eta_ub, double gamma_ub, double c,
                                        double* out) {
  RADE_BOUND_IMPL(rade::tau_upper_bhatia_davis(eta_ub, gamma_ub, c));
}

rade_status rade_bound_sd_bd(double c, size_t m, double delta, double* out) {
  RADE_BOUND_IMPL(rade::sd_bound_bd(c, m, rade::Confidence(delta)));
}

rade_status rade_bound_sd_bousquet(double ez_ub, double tau, double c, size_t m, double delta,
                                   double* out) {
  RADE_BOUND_IMPL(rade::sd_bound_bousquet(rade::SupDeviationInputs{ez_ub, tau, c, m},
                                          rade::Confidence(delta)));
}

rade_status rade_bound_sd_sb(double ez_ub, double gap, int negative_side, double c, size_t m,
                             double delta, double* out) {
  RADE_BOUND_IMPL(rade::sd_bound_sb(rade::SupDeviationInputs{ez_ub, 0.0, c, m}, gap,
                                    negative_side ? rade::Side::neg : rade::Side::pos,
                                    rade::Confidence(delta)));
}

#undef RADE_BOUND_IMPL

rade_status rade_bound_json(const char* method, const char* params_json, char** json_out) {
  return guarded([&] {
    require(method, "method");
    require(params_json, "params_json");
    require(json_out, "json_out");
    nlohmann::json params;
    try {
      params = nlohmann::json::parse(params_json);
    } catch (const nlohmann::json::parse_error& e) {
      rade::throw_parse(std::string("bound params: ") + e.what());
    }
    *json_out = dup_string(dispatch_bound(method, params).to_json_string());
  });
}

rade_status rade_bound_from_matrix_json(const rade_matrix* mat, const char* method, size_t n,
                                        uint64_t sigma_seed, double delta,
                                        const char* era_method, int clamp_nu,
                                        char** json_out) {
  return guarded([&] {
    using namespace rade;
    require(mat, "mat");
    require(method, "method");
    require(json_out, "json_out");
    auto parsed = method_from_cli_name(method);
    if (!parsed) throw_invalid(std::string("unknown bound method `") + method + "`");
    Confidence conf(delta);
    ClassStats stats = class_stats(mat->impl);
    SignMatrix sigma(n, mat->impl.rows(), sigma_seed);
    double mc = mcera(mat->impl, sigma);

    BoundResult result;
    switch (*parsed) {
      case Method::era_bd:
      case Method::era_sb_nu:
      case Method::era_sb_wvar:
        result = era_upper_from_stats(stats, mc, n, *parsed, conf, clamp_nu != 0);
        break;
      case Method::rc_from_era: {
        Method era = Method::era_sb_nu;
        if (era_method != nullptr) {
          auto e = method_from_cli_name(era_method);
          if (!e) throw_invalid(std::string("unknown ERA method `") + era_method + "`");
          era = *e;
        }
        result = rc_upper_chained(stats, mc, n, era, conf, clamp_nu != 0);
        break;
      }
      case Method::rc_n1_bd:
        if (n != 1) throw_invalid("rc-n1-bd requires n = 1");
        result = rc_bound_n1_bd(mc, stats.z, stats.m, conf);
        break;
      case Method::rc_n1_var:
        if (n != 1) throw_invalid("rc-n1-var requires n = 1");
        result = rc_upper_n1_var_chained(stats, mc, conf);
        break;
      case Method::wvar_ub:
        result = wvar_upper_bound(stats.wvar_hat, stats.z, stats.m, conf);
        break;
      case Method::eta_ub:
        result = eta_upper_bound(stats.eta_hat, stats.c, stats.m, conf);
        break;
      case Method::gamma_ub:
        result = gamma_upper_bound(stats.gamma_hat, stats.c, stats.m, conf);
        break;
      case Method::tau_bhatia_davis: {
        Confidence half(delta / 2.0);
        BoundResult eta = eta_upper_bound(stats.eta_hat, stats.c, stats.m, half);
        BoundResult gamma = gamma_upper_bound(stats.gamma_hat, stats.c, stats.m, half);
        result = tau_upper_bhatia_davis(eta.value, gamma.value, stats.c);
        result.delta = delta;
        result.inputs.emplace_back("delta_eta", half.delta);
        result.inputs.emplace_back("delta_gamma", half.delta);
        break;
      }
      default:
        throw_invalid(std::string("method `") + method +
                      "` needs population quantities that a sample matrix cannot provide; "
                      "pass explicit parameters instead");
    }
    result.inputs.emplace_back("sigma_seed", static_cast<double>(sigma_seed));
    *json_out = dup_string(result.to_json_string());
  });
}

rade_status rade_tail_params_init(rade_tail_params* params) {
  return guarded([&] {
    require(params, "params");
    double unset = std::numeric_limits<double>::quiet_NaN();
    *params = rade_tail_params{unset, unset, unset, unset, unset, unset, unset,
                               unset, unset, unset, unset, unset, 0, 0};
  });
}

rade_status rade_tail_probability(rade_tail_kind kind, double epsilon,
                                  const rade_tail_params* params, double* out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    rade::TailParams p;
    p.z = params->z;
    p.z_hat = params->z_hat;
    p.nu_hat = params->nu_hat;
    p.wvar_hat = params->wvar_hat;
    p.era = params->era;
    p.rc = params->rc;
    p.wvar = params->wvar;
    p.eta = params->eta;
    p.gamma = params->gamma;
    p.tau = params->tau;
    p.ez = params->ez;
    p.c = params->c;
    p.n = params->n;
    p.m = params->m;
    if (kind < RADE_TAIL_ERA_BD || kind > RADE_TAIL_SD_SB_NEG) {
      rade::throw_invalid("unknown tail kind " + std::to_string(static_cast<int>(kind)));
    }
    *out = rade::tail_probability(static_cast<rade::TailKind>(kind), epsilon, p);
  });
}

rade_status rade_verify_json(const char* kind, const rade_matrix* domain, const double* mu,
                             size_t m, size_t n, int weak, uint64_t seed, uint64_t samples,
                             int threads, char** json_out, int* passed_out) {
  return guarded([&] {
    using namespace rade;
    require(kind, "kind");
    require(domain, "domain");
    require(json_out, "json_out");
    require(passed_out, "passed_out");
    VerifyOptions opt;
    opt.seed = seed;
    if (samples > 0) opt.samples = samples;
    opt.threads = threads;

    std::string k(kind);
    SelfBoundingReport report;
    if (k == "mcera") {
      report = verify_selfbounding_mcera(domain->impl, n, weak != 0, opt);
    } else {
      std::vector<double> weights;
      if (mu != nullptr) {
        weights.assign(mu, mu + domain->impl.rows());
      } else {
        weights.assign(domain->impl.rows(), 1.0 / static_cast<double>(domain->impl.rows()));
      }
      FiniteDomain fd(domain->impl, std::move(weights));
      if (k == "sd-pos") {
        report = verify_selfbounding_sd(fd, m, Side::pos, opt);
      } else if (k == "sd-neg") {
        report = verify_selfbounding_sd(fd, m, Side::neg, opt);
      } else if (k == "wvar") {
        report = verify_selfbounding_wvar(fd, m, opt);
      } else if (k == "eta") {
        report = verify_selfbounding_eta(fd, m, opt);
      } else if (k == "gamma") {
        report = verify_selfbounding_gamma(fd, m, opt);
      } else {
        throw_invalid("unknown verification kind `" + k +
                      "`; expected mcera, sd-pos, sd-neg, wvar, eta or gamma");
      }
    }
    *json_out = dup_string(report.to_json_string());
    *passed_out = report.passed ? 1 : 0;
  });
}

rade_status rade_coverage_json(const char* config_json, char** json_out) {
  return guarded([&] {
    require(config_json, "config_json");
    require(json_out, "json_out");
    *json_out = dup_string(rade::coverage_from_json(config_json));
  });
}

rade_status rade_sweep_csv(const char* config_json, char** csv_out) {
  return guarded([&] {
    require(config_json, "config_json");
    require(csv_out, "csv_out");
    *csv_out = dup_string(rade::sweep_csv_from_json(config_json));
  });
}

}  // extern "C"
