#include "radebounds/bounds.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "radebounds/errors.hpp"

namespace rade {

namespace {

constexpr double kOrderingSlop = 1e-12;  // tolerance for float noise in chained stats

double log_inv(Confidence delta) { return std::log(1.0 / delta.delta); }

void require_nonneg(double v, const char* name) {
  if (!(v >= 0.0)) {
    throw_invalid(std::string(name) + " must be nonnegative, got " + std::to_string(v));
  }
}

void require_positive_count(std::size_t v, const char* name) {
  if (v < 1) {
    throw_invalid(std::string(name) + " must be at least 1");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw_invalid(std::string(name) + " must be positive, got " + std::to_string(v));
  }
}

BoundResult make_result(Method method, double value, std::optional<double> delta,
                        std::vector<std::pair<std::string, double>> inputs) {
  BoundResult out;
  out.method = method;
  out.value = value;
  out.delta = delta;
  out.inputs = std::move(inputs);
  return out;
}

}  // namespace

Confidence::Confidence(double d) : delta(d) {
  if (!(d > 0.0) || !(d < 1.0)) {
    throw_invalid("delta must lie in (0, 1), got " + std::to_string(d));
  }
}

namespace {

struct MethodName {
  Method method;
  std::string_view tag;
  std::string_view cli;
};

constexpr std::array<MethodName, 14> kMethodNames{{
    {Method::era_bd, "ERA_BD", "era-bd"},
    {Method::era_sb_nu, "ERA_SB_NU", "era-sb-nu"},
    {Method::era_sb_wvar, "ERA_SB_WVAR", "era-sb-wvar"},
    {Method::rc_from_era, "RC_FROM_ERA", "rc-from-era"},
    {Method::rc_n1_bd, "RC_N1_BD", "rc-n1-bd"},
    {Method::rc_n1_var, "RC_N1_VAR", "rc-n1-var"},
    {Method::wvar_ub, "WVAR_UB", "wvar-ub"},
    {Method::eta_ub, "ETA_UB", "eta-ub"},
    {Method::gamma_ub, "GAMMA_UB", "gamma-ub"},
    {Method::sd_bd, "SD_BD", "sd-bd"},
    {Method::sd_bousquet, "SD_BOUSQUET", "sd-bousquet"},
    {Method::sd_sb_pos, "SD_SB_POS", "sd-sb-pos"},
    {Method::sd_sb_neg, "SD_SB_NEG", "sd-sb-neg"},
    {Method::tau_bhatia_davis, "TAU_BHATIA_DAVIS", "tau-bhatia-davis"},
}};

}  // namespace

std::string_view method_tag(Method m) {
  for (const auto& e : kMethodNames) {
    if (e.method == m) return e.tag;
  }
  return "UNKNOWN";
}

std::string_view method_cli_name(Method m) {
  for (const auto& e : kMethodNames) {
    if (e.method == m) return e.cli;
  }
  return "unknown";
}

std::optional<Method> method_from_cli_name(std::string_view name) {
  for (const auto& e : kMethodNames) {
    if (e.cli == name || e.tag == name) return e.method;
  }
  return std::nullopt;
}

std::string BoundResult::to_json_string() const {
  nlohmann::json j;
  j["method"] = std::string(method_tag(method));
  j["value"] = value;
  if (delta) j["delta"] = *delta;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = in;
  return j.dump();
}

double bennett_h(double x) {
  if (!(x >= -1.0)) {
    throw_invalid("bennett_h requires x >= -1, got " + std::to_string(x));
  }
  if (x == -1.0) return 1.0;  // continuity limit of (1+x)ln(1+x) - x
  return (1.0 + x) * std::log1p(x) - x;
}

double fixed_point(double u, double v, double y) {
  require_nonneg(u, "u");
  require_nonneg(v, "v");
  require_nonneg(y, "y");
  return u + y / 2.0 + std::sqrt(y * y / 4.0 + u * y + v);
}

BoundResult era_bound_bd(double z, std::size_t n, std::size_t m, Confidence delta) {
  require_nonneg(z, "z");
  require_positive_count(n, "n");
  require_positive_count(m, "m");
  double nm = static_cast<double>(n) * static_cast<double>(m);
  double value = z == 0.0 ? 0.0 : z * std::sqrt(2.0 * log_inv(delta) / nm);
  return make_result(Method::era_bd, value, delta.delta,
                     {{"z", z}, {"n", static_cast<double>(n)}, {"m", static_cast<double>(m)}});
}

BoundResult era_bound_sb_nu(double mcera, double z_hat, double nu_hat,
                            std::size_t n, std::size_t m, Confidence delta) {
  require_nonneg(mcera, "mcera");
  require_nonneg(z_hat, "z_hat");
  require_nonneg(nu_hat, "nu_hat");
  require_positive_count(n, "n");
  require_positive_count(m, "m");
  double slop = kOrderingSlop * std::max(1.0, z_hat);
  if (mcera > nu_hat + slop) {
    throw_invalid("mcera (" + std::to_string(mcera) + ") exceeds nu_hat (" +
                  std::to_string(nu_hat) + ")");
  }
  if (nu_hat > z_hat + slop) {
    throw_invalid("nu_hat (" + std::to_string(nu_hat) + ") exceeds z_hat (" +
                  std::to_string(z_hat) + ")");
  }
  mcera = std::min(mcera, nu_hat);

  std::vector<std::pair<std::string, double>> inputs{
      {"mcera", mcera}, {"z_hat", z_hat}, {"nu_hat", nu_hat},
      {"n", static_cast<double>(n)}, {"m", static_cast<double>(m)}};
  if (z_hat == 0.0) {
    return make_result(Method::era_sb_nu, mcera, delta.delta, std::move(inputs));
  }
  double nm = static_cast<double>(n) * static_cast<double>(m);
  double L = log_inv(delta);
  double q = 2.0 * z_hat * L / nm;
  double value = mcera + q + std::sqrt(q * q + 4.0 * z_hat * (mcera + nu_hat) * L / nm);
  return make_result(Method::era_sb_nu, value, delta.delta, std::move(inputs));
}

BoundResult era_bound_sb_wvar(double mcera, double z_hat, double wvar_hat,
                              std::size_t n, std::size_t m, Confidence delta) {
  require_nonneg(mcera, "mcera");
  require_nonneg(z_hat, "z_hat");
  require_nonneg(wvar_hat, "wvar_hat");
  require_positive_count(n, "n");
  require_positive_count(m, "m");
  if (wvar_hat > z_hat * z_hat + kOrderingSlop * std::max(1.0, z_hat * z_hat)) {
    throw_invalid("wvar_hat (" + std::to_string(wvar_hat) + ") exceeds z_hat^2 (" +
                  std::to_string(z_hat * z_hat) + ")");
  }

  std::vector<std::pair<std::string, double>> inputs{
      {"mcera", mcera}, {"z_hat", z_hat}, {"wvar_hat", wvar_hat},
      {"n", static_cast<double>(n)}, {"m", static_cast<double>(m)}};
  if (z_hat == 0.0) {
    return make_result(Method::era_sb_wvar, mcera, delta.delta, std::move(inputs));
  }
  double nm = static_cast<double>(n) * static_cast<double>(m);
  double L = log_inv(delta);
  double q = 2.0 * z_hat * L / nm;
  double value = mcera + q + std::sqrt(q * q + 4.0 * (z_hat * mcera + wvar_hat) * L / nm);
  return make_result(Method::era_sb_wvar, value, delta.delta, std::move(inputs));
}

BoundResult rc_bound_from_era(double era_ub, double c, std::size_t m, Confidence delta) {
  require_nonneg(era_ub, "era_ub");
  require_positive(c, "c");
  require_positive_count(m, "m");
  double L = log_inv(delta);
  double q = c * L / static_cast<double>(m);
  double value = era_ub + q + std::sqrt(q * q + 2.0 * c * L * era_ub / static_cast<double>(m));
  return make_result(Method::rc_from_era, value, delta.delta,
                     {{"era_ub", era_ub}, {"c", c}, {"m", static_cast<double>(m)}});
}

BoundResult rc_bound_n1_bd(double mcera1, double z, std::size_t m, Confidence delta) {
  require_nonneg(mcera1, "mcera1");
  require_nonneg(z, "z");
  require_positive_count(m, "m");
  double value = mcera1 + z * std::sqrt(2.0 * log_inv(delta) / static_cast<double>(m));
  return make_result(Method::rc_n1_bd, value, delta.delta,
                     {{"mcera1", mcera1}, {"z", z}, {"m", static_cast<double>(m)}});
}

BoundResult rc_bound_n1_var(double mcera1, double z, double wvar_ub,
                            std::size_t m, Confidence delta) {
  require_nonneg(mcera1, "mcera1");
  require_nonneg(z, "z");
  require_nonneg(wvar_ub, "wvar_ub");
  require_positive_count(m, "m");
  double L = log_inv(delta);
  double md = static_cast<double>(m);
  double q = 2.0 * z * L / md;
  double value = mcera1 +
                 std::sqrt(9.0 / 8.0 * q * q + 2.0 * (2.0 * z * mcera1 + wvar_ub) * L / md) +
                 17.0 * z * L / (8.0 * md);
  return make_result(Method::rc_n1_var, value, delta.delta,
                     {{"mcera1", mcera1}, {"z", z}, {"wvar_ub", wvar_ub},
                      {"m", static_cast<double>(m)}});
}

BoundResult wvar_upper_bound(double wvar_hat, double z, std::size_t m, Confidence delta) {
  require_nonneg(wvar_hat, "wvar_hat");
  require_nonneg(z, "z");
  require_positive_count(m, "m");
  double L = log_inv(delta);
  double q = z * z * L / static_cast<double>(m);
  double value = wvar_hat + q +
                 std::sqrt(q * q + 2.0 * z * z * wvar_hat * L / static_cast<double>(m));
  return make_result(Method::wvar_ub, value, delta.delta,
                     {{"wvar_hat", wvar_hat}, {"z", z}, {"m", static_cast<double>(m)}});
}

namespace {

BoundResult gap_upper_bound(Method method, const char* name, double gap_hat, double c,
                            std::size_t m, Confidence delta) {
  require_nonneg(gap_hat, name);
  require_positive(c, "c");
  require_positive_count(m, "m");
  double L = log_inv(delta);
  double q = c * L / static_cast<double>(m);
  double value = gap_hat + q + std::sqrt(q * q + 2.0 * c * gap_hat * L / static_cast<double>(m));
  return make_result(method, value, delta.delta,
                     {{name, gap_hat}, {"c", c}, {"m", static_cast<double>(m)}});
}

}  // namespace

BoundResult eta_upper_bound(double eta_hat, double c, std::size_t m, Confidence delta) {
  return gap_upper_bound(Method::eta_ub, "eta_hat", eta_hat, c, m, delta);
}

BoundResult gamma_upper_bound(double gamma_hat, double c, std::size_t m, Confidence delta) {
  return gap_upper_bound(Method::gamma_ub, "gamma_hat", gamma_hat, c, m, delta);
}

BoundResult tau_upper_bhatia_davis(double eta_ub, double gamma_ub, double c) {
  require_nonneg(eta_ub, "eta_ub");
  require_nonneg(gamma_ub, "gamma_ub");
  require_positive(c, "c");
  double eta = std::min(eta_ub, c);
  double gamma = std::min(gamma_ub, c);
  double chain = std::max(gamma * (c - gamma), eta * (c - eta));
  double value = std::min({chain, gamma * eta, c * c / 4.0});
  return make_result(Method::tau_bhatia_davis, value, std::nullopt,
                     {{"eta_ub", eta_ub}, {"gamma_ub", gamma_ub}, {"c", c}});
}

BoundResult sd_bound_bd(double c, std::size_t m, Confidence delta) {
  require_positive(c, "c");
  require_positive_count(m, "m");
  double value = c * std::sqrt(log_inv(delta) / (2.0 * static_cast<double>(m)));
  return make_result(Method::sd_bd, value, delta.delta,
                     {{"c", c}, {"m", static_cast<double>(m)}});
}

namespace {

void validate_sd_inputs(const SupDeviationInputs& inp) {
  require_nonneg(inp.ez_upper, "ez_upper");
  require_nonneg(inp.tau, "tau");
  require_positive(inp.c, "c");
  require_positive_count(inp.m, "m");
  double cap = inp.c * inp.c / 4.0;
  if (inp.tau > cap * (1.0 + kOrderingSlop)) {
    throw_invalid("tau (" + std::to_string(inp.tau) + ") exceeds c^2/4 (" +
                  std::to_string(cap) + ")");
  }
}

}  // namespace

BoundResult sd_bound_bousquet(const SupDeviationInputs& inp, Confidence delta) {
  validate_sd_inputs(inp);
  double L = log_inv(delta);
  double md = static_cast<double>(inp.m);
  double v = inp.tau + 2.0 * inp.c * inp.ez_upper;
  double value = inp.ez_upper + std::sqrt(2.0 * L * v / md) + inp.c * L / (3.0 * md);
  return make_result(Method::sd_bousquet, value, delta.delta,
                     {{"ez_upper", inp.ez_upper}, {"tau", inp.tau}, {"c", inp.c},
                      {"m", static_cast<double>(inp.m)}});
}

BoundResult sd_bound_sb(const SupDeviationInputs& inp, double gap, Side side, Confidence delta) {
  require_nonneg(inp.ez_upper, "ez_upper");
  require_positive(inp.c, "c");
  require_positive_count(inp.m, "m");
  require_nonneg(gap, side == Side::pos ? "eta" : "gamma");
  double L = log_inv(delta);
  double md = static_cast<double>(inp.m);
  double q = inp.c * L / (3.0 * md);
  double value = inp.ez_upper +
                 std::sqrt(q * q + 2.0 * inp.c * L * (inp.ez_upper + gap) / md) + q;
  return make_result(side == Side::pos ? Method::sd_sb_pos : Method::sd_sb_neg, value,
                     delta.delta,
                     {{"ez_upper", inp.ez_upper},
                      {side == Side::pos ? "eta" : "gamma", gap},
                      {"c", inp.c},
                      {"m", static_cast<double>(inp.m)}});
}

}  // namespace rade
