#include "radebounds/chains.hpp"

#include <algorithm>

#include "radebounds/errors.hpp"

namespace rade {

BoundResult era_upper_from_stats(const ClassStats& stats, double mcera, std::size_t n,
                                 Method era_method, Confidence delta, bool clamp_nu) {
  BoundResult result;
  switch (era_method) {
    case Method::era_bd: {
      result = era_bound_bd(stats.z, n, stats.m, delta);
      result.value += mcera;  // era_bound_bd yields the additive epsilon
      result.inputs.emplace_back("mcera", mcera);
      break;
    }
    case Method::era_sb_nu:
      result = era_bound_sb_nu(mcera, stats.z_hat, stats.nu_hat, n, stats.m, delta);
      break;
    case Method::era_sb_wvar:
      result = era_bound_sb_wvar(mcera, stats.z_hat, stats.wvar_hat, n, stats.m, delta);
      break;
    default:
      throw_invalid("method " + std::string(method_tag(era_method)) +
                    " is not an ERA bound");
  }
  if (clamp_nu) {
    result.value = std::min(result.value, stats.nu_hat);
    result.inputs.emplace_back("clamp_nu", 1.0);
  }
  return result;
}

BoundResult rc_upper_chained(const ClassStats& stats, double mcera, std::size_t n,
                             Method era_method, Confidence delta, bool clamp_nu) {
  Confidence half(delta.delta / 2.0);
  BoundResult era = era_upper_from_stats(stats, mcera, n, era_method, half, clamp_nu);
  BoundResult rc = rc_bound_from_era(era.value, stats.c, stats.m, half);
  rc.delta = delta.delta;
  rc.inputs.emplace_back("mcera", mcera);
  rc.inputs.emplace_back("n", static_cast<double>(n));
  rc.inputs.emplace_back("delta_era", half.delta);
  rc.inputs.emplace_back("delta_rc", half.delta);
  rc.inputs.emplace_back("era_method_" + std::string(method_cli_name(era_method)), 1.0);
  return rc;
}

BoundResult rc_upper_n1_var_chained(const ClassStats& stats, double mcera1, Confidence delta) {
  Confidence half(delta.delta / 2.0);
  BoundResult wvar = wvar_upper_bound(stats.wvar_hat, stats.z, stats.m, half);
  BoundResult rc = rc_bound_n1_var(mcera1, stats.z, wvar.value, stats.m, half);
  rc.delta = delta.delta;
  rc.inputs.emplace_back("wvar_hat", stats.wvar_hat);
  rc.inputs.emplace_back("delta_wvar", half.delta);
  rc.inputs.emplace_back("delta_rc", half.delta);
  return rc;
}

}  // namespace rade
