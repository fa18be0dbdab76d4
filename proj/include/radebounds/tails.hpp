#ifndef RADEBOUNDS_TAILS_HPP
#define RADEBOUNDS_TAILS_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>

namespace rade {

/// One evaluator per tail formula. Bennett kinds are the sharp exponential
/// forms; the matching *_subgamma kinds are their quadratic relaxations,
/// which the explicit bound calculators invert in closed form.
enum class TailKind {
  era_bd,           // exp(-nm eps^2 / (2 z^2))
  era_sb_nu,        // exp(-nm eps^2 / (4 z_hat (era + nu_hat)))
  era_sb_wvar,      // exp(-nm eps^2 / (4 (z_hat era + wvar_hat)))
  rc_era_bennett,   // exp(-(m rc / c) h(-eps / rc))
  rc_era_subgamma,  // exp(-m eps^2 / (2 c rc))
  wvar_bennett,     // exp(-(m wvar / z^2) h(-eps / wvar))
  wvar_subgamma,    // exp(-m eps^2 / (2 z^2 wvar))
  eta_bennett,      // exp(-(m eta / c) h(-eps / eta))
  eta_subgamma,     // exp(-m eps^2 / (2 c eta))
  gamma_bennett,    // exp(-(m gamma / c) h(-eps / gamma))
  gamma_subgamma,   // exp(-m eps^2 / (2 c gamma))
  sd_bousquet,      // exp(-m v h(eps / v)), v = tau + 2 c ez
  sd_sb_pos,        // exp(-m eps^2 / (2 c (ez + eta + eps/3)))
  sd_sb_neg,        // exp(-m eps^2 / (2 c (ez + gamma + eps/3)))
};

std::string_view tail_kind_name(TailKind kind);
std::optional<TailKind> tail_kind_from_name(std::string_view name);

/// Parameters for tail_probability. Each kind reads only the fields its
/// formula names; a required field left at NaN (or a count at 0) is an
/// input error. Unknown population quantities (era, rc, wvar, eta, gamma)
/// accept any valid upper bound.
struct TailParams {
  static constexpr double unset = std::numeric_limits<double>::quiet_NaN();
  double z = unset;
  double z_hat = unset;
  double nu_hat = unset;
  double wvar_hat = unset;
  double era = unset;
  double rc = unset;
  double wvar = unset;
  double eta = unset;
  double gamma = unset;
  double tau = unset;
  double ez = unset;
  double c = unset;
  std::size_t n = 0;
  std::size_t m = 0;
};

/// Right-hand side of the chosen tail formula at deviation epsilon, clamped
/// to [0, 1]. Left-tail kinds reject epsilon beyond the quantity they
/// deviate from (e.g. eps > era) with an error naming the constraint.
double tail_probability(TailKind kind, double epsilon, const TailParams& params);

}  // namespace rade

#endif
