#ifndef RADEBOUNDS_BOUNDS_HPP
#define RADEBOUNDS_BOUNDS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rade {

/// Confidence parameter; the constructor rejects delta outside (0, 1).
struct Confidence {
  explicit Confidence(double d);
  double delta;
};

enum class Method {
  era_bd,
  era_sb_nu,
  era_sb_wvar,
  rc_from_era,
  rc_n1_bd,
  rc_n1_var,
  wvar_ub,
  eta_ub,
  gamma_ub,
  sd_bd,
  sd_bousquet,
  sd_sb_pos,
  sd_sb_neg,
  tau_bhatia_davis,
};

std::string_view method_tag(Method m);       // "ERA_BD", ...
std::string_view method_cli_name(Method m);  // "era-bd", ...
std::optional<Method> method_from_cli_name(std::string_view name);

/// A computed bound together with its method tag, confidence level and an
/// echo of every numeric input that produced it.
struct BoundResult {
  Method method;
  double value = 0.0;
  std::optional<double> delta;  // absent for TAU_BHATIA_DAVIS
  std::vector<std::pair<std::string, double>> inputs;

  std::string to_json_string() const;
};

/// Inputs shared by the supremum-deviation bounds: an upper bound on the
/// expected deviation, a variance proxy tau <= c^2/4, the range width and
/// the sample size.
struct SupDeviationInputs {
  double ez_upper = 0.0;
  double tau = 0.0;
  double c = 0.0;
  std::size_t m = 0;
};

enum class Side { pos, neg };

/// Bennett function h(x) = (1+x) ln(1+x) - x, extended by continuity with
/// h(-1) = 1. Domain x >= -1.
double bennett_h(double x);

/// Largest fixed point of r(x) = u + sqrt(v + y*x) for u, v, y >= 0:
/// x* = u + y/2 + sqrt(y^2/4 + u*y + v).
double fixed_point(double u, double v, double y);

// Monte Carlo average -> empirical Rademacher average. era_bound_bd returns
// the additive epsilon only; the self-bounding variants return the full
// upper bound including the Monte Carlo average.
BoundResult era_bound_bd(double z, std::size_t n, std::size_t m, Confidence delta);
BoundResult era_bound_sb_nu(double mcera, double z_hat, double nu_hat,
                            std::size_t n, std::size_t m, Confidence delta);
BoundResult era_bound_sb_wvar(double mcera, double z_hat, double wvar_hat,
                              std::size_t n, std::size_t m, Confidence delta);

// Empirical Rademacher average -> Rademacher complexity, and the direct
// n = 1 routes.
BoundResult rc_bound_from_era(double era_ub, double c, std::size_t m, Confidence delta);
BoundResult rc_bound_n1_bd(double mcera1, double z, std::size_t m, Confidence delta);
BoundResult rc_bound_n1_var(double mcera1, double z, double wvar_ub,
                            std::size_t m, Confidence delta);

// Empirical estimators -> population quantities.
BoundResult wvar_upper_bound(double wvar_hat, double z, std::size_t m, Confidence delta);
BoundResult eta_upper_bound(double eta_hat, double c, std::size_t m, Confidence delta);
BoundResult gamma_upper_bound(double gamma_hat, double c, std::size_t m, Confidence delta);

/// Variance bound from range-gap bounds: the tightest of the Bhatia-Davis
/// chain values max{gamma(c-gamma), eta(c-eta)} and gamma*eta, capped by
/// Popoviciu's c^2/4. Inputs above c are truncated to c before evaluation.
BoundResult tau_upper_bhatia_davis(double eta_ub, double gamma_ub, double c);

// Supremum-deviation bounds. sd_bound_bd returns the additive epsilon only;
// the others return the full bound including the expected-deviation term.
BoundResult sd_bound_bd(double c, std::size_t m, Confidence delta);
BoundResult sd_bound_bousquet(const SupDeviationInputs& inp, Confidence delta);
BoundResult sd_bound_sb(const SupDeviationInputs& inp, double gap, Side side, Confidence delta);

}  // namespace rade

#endif
