#include "radebounds/tails.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "radebounds/bounds.hpp"
#include "radebounds/errors.hpp"

namespace rade {

namespace {

struct KindName {
  TailKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 14> kKindNames{{
    {TailKind::era_bd, "era-bd"},
    {TailKind::era_sb_nu, "era-sb-nu"},
    {TailKind::era_sb_wvar, "era-sb-wvar"},
    {TailKind::rc_era_bennett, "rc-era-bennett"},
    {TailKind::rc_era_subgamma, "rc-era-subgamma"},
    {TailKind::wvar_bennett, "wvar-bennett"},
    {TailKind::wvar_subgamma, "wvar-subgamma"},
    {TailKind::eta_bennett, "eta-bennett"},
    {TailKind::eta_subgamma, "eta-subgamma"},
    {TailKind::gamma_bennett, "gamma-bennett"},
    {TailKind::gamma_subgamma, "gamma-subgamma"},
    {TailKind::sd_bousquet, "sd-bousquet"},
    {TailKind::sd_sb_pos, "sd-sb-pos"},
    {TailKind::sd_sb_neg, "sd-sb-neg"},
}};

double field(double value, const char* name) {
  if (std::isnan(value)) {
    throw_invalid(std::string("tail formula requires parameter `") + name + "`");
  }
  if (value < 0.0) {
    throw_invalid(std::string("tail parameter `") + name + "` must be nonnegative, got " +
                  std::to_string(value));
  }
  return value;
}

std::size_t count_field(std::size_t value, const char* name) {
  if (value < 1) {
    throw_invalid(std::string("tail formula requires count parameter `") + name + "` >= 1");
  }
  return value;
}

// Left tails are only valid up to the quantity the statistic deviates from.
void check_left_range(double epsilon, double limit, const char* name) {
  if (epsilon > limit) {
    throw_invalid("epsilon (" + std::to_string(epsilon) + ") exceeds `" + name + "` (" +
                  std::to_string(limit) + "); the left tail is only valid for epsilon <= " +
                  name);
  }
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

// exp(-eps^2 / denom) with the degenerate denom = 0 resolved by limits.
double subgamma(double eps_sq_scale, double denom) {
  if (denom == 0.0) return eps_sq_scale == 0.0 ? 1.0 : 0.0;
  return clamp01(std::exp(-eps_sq_scale / denom));
}

// exp(-scale * h(x)); scale = 0 degenerates to a point mass.
double bennett(double scale, double x, double epsilon) {
  if (scale == 0.0) return epsilon == 0.0 ? 1.0 : 0.0;
  return clamp01(std::exp(-scale * bennett_h(x)));
}

}  // namespace

std::string_view tail_kind_name(TailKind kind) {
  for (const auto& e : kKindNames) {
    if (e.kind == kind) return e.name;
  }
  return "unknown";
}

std::optional<TailKind> tail_kind_from_name(std::string_view name) {
  for (const auto& e : kKindNames) {
    if (e.name == name) return e.kind;
  }
  return std::nullopt;
}

double tail_probability(TailKind kind, double epsilon, const TailParams& p) {
  if (!(epsilon >= 0.0)) {
    throw_invalid("epsilon must be nonnegative, got " + std::to_string(epsilon));
  }

  switch (kind) {
    case TailKind::era_bd: {
      double z = field(p.z, "z");
      double nm = static_cast<double>(count_field(p.n, "n")) *
                  static_cast<double>(count_field(p.m, "m"));
      return subgamma(nm * epsilon * epsilon, 2.0 * z * z);
    }
    case TailKind::era_sb_nu: {
      double era = field(p.era, "era");
      double z_hat = field(p.z_hat, "z_hat");
      double nu_hat = field(p.nu_hat, "nu_hat");
      double nm = static_cast<double>(count_field(p.n, "n")) *
                  static_cast<double>(count_field(p.m, "m"));
      check_left_range(epsilon, era, "era");
      return subgamma(nm * epsilon * epsilon, 4.0 * z_hat * (era + nu_hat));
    }
    case TailKind::era_sb_wvar: {
      double era = field(p.era, "era");
      double z_hat = field(p.z_hat, "z_hat");
      double wvar_hat = field(p.wvar_hat, "wvar_hat");
      double nm = static_cast<double>(count_field(p.n, "n")) *
                  static_cast<double>(count_field(p.m, "m"));
      check_left_range(epsilon, era, "era");
      return subgamma(nm * epsilon * epsilon, 4.0 * (z_hat * era + wvar_hat));
    }
    case TailKind::rc_era_bennett: {
      double rc = field(p.rc, "rc");
      double c = field(p.c, "c");
      double m = static_cast<double>(count_field(p.m, "m"));
      check_left_range(epsilon, rc, "rc");
      if (rc == 0.0) return epsilon == 0.0 ? 1.0 : 0.0;
      return bennett(m * rc / c, -epsilon / rc, epsilon);
    }
    case TailKind::rc_era_subgamma: {
      double rc = field(p.rc, "rc");
      double c = field(p.c, "c");
      double m = static_cast<double>(count_field(p.m, "m"));
      check_left_range(epsilon, rc, "rc");
      return subgamma(m * epsilon * epsilon, 2.0 * c * rc);
    }
    case TailKind::wvar_bennett: {
      double wvar = field(p.wvar, "wvar");
      double z = field(p.z, "z");
      double m = static_cast<double>(count_field(p.m, "m"));
      check_left_range(epsilon, wvar, "wvar");
      if (wvar == 0.0) return epsilon == 0.0 ? 1.0 : 0.0;
      return bennett(m * wvar / (z * z), -epsilon / wvar, epsilon);
    }
    case TailKind::wvar_subgamma: {
      double wvar = field(p.wvar, "wvar");
      double z = field(p.z, "z");
      double m = static_cast<double>(count_field(p.m, "m"));
      check_left_range(epsilon, wvar, "wvar");
      return subgamma(m * epsilon * epsilon, 2.0 * z * z * wvar);
    }
    case TailKind::eta_bennett:
    case TailKind::gamma_bennett: {
      const char* name = kind == TailKind::eta_bennett ? "eta" : "gamma";
      double gap = field(kind == TailKind::eta_bennett ? p.eta : p.gamma, name);
      double c = field(p.c, "c");
      double m = static_cast<double>(count_field(p.m, "m"));
      check_left_range(epsilon, gap, name);
      if (gap == 0.0) return epsilon == 0.0 ? 1.0 : 0.0;
      return bennett(m * gap / c, -epsilon / gap, epsilon);
    }
    case TailKind::eta_subgamma:
    case TailKind::gamma_subgamma: {
      const char* name = kind == TailKind::eta_subgamma ? "eta" : "gamma";
      double gap = field(kind == TailKind::eta_subgamma ? p.eta : p.gamma, name);
      double c = field(p.c, "c");
      double m = static_cast<double>(count_field(p.m, "m"));
      check_left_range(epsilon, gap, name);
      return subgamma(m * epsilon * epsilon, 2.0 * c * gap);
    }
    case TailKind::sd_bousquet: {
      double tau = field(p.tau, "tau");
      double c = field(p.c, "c");
      double ez = field(p.ez, "ez");
      double m = static_cast<double>(count_field(p.m, "m"));
      double v = tau + 2.0 * c * ez;
      if (v == 0.0) return epsilon == 0.0 ? 1.0 : 0.0;
      return bennett(m * v, epsilon / v, epsilon);
    }
    case TailKind::sd_sb_pos:
    case TailKind::sd_sb_neg: {
      const char* name = kind == TailKind::sd_sb_pos ? "eta" : "gamma";
      double gap = field(kind == TailKind::sd_sb_pos ? p.eta : p.gamma, name);
      double c = field(p.c, "c");
      double ez = field(p.ez, "ez");
      double m = static_cast<double>(count_field(p.m, "m"));
      double denom = 2.0 * c * (ez + gap + epsilon / 3.0);
      return subgamma(m * epsilon * epsilon, denom);
    }
  }
  throw_invalid("unknown tail kind");
}

}  // namespace rade
