#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "json.hpp"
#include "oracle_helpers.hpp"
#include "radebounds/bounds.hpp"
#include "radebounds/errors.hpp"
#include "radebounds/rng.hpp"

using namespace rade;
using testutil::approx_rel;

// Expected values frozen from an independent 40-digit evaluation of the
// closed forms.
namespace frozen {
constexpr double era_bd_n1 = 2.447746830680816546e-3;   // z=1, n=1, m=1e6, d=0.05
constexpr double sd_bd = 1.223873415340408273e-3;       // c=1, m=1e6, d=0.05
constexpr double bennett_h_1 = 0.38629436111989062;     // 2 ln 2 - 1
constexpr double era_sb_wvar = 3.400724255017100205e-3; // mcera=3e-3, wvar=1e-2, m=1e6
constexpr double rc_from_era = 1.080458232613801174e-3; // era=1e-3, c=1, m=1e6
constexpr double rc_n1_var0 = 1.272083889705049218e-5;  // all zero but z=1, m=1e6
constexpr double wvar_ub = 2.129567548576290247e-2;     // wvar=1e-2, z=1, m=1e3
constexpr double eta_ub = 0.34549765900619998;          // eta=0.3, c=1, m=1e3
constexpr double sd_bousquet = 9.662788741404143862e-2; // EZ=0.05, tau=0.2475, m=1e3
constexpr double sd_sb = 0.10574096895454478;           // EZ=0.05, eta=0.45, m=1e3
}  // namespace frozen

TEST_CASE("confidence parameter domain") {
  CHECK_THROWS_AS(Confidence(0.0), error);
  CHECK_THROWS_AS(Confidence(1.0), error);
  CHECK_THROWS_AS(Confidence(-0.1), error);
  CHECK_THROWS_AS(Confidence(1.5), error);
  CHECK(Confidence(0.05).delta == 0.05);
}

TEST_CASE("bennett function") {
  CHECK(bennett_h(0.0) == 0.0);
  CHECK(bennett_h(-1.0) == 1.0);
  CHECK(approx_rel(bennett_h(1.0), frozen::bennett_h_1, 1e-14));
  CHECK_THROWS_AS(bennett_h(-1.0000001), error);

  // h'(0) = 0 by finite differences, and convexity on a grid
  double fd = (bennett_h(1e-6) - bennett_h(-1e-6)) / 2e-6;
  CHECK(std::abs(fd) < 1e-5);
  for (int i = 1; i < 100; ++i) {
    double x = -1.0 + 0.02 * i;
    double mid = bennett_h(x);
    double avg = 0.5 * (bennett_h(x - 0.02) + bennett_h(x + 0.02));
    CHECK(mid <= avg + 1e-12);
  }
  // h(-x) >= x^2/2 on [0, 1]
  for (int i = 0; i <= 1000; ++i) {
    double x = i / 1000.0;
    CHECK(bennett_h(-x) >= x * x / 2.0);
  }
}

TEST_CASE("fixed point of r(x) = u + sqrt(v + y x)") {
  CHECK(fixed_point(0, 0, 0) == 0.0);
  CHECK(fixed_point(0, 4, 0) == 2.0);
  CHECK(fixed_point(1, 1, 1) == 3.0);
  CHECK(1.0 + std::sqrt(1.0 + 1.0 * 3.0) == 3.0);  // back-substitution r(3) = 3
  CHECK_THROWS_AS(fixed_point(-1, 0, 0), error);
  CHECK_THROWS_AS(fixed_point(0, -1, 0), error);
  CHECK_THROWS_AS(fixed_point(0, 0, -1), error);

  SplitMix64 rng(31337);
  for (int rep = 0; rep < 1000; ++rep) {
    double u = 10.0 * rng.next_double();
    double v = 10.0 * rng.next_double();
    double y = 10.0 * rng.next_double();
    double x = fixed_point(u, v, y);
    double rx = u + std::sqrt(v + y * x);
    CHECK(approx_rel(rx, x, 1e-12));
    double beyond = 2.0 * x + 1.0;
    CHECK(u + std::sqrt(v + y * beyond) < beyond);  // largest fixed point
  }
}

TEST_CASE("bounded-difference ERA bound") {
  BoundResult r = era_bound_bd(1.0, 1, 1'000'000, Confidence(0.05));
  CHECK(approx_rel(r.value, frozen::era_bd_n1, 1e-14));
  CHECK(r.method == Method::era_bd);
  CHECK(*r.delta == 0.05);

  // quadrupling n*m exactly halves the epsilon
  BoundResult r4 = era_bound_bd(1.0, 4, 1'000'000, Confidence(0.05));
  CHECK(r.value == 2.0 * r4.value);

  CHECK(era_bound_bd(0.0, 1, 10, Confidence(0.05)).value == 0.0);
}

TEST_CASE("self-bounding ERA bound (nu form)") {
  CHECK(era_bound_sb_nu(0.0, 0.0, 0.0, 1, 10, Confidence(0.05)).value == 0.0);

  // closed form equals the fixed point of r(x) = mcera + sqrt(4 z (nu+x) L / nm)
  SplitMix64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    double z_hat = 0.25 + rng.next_double();
    double nu_hat = z_hat * rng.next_double();
    double mc = nu_hat * rng.next_double();
    std::size_t n = 1 + rng.below(20);
    std::size_t m = 10 + rng.below(100000);
    double delta = 0.01 + 0.9 * rng.next_double();
    double L = std::log(1.0 / delta);
    double nm = static_cast<double>(n) * static_cast<double>(m);
    double y = 4.0 * z_hat * L / nm;
    double got = era_bound_sb_nu(mc, z_hat, nu_hat, n, m, Confidence(delta)).value;
    CHECK(approx_rel(got, fixed_point(mc, y * nu_hat, y), 1e-12));
  }

  CHECK_THROWS_AS(era_bound_sb_nu(0.5, 1.0, 0.25, 1, 10, Confidence(0.05)), error);
  CHECK_THROWS_AS(era_bound_sb_nu(0.1, 0.2, 0.5, 1, 10, Confidence(0.05)), error);
}

TEST_CASE("self-bounding ERA bound (wimpy-variance form)") {
  CHECK(era_bound_sb_wvar(0.0, 0.0, 0.0, 1, 10, Confidence(0.05)).value == 0.0);

  double got = era_bound_sb_wvar(3e-3, 1.0, 1e-2, 1, 1'000'000, Confidence(0.05)).value;
  CHECK(approx_rel(got, frozen::era_sb_wvar, 1e-12));

  // with wvar = nu * z the wvar form dominates the nu form
  SplitMix64 rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    double z_hat = 0.25 + rng.next_double();
    double nu_hat = z_hat * rng.next_double();
    double mc = nu_hat * rng.next_double();
    std::size_t n = 1 + rng.below(8);
    std::size_t m = 10 + rng.below(10000);
    Confidence delta(0.05);
    double nu_form = era_bound_sb_nu(mc, z_hat, nu_hat, n, m, delta).value;
    double wvar_form = era_bound_sb_wvar(mc, z_hat, nu_hat * z_hat, n, m, delta).value;
    CHECK(wvar_form >= nu_form * (1.0 - 1e-12));
  }

  CHECK_THROWS_AS(era_bound_sb_wvar(0.0, 1.0, 1.5, 1, 10, Confidence(0.05)), error);
}

TEST_CASE("RC bound from an ERA bound") {
  Confidence delta(0.05);
  double L = std::log(20.0);
  BoundResult zero = rc_bound_from_era(0.0, 1.0, 1000, delta);
  CHECK(zero.value == 2.0 * L / 1000.0);

  CHECK(approx_rel(rc_bound_from_era(1e-3, 1.0, 1'000'000, delta).value,
                   frozen::rc_from_era, 1e-12));

  SplitMix64 rng(29);
  for (int rep = 0; rep < 1000; ++rep) {
    double lo = rng.next_double();
    double hi = lo + rng.next_double() + 1e-9;
    double c = 0.1 + rng.next_double();
    std::size_t m = 10 + rng.below(100000);
    CHECK(rc_bound_from_era(hi, c, m, delta).value >
          rc_bound_from_era(lo, c, m, delta).value);
  }
}

TEST_CASE("direct n=1 bounds") {
  Confidence delta(0.05);
  CHECK(approx_rel(rc_bound_n1_bd(0.0, 1.0, 1'000'000, delta).value, frozen::era_bd_n1,
                   1e-14));

  // additive term vanishes as delta -> 1
  CHECK(rc_bound_n1_bd(0.0, 1.0, 1000, Confidence(1.0 - 1e-12)).value < 1e-7);

  // linear in z: the range-centered class uses z = c/2 and halves the term
  double full = rc_bound_n1_bd(0.01, 1.0, 1000, delta).value - 0.01;
  double half = rc_bound_n1_bd(0.01, 0.5, 1000, delta).value - 0.01;
  CHECK(approx_rel(half, full / 2.0, 1e-12));

  CHECK(approx_rel(rc_bound_n1_var(0.0, 1.0, 0.0, 1'000'000, delta).value,
                   frozen::rc_n1_var0, 1e-12));

  // explicit form equals the fixed point of
  // r(x) = mcera + sqrt(2 (2 z x + wvar) L / m) + z L / (8 m)
  SplitMix64 rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    double z = 0.25 + rng.next_double();
    double mc = 0.5 * rng.next_double();
    double wvar = z * z * rng.next_double();
    std::size_t m = 100 + rng.below(100000);
    double d = 0.01 + 0.5 * rng.next_double();
    double L = std::log(1.0 / d);
    double md = static_cast<double>(m);
    double u = mc + z * L / (8.0 * md);
    double v = 2.0 * wvar * L / md;
    double y = 4.0 * z * L / md;
    double got = rc_bound_n1_var(mc, z, wvar, m, Confidence(d)).value;
    CHECK(approx_rel(got, fixed_point(u, v, y), 1e-9));
  }
}

TEST_CASE("wimpy-variance estimation bound") {
  Confidence delta(0.05);
  double L = std::log(20.0);
  CHECK(wvar_upper_bound(0.0, 1.0, 1000, delta).value == 2.0 * L / 1000.0);
  CHECK(approx_rel(wvar_upper_bound(1e-2, 1.0, 1000, delta).value, frozen::wvar_ub, 1e-12));

  SplitMix64 rng(43);
  for (int rep = 0; rep < 300; ++rep) {
    double wv = rng.next_double();
    double z = 0.25 + rng.next_double();
    std::size_t m = 10 + rng.below(100000);
    CHECK(wvar_upper_bound(wv, z, m, delta).value >= wv);
  }
}

TEST_CASE("range-gap estimation bounds") {
  Confidence delta(0.05);
  double L = std::log(20.0);
  CHECK(eta_upper_bound(0.0, 1.0, 1000, delta).value == 2.0 * L / 1000.0);
  CHECK(approx_rel(eta_upper_bound(0.3, 1.0, 1000, delta).value, frozen::eta_ub, 1e-12));

  // the gamma case is the eta case on the negated class: identical formula
  SplitMix64 rng(47);
  for (int rep = 0; rep < 100; ++rep) {
    double x = rng.next_double();
    double c = 0.1 + rng.next_double();
    std::size_t m = 10 + rng.below(10000);
    CHECK(eta_upper_bound(x, c, m, delta).value ==
          gamma_upper_bound(x, c, m, delta).value);
  }
}

TEST_CASE("Bhatia-Davis variance bound") {
  CHECK(tau_upper_bhatia_davis(0.5, 0.5, 1.0).value == 0.25);
  CHECK(tau_upper_bhatia_davis(1.0, 0.0, 1.0).value == 0.0);
  CHECK(tau_upper_bhatia_davis(0.3, 0.9, 1.0).value == doctest::Approx(0.21).epsilon(1e-14));
  // estimates beyond c are truncated
  CHECK(tau_upper_bhatia_davis(2.0, 2.0, 1.0).value == 0.25);
  CHECK_FALSE(tau_upper_bhatia_davis(0.3, 0.9, 1.0).delta.has_value());
}

TEST_CASE("bounded-difference SD bound") {
  CHECK(approx_rel(sd_bound_bd(1.0, 1'000'000, Confidence(0.05)).value, frozen::sd_bd,
                   1e-14));
  CHECK(sd_bound_bd(1.0, 1000, Confidence(1.0 - 1e-12)).value < 1e-7);
  CHECK(sd_bound_bd(2.0, 1000, Confidence(0.05)).value ==
        2.0 * sd_bound_bd(1.0, 1000, Confidence(0.05)).value);
}

TEST_CASE("Bousquet SD bound") {
  Confidence delta(0.05);
  double L = std::log(20.0);
  SupDeviationInputs zero{0.0, 0.0, 1.0, 1000};
  CHECK(sd_bound_bousquet(zero, delta).value == L / 3000.0);

  SupDeviationInputs inp{0.05, 0.2475, 1.0, 1000};
  CHECK(approx_rel(sd_bound_bousquet(inp, delta).value, frozen::sd_bousquet, 1e-12));

  SupDeviationInputs bad{0.0, 0.3, 1.0, 1000};  // tau above c^2/4
  CHECK_THROWS_AS(sd_bound_bousquet(bad, delta), error);

  // monotone in both the expectation bound and the variance proxy
  SplitMix64 rng(53);
  for (int rep = 0; rep < 200; ++rep) {
    double ez = 0.2 * rng.next_double();
    double tau = 0.25 * rng.next_double();
    std::size_t m = 100 + rng.below(10000);
    SupDeviationInputs base{ez, tau, 1.0, m};
    SupDeviationInputs more_ez{ez + 0.01, tau, 1.0, m};
    SupDeviationInputs more_tau{ez, tau * 0.99, 1.0, m};
    CHECK(sd_bound_bousquet(more_ez, delta).value > sd_bound_bousquet(base, delta).value);
    CHECK(sd_bound_bousquet(more_tau, delta).value <= sd_bound_bousquet(base, delta).value);
  }
}

TEST_CASE("self-bounding SD bound") {
  Confidence delta(0.05);
  double L = std::log(20.0);
  SupDeviationInputs zero{0.0, 0.0, 1.0, 1000};
  CHECK(sd_bound_sb(zero, 0.0, Side::pos, delta).value == 2.0 * L / 3000.0);

  SupDeviationInputs inp{0.05, 0.0, 1.0, 1000};
  CHECK(approx_rel(sd_bound_sb(inp, 0.45, Side::pos, delta).value, frozen::sd_sb, 1e-12));

  // the negative side with gamma equals the positive side with eta = gamma
  SplitMix64 rng(59);
  for (int rep = 0; rep < 100; ++rep) {
    double ez = 0.2 * rng.next_double();
    double gap = rng.next_double();
    std::size_t m = 100 + rng.below(10000);
    SupDeviationInputs i{ez, 0.0, 1.0, m};
    CHECK(sd_bound_sb(i, gap, Side::neg, delta).value ==
          sd_bound_sb(i, gap, Side::pos, delta).value);
  }
}

TEST_CASE("bounds shrink with m and grow as delta shrinks") {
  SplitMix64 rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t m = 100 + rng.below(10000);
    double strict = 0.01, loose = 0.2;
    CHECK(era_bound_bd(1.0, 1, m, Confidence(strict)).value >=
          era_bound_bd(1.0, 1, m, Confidence(loose)).value);
    CHECK(era_bound_bd(1.0, 1, m, Confidence(0.05)).value >=
          era_bound_bd(1.0, 1, 2 * m, Confidence(0.05)).value);
    CHECK(era_bound_bd(1.0, 1, m, Confidence(0.05)).value >=
          era_bound_bd(1.0, 2, m, Confidence(0.05)).value);
    double wv = rng.next_double();
    CHECK(wvar_upper_bound(wv, 1.0, m, Confidence(strict)).value >=
          wvar_upper_bound(wv, 1.0, m, Confidence(loose)).value);
    CHECK(wvar_upper_bound(wv, 1.0, m, Confidence(0.05)).value >=
          wvar_upper_bound(wv, 1.0, 2 * m, Confidence(0.05)).value);
  }
}

TEST_CASE("calculators are deterministic") {
  for (int rep = 0; rep < 3; ++rep) {
    CHECK(era_bound_sb_nu(1e-3, 1.0, 0.01, 7, 12345, Confidence(0.037)).value ==
          era_bound_sb_nu(1e-3, 1.0, 0.01, 7, 12345, Confidence(0.037)).value);
  }
}

TEST_CASE("bound result serializes to method/value/delta/inputs") {
  BoundResult r = era_bound_bd(1.0, 1, 1'000'000, Confidence(0.05));
  auto j = nlohmann::json::parse(r.to_json_string());
  CHECK(j["method"] == "ERA_BD");
  CHECK(j["value"].get<double>() == r.value);
  CHECK(j["delta"].get<double>() == 0.05);
  CHECK(j["inputs"]["z"].get<double>() == 1.0);
  CHECK(j["inputs"]["m"].get<double>() == 1e6);
}
