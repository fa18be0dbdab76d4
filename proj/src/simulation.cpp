#include "radebounds/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "json.hpp"
#include "radebounds/bounds.hpp"
#include "radebounds/errors.hpp"
#include "radebounds/parallel.hpp"

namespace rade {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw_invalid("sweep range must satisfy 0 < lo < hi, got [" + std::to_string(lo) + ", " +
                  std::to_string(hi) + "]");
  }
  if (points < 2) throw_invalid("grid needs at least 2 points");
  std::vector<double> grid(points);
  double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                 static_cast<double>(points - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void validate_common(const SweepConfig& cfg) {
  if (cfg.m < 1) throw_invalid("m must be at least 1");
  if (cfg.n < 1) throw_invalid("n must be at least 1");
  Confidence check(cfg.delta);
  (void)check;
  if (!(cfg.massart_c > 1.0)) {
    throw_invalid("the class-size constant C must exceed 1, got " +
                  std::to_string(cfg.massart_c));
  }
  double inv_m = 1.0 / static_cast<double>(cfg.m);
  if (cfg.lo != 0.0 && cfg.lo < inv_m) {
    throw_invalid("sweep lower end must be at least 1/m = " + std::to_string(inv_m));
  }
}

struct Range {
  double lo, hi;
  std::size_t points;
};

Range resolve_range(const SweepConfig& cfg, double default_hi, std::size_t default_points) {
  Range r;
  r.lo = cfg.lo != 0.0 ? cfg.lo : 1.0 / static_cast<double>(cfg.m);
  r.hi = cfg.hi != 0.0 ? cfg.hi : default_hi;
  r.points = cfg.grid_points != 0 ? cfg.grid_points : default_points;
  return r;
}

void push_common_metadata(SweepTable& table, const SweepConfig& cfg, const Range& r) {
  table.metadata.emplace_back("figure", std::to_string(cfg.figure));
  table.metadata.emplace_back("m", std::to_string(cfg.m));
  table.metadata.emplace_back("n", std::to_string(cfg.n));
  table.metadata.emplace_back("delta", format_double(cfg.delta));
  table.metadata.emplace_back("C", format_double(cfg.massart_c));
  table.metadata.emplace_back("grid_points", std::to_string(r.points));
  table.metadata.emplace_back("lo", format_double(r.lo));
  table.metadata.emplace_back("hi", format_double(r.hi));
  table.metadata.emplace_back("mcera_mode",
                              cfg.mcera_mode == McEraMode::simulated ? "simulated"
                                                                     : "worst_case");
}

}  // namespace

std::string SweepTable::to_csv() const {
  std::string out;
  for (const auto& [key, value] : metadata) {
    out += "#" + key + "=" + value + "\n";
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ",";
    out += columns[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

double simulated_mcera(double x, std::size_t m, double massart_c) {
  if (!(x > 0.0) || x > 1.0) {
    throw_invalid("simulated_mcera requires x in (0, 1], got " + std::to_string(x));
  }
  if (!(massart_c > 1.0)) {
    throw_invalid("simulated_mcera requires C > 1, got " + std::to_string(massart_c));
  }
  return std::min(std::sqrt(x * std::log(massart_c) / static_cast<double>(m)), x);
}

SweepTable sweep_figure1(const SweepConfig& cfg) {
  if (cfg.figure != 1) throw_invalid("config figure must be 1");
  validate_common(cfg);
  Range r = resolve_range(cfg, 1.0, 200);
  std::vector<double> grid = log_grid(r.lo, r.hi, r.points);

  // z = c = z_hat = 1; the sweep variable serves as nu_hat (equal to the
  // sup-mean gap above a for [0, 1]-valued classes with a = 0).
  Confidence delta(cfg.delta);
  const double bd_eps = era_bound_bd(1.0, cfg.n, cfg.m, delta).value;

  SweepTable table;
  push_common_metadata(table, cfg, r);
  table.metadata.emplace_back("z", "1");
  table.metadata.emplace_back("z_hat", "1");
  table.metadata.emplace_back("c", "1");
  table.metadata.emplace_back("sweep_variable", "nu_hat");
  table.columns = {"sweep_var", "mcera", "bd", "sb"};
  table.rows.assign(grid.size(), {});

  parallel_chunks(grid.size(), cfg.threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      double v = grid[i];
      double mc = cfg.mcera_mode == McEraMode::simulated
                      ? simulated_mcera(v, cfg.m, cfg.massart_c)
                      : v;
      double bd = mc + bd_eps;
      double sb = era_bound_sb_nu(mc, 1.0, v, cfg.n, cfg.m, delta).value;
      table.rows[i] = {v, mc, bd, sb};
    }
  });
  return table;
}

SweepTable sweep_figure2(const SweepConfig& cfg) {
  if (cfg.figure != 2) throw_invalid("config figure must be 2");
  validate_common(cfg);
  Range r = resolve_range(cfg, 1.0, 200);
  std::vector<double> grid = log_grid(r.lo, r.hi, r.points);

  Confidence delta(cfg.delta);
  Confidence half(cfg.delta / 2.0);
  const bool with_n1 = cfg.n == 1;
  const double bd_eps_half = era_bound_bd(1.0, cfg.n, cfg.m, half).value;

  SweepTable table;
  push_common_metadata(table, cfg, r);
  table.metadata.emplace_back("z", "1");
  table.metadata.emplace_back("z_hat", "1");
  table.metadata.emplace_back("c", "1");
  table.metadata.emplace_back("sweep_variable", "wvar_hat");
  table.metadata.emplace_back("delta_split", format_double(half.delta));
  table.columns = {"sweep_var", "mcera", "bd_sb", "sb_sb"};
  if (with_n1) table.columns.push_back("ew_db");
  table.rows.assign(grid.size(), {});

  parallel_chunks(grid.size(), cfg.threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      double v = grid[i];
      double mc = cfg.mcera_mode == McEraMode::simulated
                      ? simulated_mcera(v, cfg.m, cfg.massart_c)
                      : v;
      double bd_sb = rc_bound_from_era(mc + bd_eps_half, 1.0, cfg.m, half).value;
      double era_sb = era_bound_sb_wvar(mc, 1.0, v, cfg.n, cfg.m, half).value;
      double sb_sb = rc_bound_from_era(era_sb, 1.0, cfg.m, half).value;
      table.rows[i] = {v, mc, bd_sb, sb_sb};
      if (with_n1) {
        double wv_ub = wvar_upper_bound(v, 1.0, cfg.m, half).value;
        table.rows[i].push_back(rc_bound_n1_var(mc, 1.0, wv_ub, cfg.m, half).value);
      }
    }
  });
  return table;
}

SweepTable sweep_figure3(const SweepConfig& cfg) {
  if (cfg.figure != 3) throw_invalid("config figure must be 3");
  validate_common(cfg);
  Range r = resolve_range(cfg, 0.5, 100);
  std::vector<double> grid = log_grid(r.lo, r.hi, r.points);

  // Binary-class regime: c = 1 and tau = eta (1 - eta).
  Confidence delta(cfg.delta);

  SweepTable table;
  push_common_metadata(table, cfg, r);
  table.metadata.emplace_back("c", "1");
  table.metadata.emplace_back("tau", "eta*(1-eta)");
  table.metadata.emplace_back("levels", "0.95,0.98,1,1.02,1.05,1.1,1.15");
  table.columns = {"ez", "eta", "vd", "sb", "ratio"};
  table.rows.assign(grid.size() * grid.size(), {});

  parallel_chunks(grid.size(), cfg.threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t a = begin; a < end; ++a) {
      double ez = grid[a];
      for (std::size_t b = 0; b < grid.size(); ++b) {
        double eta = grid[b];
        double tau = eta * (1.0 - eta);
        SupDeviationInputs inp{ez, tau, 1.0, cfg.m};
        double vd = sd_bound_bousquet(inp, delta).value;
        double sb = sd_bound_sb(inp, eta, Side::pos, delta).value;
        table.rows[a * grid.size() + b] = {ez, eta, vd, sb, vd / sb};
      }
    }
  });
  return table;
}

SweepTable sweep(const SweepConfig& cfg) {
  switch (cfg.figure) {
    case 1:
      return sweep_figure1(cfg);
    case 2:
      return sweep_figure2(cfg);
    case 3:
      return sweep_figure3(cfg);
    default:
      throw_invalid("figure must be 1, 2 or 3, got " + std::to_string(cfg.figure));
  }
}

std::string sweep_csv_from_json(const std::string& config_json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw_parse(std::string("sweep config: ") + e.what());
  }
  SweepConfig cfg;
  cfg.figure = j.value("figure", 1);
  cfg.m = j.value("m", std::size_t{1'000'000});
  cfg.n = j.value("n", std::size_t{1});
  cfg.delta = j.value("delta", 0.05);
  cfg.massart_c = j.value("C", 1e6);
  cfg.grid_points = j.value("grid_points", std::size_t{0});
  cfg.lo = j.value("lo", 0.0);
  cfg.hi = j.value("hi", 0.0);
  std::string mode = j.value("mcera_mode", "simulated");
  if (mode == "simulated") {
    cfg.mcera_mode = McEraMode::simulated;
  } else if (mode == "worst_case" || mode == "worst-case") {
    cfg.mcera_mode = McEraMode::worst_case;
  } else {
    throw_invalid("mcera_mode must be `simulated` or `worst_case`, got `" + mode + "`");
  }
  cfg.threads = j.value("threads", 0);
  return sweep(cfg).to_csv();
}

}  // namespace rade
