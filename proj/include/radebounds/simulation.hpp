#ifndef RADEBOUNDS_SIMULATION_HPP
#define RADEBOUNDS_SIMULATION_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace rade {

enum class McEraMode { simulated, worst_case };

/// Parameters of one sweep panel. Zero grid/lo/hi fields pick the per-figure
/// defaults: 200 log-spaced points on [1/m, 1] for figures 1-2 and a
/// 100x100 log-spaced grid on [1/m, 1/2]^2 for figure 3.
struct SweepConfig {
  int figure = 1;  // 1 | 2 | 3
  std::size_t m = 1'000'000;
  std::size_t n = 1;
  double delta = 0.05;
  double massart_c = 1e6;  // class-size constant of the simulated average
  std::size_t grid_points = 0;
  double lo = 0.0;
  double hi = 0.0;
  McEraMode mcera_mode = McEraMode::simulated;
  int threads = 0;
};

/// Deterministic grid of bound values per method; serializes to CSV with
/// `#key=value` metadata lines followed by a header row.
struct SweepTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
};

/// Simulated Monte Carlo average min{ sqrt(x ln C / m), x }: the decay a
/// class of C functions would exhibit, used to drive the sweeps.
double simulated_mcera(double x, std::size_t m, double massart_c);

SweepTable sweep_figure1(const SweepConfig& cfg);
SweepTable sweep_figure2(const SweepConfig& cfg);
SweepTable sweep_figure3(const SweepConfig& cfg);
SweepTable sweep(const SweepConfig& cfg);

/// JSON front end used by the C API and the CLI.
std::string sweep_csv_from_json(const std::string& config_json);

}  // namespace rade

#endif
