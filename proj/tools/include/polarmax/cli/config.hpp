// Run configuration files.
//
// INI-style text with sections; every key is optional and falls back to the
// defaults below, but an unknown section or key is an error so that sweeps
// cannot silently ignore a typo.
//
//   [model]   p
//   [init]    kind, n_agents, dim, n_components, component_std,
//             mean_box_halfwidth, radius, seed
//   [solver]  dt, sample_size (integer or "N"), epochs, seed, friend_search,
//             sampling, convergence_tol, threads
//   [output]  dir, merge_radius, histogram_grid, write_records
//   [sweep]   sample_sizes, dts, seeds                 (sweep only)
//   [bench]   sample_sizes, agent_counts, epochs       (bench only)
//   [dataset] count, test_fraction, seed, n_agents, radius, epochs, dt, p,
//             grid_sizes, histograms                   (dataset only)
//
// Lists are comma separated. merge_radius is relative to the initial diameter.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarmax/dynamics.hpp"
#include "polarmax/init.hpp"

namespace polarmax::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string dir = "polarmax_out";
  double merge_radius = 1e-3;
  std::size_t histogram_grid = 0;  // 0: no histogram file
  bool write_records = false;
};

struct SimulateConfig {
  InitSpec init;
  RunConfig run;
  OutputOptions output;
};

struct SweepConfig {
  SimulateConfig base;
  std::vector<std::size_t> sample_sizes{50, 250, 1000, 2500};
  std::vector<double> dts{0.02, 0.01};
  std::vector<std::uint64_t> seeds{0, 1, 2};
};

struct BenchConfig {
  SimulateConfig base;
  std::vector<std::size_t> sample_sizes{500, 1000, 2000};
  std::vector<std::size_t> agent_counts{100000};
  std::size_t epochs = 150;
};

struct DatasetConfig {
  std::size_t count = 100;
  double test_fraction = 0.025;
  std::uint64_t seed = 0;
  std::size_t n_agents = 100;
  double radius = 10.0;
  std::size_t epochs = 200;
  double dt = 0.05;
  double p = 2.0;
  std::vector<std::size_t> grid_sizes{64, 32};
  bool histograms = false;
  OutputOptions output;
};

/// Defaults of the simulate protocol: 5-component mixture, p = 2, S = 1000,
/// dt = 0.02, 600 epochs.
SimulateConfig default_simulate_config();

/// Base run of the accuracy sweep: ball of radius 10 with N = 5000.
SimulateConfig default_sweep_base();

SimulateConfig parse_simulate_config(const std::string& text);
SweepConfig parse_sweep_config(const std::string& text);
BenchConfig parse_bench_config(const std::string& text);
DatasetConfig parse_dataset_config(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);

/// INI text that parses back to the same SimulateConfig.
std::string render_simulate_config(const SimulateConfig& cfg);

}  // namespace polarmax::cli
