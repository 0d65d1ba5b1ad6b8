// Subcommand drivers. Each writes its files into `out_dir` (created if
// missing) and returns what it wrote so tests can inspect results without
// re-reading the files.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polarmax/analysis.hpp"
#include "polarmax/cli/config.hpp"
#include "polarmax/dynamics.hpp"
#include <json.hpp>

namespace polarmax::cli {

std::string version();

/// Command-line overrides applied on top of a parsed config.
struct Overrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

void apply(const Overrides& o, SimulateConfig& cfg);
void apply(const Overrides& o, SweepConfig& cfg);
void apply(const Overrides& o, BenchConfig& cfg);
void apply(const Overrides& o, DatasetConfig& cfg);

/// Progress sink; null means quiet.
using Log = std::ostream*;

struct SimulateOutput {
  Ensemble initial;
  RunResult result;
  AttractorSummary attractor;
  double wall_seconds = 0.0;
};

/// positions.csv, loss.csv, attractor.json, meta.json, run.ini; records.csv
/// and histogram.csv when enabled.
SimulateOutput simulate(const SimulateConfig& cfg, Log log = nullptr);

struct SweepRow {
  std::size_t n_agents = 0;
  double dt = 0.0;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  double mse = 0.0;
};

struct SweepCell {
  double dt = 0.0;
  std::size_t sample_size = 0;
  double median_mse = 0.0;
};

struct SweepOutput {
  std::vector<SweepRow> rows;
  std::vector<SweepCell> medians;

  double median(double dt, std::size_t sample_size) const;
};

/// sweep.csv with one row per run and sweep_summary.csv with one row per dt
/// and one median column per S.
SweepOutput sweep_accuracy(const SweepConfig& cfg, Log log = nullptr);

struct BenchRow {
  std::size_t sample_size = 0;
  std::size_t n_agents = 0;
  double wall_seconds = 0.0;
};

/// bench.csv with rows (S, N, wall seconds); initialization is not timed.
std::vector<BenchRow> bench(const BenchConfig& cfg, Log log = nullptr);

struct DatasetPair {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<double> input;
  std::vector<double> label;
};

struct DatasetOutput {
  std::vector<DatasetPair> train;
  std::vector<DatasetPair> test;
};

/// Seed of pair `index` under the master seed.
std::uint64_t dataset_pair_seed(std::uint64_t master, std::size_t index);

/// Test pairs are the last round(count * test_fraction) pairs.
std::size_t dataset_test_count(const DatasetConfig& cfg);

/// {train,test}_{inputs,labels}.csv with header pair,v0..v{N*D-1} in
/// agent-major order, meta.json, and {split}_histograms_{G}.csv when enabled.
DatasetOutput make_dataset(const DatasetConfig& cfg, Log log = nullptr);

/// Hull vertices of a positions CSV as JSON (dim, n_agents, vertices, diameter).
nlohmann::json hull_report(const std::filesystem::path& positions_csv);

}  // namespace polarmax::cli
