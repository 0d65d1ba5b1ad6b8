#include "polarmax/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "polarmax/cli/io.hpp"
#include "polarmax/geometry.hpp"
#include "polarmax/init.hpp"

#ifndef POLARMAX_VERSION
#define POLARMAX_VERSION "unknown"
#endif

namespace polarmax::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

double absolute_merge_radius(double relative, double initial_diameter) {
  return initial_diameter > 0 ? relative * initial_diameter : relative;
}

nlohmann::json config_json(const SimulateConfig& cfg) {
  return {{"model", {{"p", cfg.run.p}}},
          {"init",
           {{"kind", to_string(cfg.init.kind)},
            {"n_agents", cfg.init.n_agents},
            {"dim", cfg.init.dim},
            {"n_components", cfg.init.n_components},
            {"component_std", cfg.init.component_std},
            {"mean_box_halfwidth", cfg.init.mean_box_halfwidth},
            {"radius", cfg.init.radius},
            {"seed", cfg.init.seed}}},
          {"solver",
           {{"dt", cfg.run.dt},
            {"sample_size", cfg.run.sample_size},
            {"epochs", cfg.run.epochs},
            {"seed", cfg.run.seed},
            {"friend_search", to_string(cfg.run.friend_search)},
            {"sampling", to_string(cfg.run.sampling)},
            {"convergence_tol", cfg.run.convergence_tol},
            {"threads", cfg.run.threads}}},
          {"output",
           {{"dir", cfg.output.dir},
            {"merge_radius", cfg.output.merge_radius},
            {"histogram_grid", cfg.output.histogram_grid},
            {"write_records", cfg.output.write_records}}}};
}

EpochObserver progress(Log log, std::size_t epochs, const std::string& label) {
  if (!log) return {};
  const std::size_t every = std::max<std::size_t>(1, epochs / 10);
  return [log, every, epochs, label](std::size_t epoch, const Ensemble&, double loss) {
    if ((epoch + 1) % every == 0 || epoch + 1 == epochs)
      *log << label << "epoch " << epoch + 1 << "/" << epochs << " loss " << format_double(loss) << '\n';
  };
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_pairs_csv(const std::filesystem::path& path, const std::vector<DatasetPair>& pairs,
                     bool labels, std::size_t width) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "pair";
  for (std::size_t i = 0; i < width; ++i) out << ",v" << i;
  out << '\n';
  for (const auto& p : pairs) {
    out << p.index;
    for (double v : labels ? p.label : p.input) out << ',' << format_double(v);
    out << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

void write_histograms_csv(const std::filesystem::path& path, const std::vector<DatasetPair>& pairs,
                          std::size_t grid, const Box& bounds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "pair,kind";
  for (std::size_t i = 0; i < grid * grid; ++i) out << ",c" << i;
  out << '\n';
  for (const auto& p : pairs) {
    for (const bool label : {false, true}) {
      const Ensemble e{PointSet(2, label ? p.label : p.input), 0.0};
      const GridHistogram h = grid_histogram(e, grid, bounds);
      out << p.index << ',' << (label ? "label" : "input");
      for (auto c : h.counts) out << ',' << c;
      out << '\n';
    }
  }
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string version() { return POLARMAX_VERSION; }

void apply(const Overrides& o, SimulateConfig& cfg) {
  if (o.out) cfg.output.dir = *o.out;
  if (o.seed) {
    cfg.init.seed = *o.seed;
    cfg.run.seed = *o.seed;
  }
  if (o.threads) cfg.run.threads = *o.threads;
}

void apply(const Overrides& o, SweepConfig& cfg) {
  apply(Overrides{o.out, std::nullopt, o.threads}, cfg.base);
  if (o.seed) cfg.seeds = {*o.seed};
}

void apply(const Overrides& o, BenchConfig& cfg) { apply(o, cfg.base); }

void apply(const Overrides& o, DatasetConfig& cfg) {
  if (o.out) cfg.output.dir = *o.out;
  if (o.seed) cfg.seed = *o.seed;
}

SimulateOutput simulate(const SimulateConfig& cfg, Log log) {
  cfg.init.validate();
  RunConfig rc = cfg.run;
  rc.n_agents = cfg.init.n_agents;
  rc.dim = cfg.init.dim;
  rc.keep_records = cfg.output.write_records;
  rc.validate();
  if (!(cfg.output.merge_radius > 0)) throw std::invalid_argument("merge_radius must be positive");
  if (cfg.output.histogram_grid > 0 && cfg.init.dim != 2)
    throw std::invalid_argument("histogram_grid requires dim = 2");
  const auto dir = prepare_dir(cfg.output.dir);

  SimulateOutput out;
  out.initial = generate(cfg.init);
  const auto start = Clock::now();
  out.result = run(rc, out.initial, progress(log, rc.epochs, ""));
  out.wall_seconds = seconds_since(start);
  out.attractor =
      extract_attractor(out.result.final, absolute_merge_radius(cfg.output.merge_radius, out.result.initial_diameter));

  write_positions_csv(dir / "positions.csv", out.result.final.positions);
  write_loss_csv(dir / "loss.csv", out.result.loss);
  write_json(dir / "attractor.json", attractor_json(out.attractor));
  write_text(dir / "run.ini", render_simulate_config(cfg));
  if (cfg.output.write_records) write_records_csv(dir / "records.csv", out.result.records);
  if (cfg.output.histogram_grid > 0)
    write_histogram_csv(dir / "histogram.csv", grid_histogram(out.result.final, cfg.output.histogram_grid,
                                                              bounding_box(out.initial.positions)));
  write_json(dir / "meta.json", {{"version", version()},
                                 {"config", config_json(cfg)},
                                 {"config_ini", render_simulate_config(cfg)},
                                 {"wall_seconds", out.wall_seconds},
                                 {"epochs_run", out.result.epochs_run},
                                 {"converged", out.result.converged},
                                 {"initial_diameter", out.result.initial_diameter},
                                 {"final_loss", out.result.loss.values.back()},
                                 {"n_infinity", out.attractor.n_clusters()}});
  if (log)
    *log << "done: " << out.result.epochs_run << " epochs, " << out.attractor.n_clusters() << " clusters, "
         << format_double(out.wall_seconds) << " s\n";
  return out;
}

double SweepOutput::median(double dt, std::size_t sample_size) const {
  for (const auto& c : medians)
    if (c.dt == dt && c.sample_size == sample_size) return c.median_mse;
  throw std::out_of_range("no sweep cell for the requested (dt, S)");
}

SweepOutput sweep_accuracy(const SweepConfig& cfg, Log log) {
  cfg.base.init.validate();
  const std::size_t n = cfg.base.init.n_agents;
  for (auto s : cfg.sample_sizes)
    if (s < 1 || s > n) throw std::invalid_argument("sweep: every sample size must lie in [1, N]");
  const auto dir = prepare_dir(cfg.base.output.dir);

  SweepOutput out;
  for (double dt : cfg.dts) {
    std::map<std::size_t, std::vector<double>> per_s;
    for (auto seed : cfg.seeds) {
      InitSpec init = cfg.base.init;
      init.seed = seed;
      const Ensemble e0 = generate(init);
      RunConfig rc = cfg.base.run;
      rc.n_agents = n;
      rc.dim = init.dim;
      rc.dt = dt;
      rc.seed = seed;
      rc.keep_records = false;
      rc.sample_size = n;
      const Ensemble truth = run(rc, e0).final;
      for (auto s : cfg.sample_sizes) {
        rc.sample_size = s;
        const double mse = attractor_mse(run(rc, e0).final, truth);
        out.rows.push_back({n, dt, s, seed, mse});
        per_s[s].push_back(mse);
        if (log) *log << "N=" << n << " dt=" << format_double(dt) << " S=" << s << " seed=" << seed
                      << " mse=" << format_double(mse) << '\n';
      }
    }
    for (auto s : cfg.sample_sizes) out.medians.push_back({dt, s, median(per_s[s])});
  }

  std::ofstream rows(dir / "sweep.csv", std::ios::binary);
  rows << "N,dt,S,seed,mse\n";
  for (const auto& r : out.rows)
    rows << r.n_agents << ',' << format_double(r.dt) << ',' << r.sample_size << ',' << r.seed << ','
         << format_double(r.mse) << '\n';
  if (!rows.flush()) throw std::runtime_error("write failed: sweep.csv");

  std::ofstream summary(dir / "sweep_summary.csv", std::ios::binary);
  summary << "N,dt";
  for (auto s : cfg.sample_sizes) summary << ",S_" << s;
  summary << '\n';
  for (double dt : cfg.dts) {
    summary << n << ',' << format_double(dt);
    for (auto s : cfg.sample_sizes) summary << ',' << format_double(out.median(dt, s));
    summary << '\n';
  }
  if (!summary.flush()) throw std::runtime_error("write failed: sweep_summary.csv");
  return out;
}

std::vector<BenchRow> bench(const BenchConfig& cfg, Log log) {
  for (auto n : cfg.agent_counts)
    for (auto s : cfg.sample_sizes)
      if (s < 1 || s > n) throw std::invalid_argument("bench: every sample size must lie in [1, N]");
  const auto dir = prepare_dir(cfg.base.output.dir);

  std::vector<BenchRow> rows;
  for (auto n : cfg.agent_counts) {
    InitSpec init = cfg.base.init;
    init.n_agents = n;
    init.validate();
    const Ensemble e0 = generate(init);
    for (auto s : cfg.sample_sizes) {
      RunConfig rc = cfg.base.run;
      rc.n_agents = n;
      rc.dim = init.dim;
      rc.sample_size = s;
      rc.epochs = cfg.epochs;
      rc.convergence_tol = 0.0;
      rc.keep_records = false;
      const auto start = Clock::now();
      run(rc, e0);
      rows.push_back({s, n, seconds_since(start)});
      if (log) *log << "S=" << s << " N=" << n << " wall=" << format_double(rows.back().wall_seconds) << " s\n";
    }
  }

  std::ofstream csv(dir / "bench.csv", std::ios::binary);
  csv << "S,N,wall_seconds\n";
  for (const auto& r : rows) csv << r.sample_size << ',' << r.n_agents << ',' << format_double(r.wall_seconds) << '\n';
  if (!csv.flush()) throw std::runtime_error("write failed: bench.csv");
  return rows;
}

std::uint64_t dataset_pair_seed(std::uint64_t master, std::size_t index) {
  return StreamFactory(master).engine(index, 0)();
}

std::size_t dataset_test_count(const DatasetConfig& cfg) {
  const auto t = static_cast<std::size_t>(std::llround(static_cast<double>(cfg.count) * cfg.test_fraction));
  return std::min(t, cfg.count);
}

DatasetOutput make_dataset(const DatasetConfig& cfg, Log log) {
  if (cfg.count < 1) throw std::invalid_argument("dataset: count must be >= 1");
  const auto dir = prepare_dir(cfg.output.dir);
  constexpr std::size_t kDim = 2;

  RunConfig rc;
  rc.n_agents = cfg.n_agents;
  rc.dim = kDim;
  rc.p = cfg.p;
  rc.dt = cfg.dt;
  rc.sample_size = cfg.n_agents;
  rc.epochs = cfg.epochs;
  rc.convergence_tol = 0.0;
  rc.keep_records = false;
  rc.validate();

  const std::size_t n_test = dataset_test_count(cfg);
  const std::size_t n_train = cfg.count - n_test;
  DatasetOutput out;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    InitSpec init;
    init.kind = InitKind::Ball;
    init.n_agents = cfg.n_agents;
    init.dim = kDim;
    init.radius = cfg.radius;
    init.seed = dataset_pair_seed(cfg.seed, i);
    const Ensemble e0 = generate(init);
    DatasetPair pair{i, init.seed, e0.positions.data(), run(rc, e0).final.positions.data()};
    (i < n_train ? out.train : out.test).push_back(std::move(pair));
    if (log && ((i + 1) % 10 == 0 || i + 1 == cfg.count)) *log << "pairs " << i + 1 << "/" << cfg.count << '\n';
  }

  const std::size_t width = cfg.n_agents * kDim;
  write_pairs_csv(dir / "train_inputs.csv", out.train, false, width);
  write_pairs_csv(dir / "train_labels.csv", out.train, true, width);
  write_pairs_csv(dir / "test_inputs.csv", out.test, false, width);
  write_pairs_csv(dir / "test_labels.csv", out.test, true, width);

  const double h = 1.05 * cfg.radius;
  const Box bounds{{-h, -h}, {h, h}};
  if (cfg.histograms) {
    for (auto g : cfg.grid_sizes) {
      write_histograms_csv(dir / ("train_histograms_" + std::to_string(g) + ".csv"), out.train, g, bounds);
      write_histograms_csv(dir / ("test_histograms_" + std::to_string(g) + ".csv"), out.test, g, bounds);
    }
  }

  write_json(dir / "meta.json",
             {{"version", version()},
              {"protocol", "ball init (N=" + std::to_string(cfg.n_agents) + ", D=2, radius " +
                               format_double(cfg.radius) + "), deterministic solver S=N, " +
                               std::to_string(cfg.epochs) + " epochs, p=" + format_double(cfg.p) +
                               ", dt=" + format_double(cfg.dt)},
              {"flattening", "agent-major: v[2k + d] = coordinate d of agent k"},
              {"radius", cfg.radius},
              {"n_agents", cfg.n_agents},
              {"dim", kDim},
              {"epochs", cfg.epochs},
              {"dt", cfg.dt},
              {"p", cfg.p},
              {"seed", cfg.seed},
              {"pair_seed", "first output of StreamFactory(seed).engine(pair, 0)"},
              {"count", cfg.count},
              {"train_count", n_train},
              {"test_count", n_test},
              {"grid_sizes", cfg.grid_sizes},
              {"histograms", cfg.histograms},
              {"histogram_bounds", {{"lo", bounds.lo}, {"hi", bounds.hi}}}});
  return out;
}

nlohmann::json hull_report(const std::filesystem::path& positions_csv) {
  const PointSet ps = read_positions_csv(positions_csv);
  const HullIndex h = convex_hull(ps);
  return {{"dim", ps.dim()}, {"n_agents", ps.size()}, {"vertices", h.vertices}, {"diameter", diameter(ps)}};
}

}  // namespace polarmax::cli
