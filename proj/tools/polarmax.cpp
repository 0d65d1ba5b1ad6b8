#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polarmax/cli/commands.hpp"
#include "polarmax/cli/config.hpp"
#include "polarmax/cli/io.hpp"

namespace cli = polarmax::cli;

int main(int argc, char** argv) {
  CLI::App app{"Friend-attraction polarization simulator"};
  app.set_version_flag("--version", cli::version());
  app.require_subcommand(1);

  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool quiet = false;
  std::string path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output directory (overrides [output] dir)");
    sub->add_option("--seed", seed, "Seed override");
    sub->add_option("--threads", threads, "Worker threads per run")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", quiet, "Suppress progress output");
  };

  auto* simulate = app.add_subcommand("simulate", "Run one simulation from a config file");
  auto* sweep = app.add_subcommand("sweep", "Accuracy of the stochastic solver against S = N");
  auto* bench = app.add_subcommand("bench", "Wall time over sample sizes and agent counts");
  auto* dataset = app.add_subcommand("dataset", "Export (initial, final) position pairs");
  for (auto* sub : {simulate, sweep, bench, dataset}) {
    sub->add_option("config", path, "Config file")->required()->check(CLI::ExistingFile);
    add_common(sub);
  }
  auto* hull = app.add_subcommand("hull", "Print the hull vertices of a positions CSV");
  hull->add_option("positions", path, "Positions CSV")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  cli::Overrides o;
  auto collect = [&](CLI::App* sub) {
    if (sub->count("--out")) o.out = out;
    if (sub->count("--seed")) o.seed = seed;
    if (sub->count("--threads")) o.threads = threads;
  };
  std::ostream* log = &std::cerr;

  try {
    if (*simulate) {
      collect(simulate);
      if (quiet) log = nullptr;
      auto cfg = cli::parse_simulate_config(cli::read_text_file(path));
      cli::apply(o, cfg);
      cli::simulate(cfg, log);
    } else if (*sweep) {
      collect(sweep);
      if (quiet) log = nullptr;
      auto cfg = cli::parse_sweep_config(cli::read_text_file(path));
      cli::apply(o, cfg);
      cli::sweep_accuracy(cfg, log);
    } else if (*bench) {
      collect(bench);
      if (quiet) log = nullptr;
      auto cfg = cli::parse_bench_config(cli::read_text_file(path));
      cli::apply(o, cfg);
      cli::bench(cfg, log);
    } else if (*dataset) {
      collect(dataset);
      if (quiet) log = nullptr;
      auto cfg = cli::parse_dataset_config(cli::read_text_file(path));
      cli::apply(o, cfg);
      cli::make_dataset(cfg, log);
    } else if (*hull) {
      std::cout << cli::hull_report(path).dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "polarmax: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
