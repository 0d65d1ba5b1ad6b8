#include "polarmax/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "polarmax/cli/io.hpp"

namespace polarmax::cli {

namespace {

using Tree = boost::property_tree::ptree;
using Schema = std::map<std::string, std::set<std::string>>;

const Schema& base_schema() {
  static const Schema s{
      {"model", {"p"}},
      {"init",
       {"kind", "n_agents", "dim", "n_components", "component_std", "mean_box_halfwidth", "radius", "seed"}},
      {"solver",
       {"dt", "sample_size", "epochs", "seed", "friend_search", "sampling", "convergence_tol", "threads"}},
      {"output", {"dir", "merge_radius", "histogram_grid", "write_records"}},
  };
  return s;
}

Tree parse_ini(const std::string& text, const Schema& schema) {
  Tree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config: line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, keys] : tree) {
    const auto it = schema.find(section);
    if (it == schema.end()) throw ConfigError("config: unknown section [" + section + "]");
    if (keys.empty() && !keys.data().empty())
      throw ConfigError("config: key '" + section + "' outside of any section");
    for (const auto& [key, value] : keys)
      if (!it->second.contains(key)) throw ConfigError("config: unknown key '" + key + "' in [" + section + "]");
  }
  return tree;
}

std::optional<std::string> raw(const Tree& t, const std::string& section, const std::string& key) {
  const auto s = t.get_child_optional(section);
  if (!s) return std::nullopt;
  const auto v = s->get_optional<std::string>(key);
  if (!v) return std::nullopt;
  std::string out = *v;
  out.erase(0, out.find_first_not_of(" \t"));
  out.erase(out.find_last_not_of(" \t") + 1);
  return out;
}

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

template <class T>
T to_unsigned(const std::string& s, const std::string& ctx) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("config: " + ctx + ": expected a non-negative integer, got '" + s + "'");
  return v;
}

double to_double(const std::string& s, const std::string& ctx) {
  try {
    return parse_double(s);
  } catch (const std::invalid_argument&) {
    throw ConfigError("config: " + ctx + ": expected a number, got '" + s + "'");
  }
}

bool to_bool(const std::string& s, const std::string& ctx) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("config: " + ctx + ": expected true/false, got '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const Tree& t) : t_(t) {}

  template <class T>
  void uint(const std::string& section, const std::string& key, T& out) const {
    if (auto v = raw(t_, section, key)) out = to_unsigned<T>(*v, where(section, key));
  }
  void real(const std::string& section, const std::string& key, double& out) const {
    if (auto v = raw(t_, section, key)) out = to_double(*v, where(section, key));
  }
  void boolean(const std::string& section, const std::string& key, bool& out) const {
    if (auto v = raw(t_, section, key)) out = to_bool(*v, where(section, key));
  }
  void text(const std::string& section, const std::string& key, std::string& out) const {
    if (auto v = raw(t_, section, key)) out = *v;
  }
  template <class T>
  void uint_list(const std::string& section, const std::string& key, std::vector<T>& out) const {
    if (auto v = raw(t_, section, key)) {
      out.clear();
      for (const auto& item : split_list(*v)) out.push_back(to_unsigned<T>(item, where(section, key)));
      if (out.empty()) throw ConfigError("config: " + where(section, key) + ": empty list");
    }
  }
  void real_list(const std::string& section, const std::string& key, std::vector<double>& out) const {
    if (auto v = raw(t_, section, key)) {
      out.clear();
      for (const auto& item : split_list(*v)) out.push_back(to_double(item, where(section, key)));
      if (out.empty()) throw ConfigError("config: " + where(section, key) + ": empty list");
    }
  }
  std::optional<std::string> get(const std::string& section, const std::string& key) const {
    return raw(t_, section, key);
  }

 private:
  const Tree& t_;
};

template <class Fn>
auto wrap(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

SimulateConfig read_simulate(const Reader& r, SimulateConfig cfg) {
  r.real("model", "p", cfg.run.p);

  if (auto kind = r.get("init", "kind")) cfg.init.kind = wrap([&] { return parse_init_kind(*kind); });
  r.uint("init", "n_agents", cfg.init.n_agents);
  r.uint("init", "dim", cfg.init.dim);
  r.uint("init", "n_components", cfg.init.n_components);
  r.real("init", "component_std", cfg.init.component_std);
  r.real("init", "mean_box_halfwidth", cfg.init.mean_box_halfwidth);
  r.real("init", "radius", cfg.init.radius);
  r.uint("init", "seed", cfg.init.seed);

  cfg.run.n_agents = cfg.init.n_agents;
  cfg.run.dim = cfg.init.dim;
  r.real("solver", "dt", cfg.run.dt);
  if (auto s = r.get("solver", "sample_size")) {
    cfg.run.sample_size = (*s == "N" || *s == "n") ? cfg.init.n_agents
                                                   : to_unsigned<std::size_t>(*s, where("solver", "sample_size"));
  } else {
    cfg.run.sample_size = std::min<std::size_t>(1000, cfg.init.n_agents);
  }
  r.uint("solver", "epochs", cfg.run.epochs);
  r.uint("solver", "seed", cfg.run.seed);
  if (auto f = r.get("solver", "friend_search"))
    cfg.run.friend_search = wrap([&] { return parse_friend_search(*f); });
  if (auto s = r.get("solver", "sampling")) cfg.run.sampling = wrap([&] { return parse_sampling(*s); });
  r.real("solver", "convergence_tol", cfg.run.convergence_tol);
  r.uint("solver", "threads", cfg.run.threads);

  r.text("output", "dir", cfg.output.dir);
  r.real("output", "merge_radius", cfg.output.merge_radius);
  r.uint("output", "histogram_grid", cfg.output.histogram_grid);
  r.boolean("output", "write_records", cfg.output.write_records);
  if (!(cfg.output.merge_radius > 0)) throw ConfigError("config: [output] merge_radius must be positive");
  return cfg;
}

void validate(SimulateConfig& cfg) {
  wrap([&] {
    cfg.init.validate();
    cfg.run.validate();
    return 0;
  });
}

}  // namespace

SimulateConfig default_simulate_config() {
  SimulateConfig cfg;
  cfg.init.kind = InitKind::GaussianMixture;
  cfg.init.n_agents = 100000;
  cfg.init.dim = 2;
  cfg.init.n_components = 5;
  cfg.run.n_agents = cfg.init.n_agents;
  cfg.run.dim = cfg.init.dim;
  cfg.run.p = 2.0;
  cfg.run.dt = 0.02;
  cfg.run.sample_size = 1000;
  cfg.run.epochs = 600;
  return cfg;
}

SimulateConfig default_sweep_base() {
  SimulateConfig cfg = default_simulate_config();
  cfg.init.kind = InitKind::Ball;
  cfg.init.n_agents = 5000;
  cfg.init.radius = 10.0;
  cfg.run.n_agents = cfg.init.n_agents;
  cfg.run.sample_size = cfg.init.n_agents;
  return cfg;
}

SimulateConfig parse_simulate_config(const std::string& text) {
  const Tree t = parse_ini(text, base_schema());
  SimulateConfig cfg = read_simulate(Reader(t), default_simulate_config());
  validate(cfg);
  return cfg;
}

SweepConfig parse_sweep_config(const std::string& text) {
  Schema schema = base_schema();
  schema["sweep"] = {"sample_sizes", "dts", "seeds"};
  const Tree t = parse_ini(text, schema);
  const Reader r(t);
  SweepConfig cfg;
  cfg.base = read_simulate(r, default_sweep_base());
  r.uint_list("sweep", "sample_sizes", cfg.sample_sizes);
  r.real_list("sweep", "dts", cfg.dts);
  r.uint_list("sweep", "seeds", cfg.seeds);
  cfg.base.run.sample_size = cfg.base.run.n_agents;
  validate(cfg.base);
  for (auto s : cfg.sample_sizes)
    if (s < 1 || s > cfg.base.run.n_agents)
      throw ConfigError("config: [sweep] sample_sizes must lie in [1, n_agents]");
  for (double dt : cfg.dts)
    if (!(dt > 0 && dt < 1)) throw ConfigError("config: [sweep] dts must lie in (0, 1)");
  return cfg;
}

BenchConfig parse_bench_config(const std::string& text) {
  Schema schema = base_schema();
  schema["bench"] = {"sample_sizes", "agent_counts", "epochs"};
  const Tree t = parse_ini(text, schema);
  const Reader r(t);
  BenchConfig cfg;
  cfg.base = read_simulate(r, default_simulate_config());
  r.uint_list("bench", "sample_sizes", cfg.sample_sizes);
  r.uint_list("bench", "agent_counts", cfg.agent_counts);
  r.uint("bench", "epochs", cfg.epochs);
  cfg.base.run.sample_size = std::min(cfg.base.run.sample_size, cfg.base.run.n_agents);
  validate(cfg.base);
  for (auto n : cfg.agent_counts)
    for (auto s : cfg.sample_sizes)
      if (s < 1 || s > n) throw ConfigError("config: [bench] every sample size must lie in [1, N]");
  return cfg;
}

DatasetConfig parse_dataset_config(const std::string& text) {
  Schema schema{{"dataset",
                 {"count", "test_fraction", "seed", "n_agents", "radius", "epochs", "dt", "p", "grid_sizes",
                  "histograms"}},
                {"output", {"dir"}}};
  const Tree t = parse_ini(text, schema);
  const Reader r(t);
  DatasetConfig cfg;
  r.uint("dataset", "count", cfg.count);
  r.real("dataset", "test_fraction", cfg.test_fraction);
  r.uint("dataset", "seed", cfg.seed);
  r.uint("dataset", "n_agents", cfg.n_agents);
  r.real("dataset", "radius", cfg.radius);
  r.uint("dataset", "epochs", cfg.epochs);
  r.real("dataset", "dt", cfg.dt);
  r.real("dataset", "p", cfg.p);
  r.uint_list("dataset", "grid_sizes", cfg.grid_sizes);
  r.boolean("dataset", "histograms", cfg.histograms);
  r.text("output", "dir", cfg.output.dir);
  if (cfg.count < 1) throw ConfigError("config: [dataset] count must be >= 1");
  if (!(cfg.test_fraction >= 0 && cfg.test_fraction <= 1))
    throw ConfigError("config: [dataset] test_fraction must lie in [0, 1]");
  if (cfg.n_agents < 1) throw ConfigError("config: [dataset] n_agents must be >= 1");
  if (!(cfg.radius > 0)) throw ConfigError("config: [dataset] radius must be positive");
  if (!(cfg.dt > 0 && cfg.dt < 1)) throw ConfigError("config: [dataset] dt must lie in (0, 1)");
  if (!(cfg.p > 0)) throw ConfigError("config: [dataset] p must be positive");
  for (auto g : cfg.grid_sizes)
    if (g < 1) throw ConfigError("config: [dataset] grid sizes must be >= 1");
  return cfg;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string render_simulate_config(const SimulateConfig& cfg) {
  std::ostringstream out;
  out << "[model]\n"
      << "p = " << format_double(cfg.run.p) << "\n\n"
      << "[init]\n"
      << "kind = " << to_string(cfg.init.kind) << "\n"
      << "n_agents = " << cfg.init.n_agents << "\n"
      << "dim = " << cfg.init.dim << "\n"
      << "n_components = " << cfg.init.n_components << "\n"
      << "component_std = " << format_double(cfg.init.component_std) << "\n"
      << "mean_box_halfwidth = " << format_double(cfg.init.mean_box_halfwidth) << "\n"
      << "radius = " << format_double(cfg.init.radius) << "\n"
      << "seed = " << cfg.init.seed << "\n\n"
      << "[solver]\n"
      << "dt = " << format_double(cfg.run.dt) << "\n"
      << "sample_size = " << cfg.run.sample_size << "\n"
      << "epochs = " << cfg.run.epochs << "\n"
      << "seed = " << cfg.run.seed << "\n"
      << "friend_search = " << to_string(cfg.run.friend_search) << "\n"
      << "sampling = " << to_string(cfg.run.sampling) << "\n"
      << "convergence_tol = " << format_double(cfg.run.convergence_tol) << "\n"
      << "threads = " << cfg.run.threads << "\n\n"
      << "[output]\n"
      << "dir = " << cfg.output.dir << "\n"
      << "merge_radius = " << format_double(cfg.output.merge_radius) << "\n"
      << "histogram_grid = " << cfg.output.histogram_grid << "\n"
      << "write_records = " << (cfg.output.write_records ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace polarmax::cli
