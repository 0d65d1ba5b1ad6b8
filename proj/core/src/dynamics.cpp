#include "polarmax/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "theta_kernel.hpp"

namespace polarmax {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_ensemble(const Ensemble& e, const RunConfig& cfg) {
  if (e.size() != cfg.n_agents || e.dim() != cfg.dim)
    throw std::invalid_argument("ensemble shape (" + std::to_string(e.size()) + " x " +
                                std::to_string(e.dim()) + ") does not match the run config (" +
                                std::to_string(cfg.n_agents) + " x " + std::to_string(cfg.dim) + ")");
}

HullIndex candidates_for(const Ensemble& e, const RunConfig& cfg) {
  return cfg.friend_search == FriendSearch::Hull ? convex_hull(e.positions) : all_indices(e.size());
}

// z_k + dt (z_l - z_k) for every agent, from the frozen positions of `e`.
Ensemble apply_moves(const Ensemble& e, const std::vector<AgentId>& friends, double dt) {
  std::vector<double> next = e.positions.data();
  const std::size_t dim = e.dim();
  for (std::size_t k = 0; k < e.size(); ++k) {
    const AgentId l = friends[k];
    if (l == k) continue;
    const auto zk = e.positions[k];
    const auto zl = e.positions[l];
    for (std::size_t d = 0; d < dim; ++d) next[k * dim + d] = zk[d] + dt * (zl[d] - zk[d]);
  }
  return Ensemble{PointSet(dim, std::move(next)), e.time + dt};
}

// Friends of `members` steered by the mean gradient over `block`.
void select_for_members(const Ensemble& e, const MetricFamily& m, const detail::SampleBlock& block,
                        std::span<const AgentId> members, const HullIndex& candidates,
                        std::vector<AgentId>& friends) {
  Theta th{std::vector<double>(e.dim()), block.size()};
  for (AgentId k : members) {
    detail::theta_over_block(m, e.positions[k], block, th.vector);
    friends[k] = select_friend(e, k, th, candidates.view());
  }
}

}  // namespace

std::string to_string(FriendSearch f) { return f == FriendSearch::Hull ? "hull" : "full"; }
std::string to_string(Sampling s) { return s == Sampling::SharedBatch ? "shared_batch" : "per_agent"; }

FriendSearch parse_friend_search(const std::string& s) {
  if (s == "hull") return FriendSearch::Hull;
  if (s == "full") return FriendSearch::Full;
  throw std::invalid_argument("friend_search must be 'hull' or 'full', got '" + s + "'");
}

Sampling parse_sampling(const std::string& s) {
  if (s == "shared_batch") return Sampling::SharedBatch;
  if (s == "per_agent") return Sampling::PerAgent;
  throw std::invalid_argument("sampling must be 'shared_batch' or 'per_agent', got '" + s + "'");
}

void RunConfig::validate() const {
  if (n_agents == 0) throw std::invalid_argument("n_agents must be >= 1");
  if (n_agents > std::numeric_limits<AgentId>::max())
    throw std::invalid_argument("n_agents exceeds the supported index range");
  if (dim == 0) throw std::invalid_argument("dim must be >= 1");
  if (!(p > 0) || !std::isfinite(p)) throw std::invalid_argument("p must be positive");
  if (!(dt > 0 && dt < 1)) throw std::invalid_argument("dt must lie in (0, 1)");
  if (sample_size < 1 || sample_size > n_agents)
    throw std::invalid_argument("sample_size must lie in [1, n_agents]");
  if (!(convergence_tol >= 0)) throw std::invalid_argument("convergence_tol must be >= 0");
  if (threads == 0) throw std::invalid_argument("threads must be >= 1");
}

std::mt19937_64 StreamFactory::engine(std::uint64_t epoch, std::uint64_t stream) const {
  const std::uint64_t key = splitmix64(seed_ ^ splitmix64(epoch ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
  return std::mt19937_64(key);
}

std::vector<std::vector<AgentId>> make_batches(std::size_t n, std::size_t batch_size,
                                               std::mt19937_64& engine) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
  std::vector<AgentId> order(n);
  std::iota(order.begin(), order.end(), AgentId{0});
  std::shuffle(order.begin(), order.end(), engine);
  std::vector<std::vector<AgentId>> batches;
  batches.reserve((n + batch_size - 1) / batch_size);
  for (std::size_t i = 0; i < n; i += batch_size) {
    const std::size_t end = std::min(n, i + batch_size);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

StepResult step_deterministic(const Ensemble& e, const RunConfig& cfg, const MetricFamily& m,
                              std::size_t epoch) {
  check_ensemble(e, cfg);
  const HullIndex candidates = candidates_for(e, cfg);
  std::vector<AgentId> all(e.size());
  std::iota(all.begin(), all.end(), AgentId{0});
  detail::SampleBlock block;
  block.gather(e.positions, all);

  std::vector<AgentId> friends(e.size());
  detail::parallel_for(e.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
    select_for_members(e, m, block, std::span(all).subspan(begin, end - begin), candidates, friends);
  });
  return {apply_moves(e, friends, cfg.dt), {epoch, std::move(friends)}};
}

StepResult step_with_batches(const Ensemble& e, const RunConfig& cfg, const MetricFamily& m,
                             std::span<const std::vector<AgentId>> batches, std::size_t epoch) {
  check_ensemble(e, cfg);
  std::vector<char> seen(e.size(), 0);
  std::size_t total = 0;
  for (const auto& b : batches) {
    if (b.empty()) throw std::invalid_argument("step_with_batches: empty batch");
    for (AgentId k : b) {
      if (k >= e.size() || seen[k]) throw std::invalid_argument("batches must partition the agents");
      seen[k] = 1;
    }
    total += b.size();
  }
  if (total != e.size()) throw std::invalid_argument("batches must partition the agents");

  const HullIndex candidates = candidates_for(e, cfg);
  std::vector<AgentId> friends(e.size());
  detail::parallel_for(batches.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
    detail::SampleBlock block;
    std::vector<AgentId> sorted;
    for (std::size_t b = begin; b < end; ++b) {
      sorted.assign(batches[b].begin(), batches[b].end());
      std::sort(sorted.begin(), sorted.end());
      block.gather(e.positions, sorted);
      select_for_members(e, m, block, batches[b], candidates, friends);
    }
  });
  return {apply_moves(e, friends, cfg.dt), {epoch, std::move(friends)}};
}

StepResult step_stochastic(const Ensemble& e, const RunConfig& cfg, const MetricFamily& m,
                           const StreamFactory& rng, std::size_t epoch) {
  check_ensemble(e, cfg);
  cfg.validate();
  auto shuffle_engine = rng.engine(epoch, 0);
  const auto batches = make_batches(e.size(), cfg.sample_size, shuffle_engine);
  if (cfg.sampling == Sampling::SharedBatch) return step_with_batches(e, cfg, m, batches, epoch);

  const std::size_t n = e.size();
  const std::size_t s = cfg.sample_size;
  const HullIndex candidates = candidates_for(e, cfg);
  std::vector<AgentId> friends(n);
  detail::parallel_for(batches.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<AgentId> scratch(n);
    std::iota(scratch.begin(), scratch.end(), AgentId{0});
    std::vector<std::size_t> swaps(s);
    std::vector<AgentId> sample(s);
    // Large samples are put in ascending order by marking rather than sorting.
    const bool by_mask = s * 16 >= n;
    std::vector<char> mask(by_mask ? n : 0, 0);
    detail::SampleBlock block;
    if (s == n) block.gather(e.positions, scratch);
    Theta th{std::vector<double>(e.dim()), s};
    for (std::size_t b = begin; b < end; ++b) {
      auto engine = rng.engine(epoch, b + 1);
      for (AgentId k : batches[b]) {
        if (s < n) {
          // Partial Fisher-Yates draw of s distinct agents, undone afterwards.
          for (std::size_t i = 0; i < s; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            swaps[i] = pick(engine);
            std::swap(scratch[i], scratch[swaps[i]]);
          }
          if (by_mask) {
            for (std::size_t i = 0; i < s; ++i) mask[scratch[i]] = 1;
            for (std::size_t j = 0, i = 0; j < n; ++j)
              if (mask[j]) {
                mask[j] = 0;
                sample[i++] = static_cast<AgentId>(j);
              }
          } else {
            std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(s), sample.begin());
            std::sort(sample.begin(), sample.end());
          }
          for (std::size_t i = s; i-- > 0;) std::swap(scratch[i], scratch[swaps[i]]);
          block.gather(e.positions, sample);
        }
        detail::theta_over_block(m, e.positions[k], block, th.vector);
        friends[k] = select_friend(e, k, th, candidates.view());
      }
    }
  });
  return {apply_moves(e, friends, cfg.dt), {epoch, std::move(friends)}};
}

double max_friend_distance(const Ensemble& e, const CommunicationRecord& rec) {
  if (rec.friends.size() != e.size())
    throw std::invalid_argument("communication record does not match the ensemble");
  double worst = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const auto zk = e.positions[k];
    const auto zl = e.positions[rec.friends[k]];
    double s = 0;
    for (std::size_t d = 0; d < e.dim(); ++d) s += (zk[d] - zl[d]) * (zk[d] - zl[d]);
    worst = std::max(worst, s);
  }
  return std::sqrt(worst);
}

bool detect_convergence(const Ensemble& e, const CommunicationRecord& rec, double tol) {
  return max_friend_distance(e, rec) <= tol;
}

double trace_loss(const Ensemble& e, const MetricFamily& m) {
  return m.exponent() == 2.0 ? polarization_quadratic(e) : polarization(e, m);
}

RunResult run(const RunConfig& cfg, const Ensemble& init, const EpochObserver& observer) {
  cfg.validate();
  check_ensemble(init, cfg);
  const MetricFamily m(cfg.p);
  const StreamFactory streams(cfg.seed);

  RunResult out;
  out.final = init;
  out.initial_diameter = diameter(init.positions);
  out.loss.values.reserve(cfg.epochs + 1);
  out.loss.values.push_back(trace_loss(init, m));
  const double tol = cfg.convergence_tol * out.initial_diameter;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    StepResult step = cfg.deterministic() ? step_deterministic(out.final, cfg, m, epoch)
                                          : step_stochastic(out.final, cfg, m, streams, epoch);
    const bool done = cfg.convergence_tol > 0 && detect_convergence(out.final, step.record, tol);
    out.final = std::move(step.ensemble);
    out.loss.values.push_back(trace_loss(out.final, m));
    if (cfg.keep_records) out.records.push_back(std::move(step.record));
    ++out.epochs_run;
    if (observer) observer(epoch, out.final, out.loss.values.back());
    if (done) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace polarmax
