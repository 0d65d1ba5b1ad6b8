// Synchronous time stepping of the friend-attraction dynamics.
//
// One epoch: compute the hull of the frozen positions, pick every agent's
// friend against those positions, then move all agents at once:
//
//     z_k <- (1 - dt) z_k + dt z_{l(k)}
//
// The deterministic solver steers with the exact theta; the stochastic solver
// shuffles the agents into consecutive batches of S and steers with a
// subsampled theta.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "polarmax/geometry.hpp"
#include "polarmax/model.hpp"

namespace polarmax {

enum class FriendSearch { Hull, Full };

/// How an agent's theta sample is drawn in the stochastic solver.
/// SharedBatch: the agent's own shuffled batch is its sample.
/// PerAgent: every agent draws an independent S-subset of all agents.
enum class Sampling { SharedBatch, PerAgent };

std::string to_string(FriendSearch f);
std::string to_string(Sampling s);
FriendSearch parse_friend_search(const std::string& s);
Sampling parse_sampling(const std::string& s);

struct RunConfig {
  std::size_t n_agents = 0;
  std::size_t dim = 2;
  double p = 2.0;
  double dt = 0.02;
  std::size_t sample_size = 0;  // S; equal to n_agents for the deterministic solver
  std::size_t epochs = 600;
  std::uint64_t seed = 0;
  FriendSearch friend_search = FriendSearch::Hull;
  Sampling sampling = Sampling::SharedBatch;
  /// Early-stop threshold on max_k |z_k - z_{l(k)}| in units of the initial
  /// diameter; 0 disables early stopping.
  double convergence_tol = 1e-6;
  /// Keep every epoch's CommunicationRecord in the run result.
  bool keep_records = true;
  unsigned threads = 1;

  bool deterministic() const { return sample_size >= n_agents; }

  /// Throws std::invalid_argument when a knob is out of range.
  void validate() const;
};

struct CommunicationRecord {
  std::size_t epoch = 0;
  std::vector<AgentId> friends;
};

struct LossTrace {
  std::vector<double> values;
};

struct StepResult {
  Ensemble ensemble;
  CommunicationRecord record;
};

/// Counter-based random substreams: one independent engine per (epoch, stream).
class StreamFactory {
 public:
  explicit StreamFactory(std::uint64_t seed) : seed_(seed) {}

  std::mt19937_64 engine(std::uint64_t epoch, std::uint64_t stream) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

StepResult step_deterministic(const Ensemble& e, const RunConfig& cfg, const MetricFamily& m,
                              std::size_t epoch = 0);

StepResult step_stochastic(const Ensemble& e, const RunConfig& cfg, const MetricFamily& m,
                           const StreamFactory& rng, std::size_t epoch = 0);

/// Shared-batch epoch over an explicit partition of the agents. Each batch is
/// the theta sample of its members; positions are updated after all batches.
StepResult step_with_batches(const Ensemble& e, const RunConfig& cfg, const MetricFamily& m,
                             std::span<const std::vector<AgentId>> batches, std::size_t epoch = 0);

/// Shuffled consecutive batches of size S (the last one may be shorter).
std::vector<std::vector<AgentId>> make_batches(std::size_t n, std::size_t batch_size,
                                               std::mt19937_64& engine);

/// Per-epoch callback: (epoch just completed, ensemble after it, loss after it).
using EpochObserver = std::function<void(std::size_t, const Ensemble&, double)>;

struct RunResult {
  Ensemble final;
  LossTrace loss;
  std::vector<CommunicationRecord> records;
  std::size_t epochs_run = 0;
  bool converged = false;
  double initial_diameter = 0.0;
};

/// Stochastic epochs when S < N, deterministic otherwise. The trace holds the
/// loss before the first step and after every step.
RunResult run(const RunConfig& cfg, const Ensemble& init, const EpochObserver& observer = {});

/// max_k |z_k - z_{friends[k]}| <= tol.
bool detect_convergence(const Ensemble& e, const CommunicationRecord& rec, double tol);

/// max_k |z_k - z_{friends[k]}|.
double max_friend_distance(const Ensemble& e, const CommunicationRecord& rec);

/// Loss used for traces: closed form for p = 2, exact pair sum otherwise.
double trace_loss(const Ensemble& e, const MetricFamily& m);

}  // namespace polarmax
