// Post-processing of runs: attractor extraction, reconstruction error,
// occupancy histograms and the block structure of the friend graph.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polarmax/dynamics.hpp"
#include "polarmax/model.hpp"

namespace polarmax {

/// Limit clusters: centers V_1..V_K, agent labels, per-cluster counts.
/// Clusters are ordered by descending count, ties by smallest member index.
struct AttractorSummary {
  std::vector<std::vector<double>> centers;
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> counts;
  double merge_radius = 0.0;

  std::size_t n_clusters() const { return centers.size(); }
};

/// Single-linkage clustering: agents closer than `merge_radius` (directly or
/// through a chain) share a cluster; each center is the member mean.
AttractorSummary extract_attractor(const Ensemble& e, double merge_radius);

/// Index-matched mean squared error (1/N) sum_k |a_k - b_k|^2.
double attractor_mse(const Ensemble& predicted, const Ensemble& ground_truth);

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Axis-aligned bounding box grown by `margin` times its extent on each side.
/// Zero-extent axes are widened to +-0.5 around the value.
Box bounding_box(const PointSet& ps, double margin = 0.05);

/// Agent counts on a grid_size x grid_size grid over a 2D box. counts is row
/// major with rows along y: counts[iy * grid_size + ix]. Bins are half-open
/// [lo, hi) except the last one per axis, which is closed; agents outside the
/// box are clamped into the edge bins.
struct GridHistogram {
  std::size_t grid_size = 0;
  Box bounds;
  std::vector<std::size_t> counts;

  std::size_t at(std::size_t ix, std::size_t iy) const { return counts[iy * grid_size + ix]; }
  std::size_t total() const;
};

GridHistogram grid_histogram(const Ensemble& e, std::size_t grid_size, const Box& bounds);

struct BlockStructure {
  bool holds = false;
  std::size_t t_star = 0;
};

/// Earliest recorded epoch t* from which every friend edge (k, l(k)) stays
/// inside one cluster of `summary` for the rest of the recorded horizon.
/// Returns holds = false and t* = last epoch + 1 when the final record already
/// has an inter-cluster edge.
BlockStructure verify_block_structure(std::span<const CommunicationRecord> records,
                                      const AttractorSummary& summary);

}  // namespace polarmax
