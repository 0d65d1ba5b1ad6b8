#include "polarmax/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace polarmax {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t d = 0; d < a.size(); ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return s;
}

constexpr std::size_t kMaxGridDim = 4;
using CellKey = std::array<std::int64_t, kMaxGridDim>;

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

void link_naive(const PointSet& ps, double r2, DisjointSets& sets) {
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = a + 1; b < ps.size(); ++b)
      if (dist2(ps[a], ps[b]) <= r2) sets.unite(a, b);
}

// Cells of side r / sqrt(D): members of one cell are always within r of each other.
bool link_grid(const PointSet& ps, double r, DisjointSets& sets) {
  const std::size_t dim = ps.dim();
  const double cell = r / std::sqrt(static_cast<double>(dim));
  const auto reach = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(dim))));
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    CellKey key{};
    for (std::size_t d = 0; d < dim; ++d) {
      const double c = std::floor(ps[k][d] / cell);
      if (std::abs(c) > 1e15) return false;
      key[d] = static_cast<std::int64_t>(c);
    }
    cells[key].push_back(k);
  }
  for (const auto& [key, members] : cells)
    for (std::size_t i = 1; i < members.size(); ++i) sets.unite(members[0], members[i]);

  const double r2 = r * r;
  std::size_t n_offsets = 1;
  for (std::size_t d = 0; d < dim; ++d) n_offsets *= static_cast<std::size_t>(2 * reach + 1);
  for (const auto& [key, members] : cells) {
    for (std::size_t o = 0; o < n_offsets; ++o) {
      CellKey other = key;
      std::size_t rem = o;
      bool positive = false;
      bool decided = false;
      for (std::size_t d = 0; d < dim; ++d) {
        const auto off = static_cast<std::int64_t>(rem % static_cast<std::size_t>(2 * reach + 1)) - reach;
        rem /= static_cast<std::size_t>(2 * reach + 1);
        other[d] += off;
        if (!decided && off != 0) {
          positive = off > 0;
          decided = true;
        }
      }
      // Visit each unordered neighbour pair once.
      if (!decided || !positive) continue;
      const auto it = cells.find(other);
      if (it == cells.end()) continue;
      if (sets.find(members[0]) == sets.find(it->second[0])) continue;
      bool linked = false;
      for (std::size_t a : members) {
        for (std::size_t b : it->second)
          if (dist2(ps[a], ps[b]) <= r2) {
            sets.unite(a, b);
            linked = true;
            break;
          }
        if (linked) break;
      }
    }
  }
  return true;
}

}  // namespace

AttractorSummary extract_attractor(const Ensemble& e, double merge_radius) {
  if (!(merge_radius > 0)) throw std::invalid_argument("merge_radius must be positive");
  const std::size_t n = e.size();
  DisjointSets sets(n);
  if (e.dim() > kMaxGridDim || !link_grid(e.positions, merge_radius, sets))
    link_naive(e.positions, merge_radius * merge_radius, sets);

  // Roots are the smallest member index because unite() keeps the smaller root.
  std::vector<std::size_t> root_of(n);
  std::vector<std::vector<std::size_t>> groups;
  std::unordered_map<std::size_t, std::size_t> group_of_root;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = sets.find(k);
    auto [it, fresh] = group_of_root.try_emplace(r, groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(k);
  }
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (groups[a].size() != groups[b].size()) return groups[a].size() > groups[b].size();
    return groups[a].front() < groups[b].front();
  });

  AttractorSummary s;
  s.merge_radius = merge_radius;
  s.assignment.resize(n);
  for (std::size_t label = 0; label < order.size(); ++label) {
    const auto& members = groups[order[label]];
    std::vector<double> c(e.dim(), 0.0);
    for (std::size_t k : members) {
      s.assignment[k] = label;
      for (std::size_t d = 0; d < e.dim(); ++d) c[d] += e.positions[k][d];
    }
    for (auto& x : c) x /= static_cast<double>(members.size());
    s.centers.push_back(std::move(c));
    s.counts.push_back(members.size());
  }
  return s;
}

double attractor_mse(const Ensemble& predicted, const Ensemble& ground_truth) {
  if (predicted.size() != ground_truth.size() || predicted.dim() != ground_truth.dim())
    throw std::invalid_argument("attractor_mse: ensembles differ in shape");
  if (predicted.size() == 0) return 0.0;
  double s = 0;
  for (std::size_t k = 0; k < predicted.size(); ++k)
    s += dist2(predicted.positions[k], ground_truth.positions[k]);
  return s / static_cast<double>(predicted.size());
}

Box bounding_box(const PointSet& ps, double margin) {
  if (ps.empty()) throw std::invalid_argument("bounding_box: empty point set");
  Box b{std::vector<double>(ps[0].begin(), ps[0].end()), std::vector<double>(ps[0].begin(), ps[0].end())};
  for (std::size_t k = 1; k < ps.size(); ++k)
    for (std::size_t d = 0; d < ps.dim(); ++d) {
      b.lo[d] = std::min(b.lo[d], ps[k][d]);
      b.hi[d] = std::max(b.hi[d], ps[k][d]);
    }
  for (std::size_t d = 0; d < ps.dim(); ++d) {
    const double extent = b.hi[d] - b.lo[d];
    if (extent == 0) {
      b.lo[d] -= 0.5;
      b.hi[d] += 0.5;
    } else {
      b.lo[d] -= margin * extent;
      b.hi[d] += margin * extent;
    }
  }
  return b;
}

std::size_t GridHistogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

GridHistogram grid_histogram(const Ensemble& e, std::size_t grid_size, const Box& bounds) {
  if (e.dim() != 2) throw std::invalid_argument("grid_histogram: requires 2D positions");
  if (grid_size == 0) throw std::invalid_argument("grid_histogram: grid_size must be >= 1");
  if (bounds.lo.size() != 2 || bounds.hi.size() != 2 || !(bounds.hi[0] > bounds.lo[0]) ||
      !(bounds.hi[1] > bounds.lo[1]))
    throw std::invalid_argument("grid_histogram: invalid bounds");
  GridHistogram h{grid_size, bounds, std::vector<std::size_t>(grid_size * grid_size, 0)};
  auto bin = [&](double x, std::size_t d) {
    const double t = (x - bounds.lo[d]) / (bounds.hi[d] - bounds.lo[d]) * static_cast<double>(grid_size);
    if (!(t > 0)) return std::size_t{0};
    return std::min(grid_size - 1, static_cast<std::size_t>(t));
  };
  for (std::size_t k = 0; k < e.size(); ++k) {
    const auto z = e.positions[k];
    ++h.counts[bin(z[1], 1) * grid_size + bin(z[0], 0)];
  }
  return h;
}

BlockStructure verify_block_structure(std::span<const CommunicationRecord> records,
                                      const AttractorSummary& summary) {
  if (records.empty()) throw std::invalid_argument("verify_block_structure: no records");
  auto intra = [&](const CommunicationRecord& r) {
    if (r.friends.size() != summary.assignment.size())
      throw std::invalid_argument("verify_block_structure: record size does not match the summary");
    for (std::size_t k = 0; k < r.friends.size(); ++k)
      if (summary.assignment[k] != summary.assignment[r.friends[k]]) return false;
    return true;
  };
  std::size_t first_good = records.size();
  while (first_good > 0 && intra(records[first_good - 1])) --first_good;
  if (first_good == records.size()) return {false, records.back().epoch + 1};
  return {true, records[first_good].epoch};
}

}  // namespace polarmax
