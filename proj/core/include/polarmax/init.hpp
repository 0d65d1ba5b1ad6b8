// Reproducible random initial ensembles.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "polarmax/model.hpp"

namespace polarmax {

enum class InitKind { GaussianMixture, Ball };

std::string to_string(InitKind k);
InitKind parse_init_kind(const std::string& s);

struct InitSpec {
  InitKind kind = InitKind::Ball;
  std::size_t n_agents = 100;
  std::size_t dim = 2;
  std::size_t n_components = 1;      // mixture only
  double component_std = 1.0;        // mixture only
  double mean_box_halfwidth = 10.0;  // mixture only: means ~ U[-h, h]^D
  double radius = 10.0;              // ball only
  std::uint64_t seed = 0;

  void validate() const;
};

/// Mixture: component means uniform in the box, agents split as evenly as
/// possible (the first N mod K components get one extra), listed component by
/// component, each agent its mean plus isotropic N(0, std^2) noise.
/// Ball: agents uniform in the D-ball of the given radius centred at the origin.
Ensemble generate(const InitSpec& spec);

/// Agents per mixture component under the even split.
std::size_t component_count(const InitSpec& spec, std::size_t component);

}  // namespace polarmax
