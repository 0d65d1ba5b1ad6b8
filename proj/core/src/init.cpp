#include "polarmax/init.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace polarmax {

std::string to_string(InitKind k) { return k == InitKind::Ball ? "ball" : "gaussian_mixture"; }

InitKind parse_init_kind(const std::string& s) {
  if (s == "ball") return InitKind::Ball;
  if (s == "gaussian_mixture") return InitKind::GaussianMixture;
  throw std::invalid_argument("init kind must be 'ball' or 'gaussian_mixture', got '" + s + "'");
}

void InitSpec::validate() const {
  if (n_agents == 0) throw std::invalid_argument("init: n_agents must be >= 1");
  if (dim == 0) throw std::invalid_argument("init: dim must be >= 1");
  if (kind == InitKind::GaussianMixture) {
    if (n_components == 0) throw std::invalid_argument("init: n_components must be >= 1");
    if (!(component_std > 0)) throw std::invalid_argument("init: component_std must be positive");
    if (!(mean_box_halfwidth > 0)) throw std::invalid_argument("init: mean_box_halfwidth must be positive");
  } else if (!(radius > 0)) {
    throw std::invalid_argument("init: radius must be positive");
  }
}

std::size_t component_count(const InitSpec& spec, std::size_t component) {
  const std::size_t base = spec.n_agents / spec.n_components;
  return base + (component < spec.n_agents % spec.n_components ? 1 : 0);
}

Ensemble generate(const InitSpec& spec) {
  spec.validate();
  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> coords;
  coords.reserve(spec.n_agents * spec.dim);

  if (spec.kind == InitKind::Ball) {
    std::vector<double> dir(spec.dim);
    for (std::size_t k = 0; k < spec.n_agents; ++k) {
      double len2 = 0;
      do {
        len2 = 0;
        for (auto& x : dir) {
          x = normal(engine);
          len2 += x * x;
        }
      } while (len2 == 0);
      const double r = spec.radius * std::pow(unit(engine), 1.0 / static_cast<double>(spec.dim));
      const double s = r / std::sqrt(len2);
      for (double x : dir) coords.push_back(x * s);
    }
  } else {
    std::uniform_real_distribution<double> box(-spec.mean_box_halfwidth, spec.mean_box_halfwidth);
    std::vector<double> means(spec.n_components * spec.dim);
    for (auto& x : means) x = box(engine);
    for (std::size_t c = 0; c < spec.n_components; ++c) {
      const std::size_t count = component_count(spec, c);
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t d = 0; d < spec.dim; ++d)
          coords.push_back(means[c * spec.dim + d] + spec.component_std * normal(engine));
    }
  }
  return Ensemble{PointSet(spec.dim, std::move(coords)), 0.0};
}

}  // namespace polarmax
