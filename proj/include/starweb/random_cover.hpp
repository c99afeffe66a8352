#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "starweb/cover.hpp"
#include "starweb/cube.hpp"

namespace starweb {

// Shape of the generated covers. Sampled elements start below max_lo + 1
// and span at most max_span + 1 levels. Patch cells come from level bands:
// the first ends below max_lo + 1, later ones are at most max_span + 1 wide
// and the last is unbounded.
struct RandomCoverParams {
  std::size_t max_sampled = 8;
  double pin_probability = 0.3;
  double unbounded_probability = 0.6;
  std::size_t max_lo = 4;
  std::size_t max_span = 4;
  std::size_t max_bands = 3;
  // Probability of splitting a partition node at depth d:
  // split_probability^(d+1).
  double split_probability = 0.75;
  std::size_t max_leaves = 32;
  // Per patch: chance of dropping one pin, and of stretching its interval.
  double widen_probability = 0.3;
};

namespace detail {

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo,
                           std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool chance(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

// Leaves of a random split tree over the free coordinates of `root`; they
// partition it.
inline std::vector<Box> random_partition(const Box& root, std::mt19937_64& rng,
                                         const RandomCoverParams& params) {
  std::vector<Box> leaves;
  std::vector<std::pair<Box, std::size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [box, depth] = stack.back();
    stack.pop_back();
    double p = params.split_probability;
    for (std::size_t d = 0; d < depth; ++d) p *= params.split_probability;
    const bool room = leaves.size() + stack.size() + 2 <= params.max_leaves;
    if (!box.free() || !room || !chance(rng, p)) {
      leaves.push_back(box);
      continue;
    }
    const auto coords = indices_of(box.free());
    const std::size_t alpha = coords[uniform(rng, 0, coords.size() - 1)];
    stack.emplace_back(box.pin(alpha, true), depth + 1);
    stack.emplace_back(box.pin(alpha, false), depth + 1);
  }
  return leaves;
}

}  // namespace detail

// A random cover of X: a few sampled elements, then targeted patches until
// validate_cover passes. Each band of levels owns a random partition of the
// cube into boxes; a point missed at level n is patched with the (possibly
// widened) cell holding it in the band of n. The cells of all bands cover X,
// so the loop ends after at most one patch per cell.
inline Cover random_cover(std::size_t tau, std::mt19937_64& rng,
                          const RandomCoverParams& params = {}) {
  using detail::chance;
  using detail::uniform;
  detail::check_tau(tau);
  Cover c{tau};

  for (std::size_t i = uniform(rng, 1, std::min(2 * tau, params.max_sampled));
       i > 0; --i) {
    Mask ones = 0, zeros = 0;
    for (std::size_t a = 0; a < tau; ++a)
      if (chance(rng, params.pin_probability))
        (chance(rng, 0.5) ? ones : zeros) |= detail::bit(a);
    const std::size_t lo = uniform(rng, 0, params.max_lo);
    std::optional<std::size_t> hi;
    if (!chance(rng, params.unbounded_probability))
      hi = lo + uniform(rng, 0, params.max_span);
    c.add(Box{tau, ones, zeros}, LevelInterval{lo, hi});
  }

  struct Band {
    LevelInterval levels;
    std::vector<Box> cells;
  };
  std::vector<Band> bands;
  const std::size_t count =
      uniform(rng, 1, std::max<std::size_t>(1, params.max_bands));
  std::size_t lo = 0;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const std::size_t hi = lo + uniform(rng, 0, i == 0 ? params.max_lo
                                                       : params.max_span);
    bands.push_back({LevelInterval::closed(lo, hi), {}});
    lo = hi + 1;
  }
  bands.push_back({LevelInterval::from(lo), {}});
  for (auto& band : bands)
    band.cells = detail::random_partition(Box::whole(tau), rng, params);

  for (auto v = validate_cover(c); !v; v = validate_cover(c)) {
    const XPoint x = *v.missed;
    const auto band = std::find_if(bands.begin(), bands.end(), [&](const Band& b) {
      return b.levels.contains(x.level);
    });
    const Box cell = *std::find_if(
        band->cells.begin(), band->cells.end(),
        [&](const Box& b) { return b.contains(x.base); });

    Box box = cell;
    if (cell.pinned() && chance(rng, params.widen_probability)) {
      const auto pins = detail::indices_of(cell.pinned());
      const Mask drop = detail::bit(pins[uniform(rng, 0, pins.size() - 1)]);
      box = Box{tau, cell.ones() & ~drop, cell.zeros() & ~drop};
    }
    LevelInterval interval = band->levels;
    if (chance(rng, params.widen_probability)) {
      interval.lo -= std::min(interval.lo, uniform(rng, 0, 2));
      if (interval.hi) *interval.hi += uniform(rng, 0, 2);
    }
    c.add(box, interval);
  }
  return c;
}

}  // namespace starweb
