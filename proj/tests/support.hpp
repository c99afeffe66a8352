#pragma once

// Generators and brute-force helpers shared by the test binaries.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "starweb/starweb.hpp"

namespace starweb::testing {

inline Box random_box(std::size_t tau, std::mt19937_64& rng,
                      double pin = 0.4) {
  std::bernoulli_distribution pinned(pin), one(0.5);
  Mask ones = 0, zeros = 0;
  for (std::size_t a = 0; a < tau; ++a)
    if (pinned(rng)) (one(rng) ? ones : zeros) |= detail::bit(a);
  return {tau, ones, zeros};
}

inline PointSet random_points(std::size_t tau, std::mt19937_64& rng,
                              std::size_t max_count, double unit_bias = 0.2) {
  std::uniform_int_distribution<std::size_t> count(0, max_count);
  std::uniform_int_distribution<std::size_t> coord(0, tau - 1);
  std::bernoulli_distribution unit(unit_bias);
  const Mask full = detail::full_mask(tau);
  PointSet s;
  for (std::size_t i = count(rng); i > 0; --i) {
    if (unit(rng))
      s.insert(unit_point(coord(rng), tau));
    else
      s.insert(CubePoint{tau, rng() & full});
  }
  return s;
}

inline LevelFamily random_family(std::size_t tau, std::mt19937_64& rng,
                                 std::size_t max_horizon,
                                 double unit_bias = 0.2) {
  std::uniform_int_distribution<std::size_t> h(0, max_horizon);
  std::vector<PointSet> prefix;
  for (std::size_t n = h(rng); n > 0; --n)
    prefix.push_back(random_points(tau, rng, 3, unit_bias));
  return {tau, std::move(prefix), random_points(tau, rng, 3, unit_bias)};
}

// Explicit membership of a point of X in the union of pieces, straight from
// the definition.
inline bool brute_in_pieces(const std::vector<Piece>& pieces, const XPoint& x) {
  for (const auto& p : pieces) {
    if (!p.box.contains(x.base)) continue;
    if (x.level.is_top()) {
      if (!p.interval.hi) return true;
    } else if (x.level.value() >= p.interval.lo &&
               (!p.interval.hi || x.level.value() <= *p.interval.hi)) {
      return true;
    }
  }
  return false;
}

// First point of X (levels 0..horizon-1, then tops) outside the pieces.
inline std::optional<XPoint> brute_first_missed(
    std::size_t tau, const std::vector<Piece>& pieces, std::size_t horizon) {
  for (std::size_t n = 0; n < horizon; ++n) {
    for (Mask i = 0; i < (Mask{1} << tau); ++i) {
      // lexicographic order: coordinate 0 is the most significant character
      Mask bits = 0;
      for (std::size_t a = 0; a < tau; ++a)
        if ((i >> (tau - 1 - a)) & 1U) bits |= detail::bit(a);
      XPoint x{CubePoint{tau, bits}, Level{n}};
      if (!brute_in_pieces(pieces, x)) return x;
    }
  }
  for (std::size_t a = 0; a < tau; ++a) {
    XPoint x{CubePoint{tau, detail::bit(a)}, Level::top()};
    if (!brute_in_pieces(pieces, x)) return x;
  }
  return std::nullopt;
}

inline Cover three_box_cover() {
  Cover c{2};
  c.add(Box::from_pins(2, std::vector<std::size_t>{0}, {}),
        LevelInterval::from(0));
  c.add(Box::from_pins(2, std::vector<std::size_t>{1}, {}),
        LevelInterval::from(0));
  c.add(Box::from_pins(2, {}, std::vector<std::size_t>{0, 1}),
        LevelInterval::from(0));
  return c;
}

inline CubePoint pt(const char* bits) { return CubePoint::parse(bits); }

}  // namespace starweb::testing
