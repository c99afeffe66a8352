#pragma once

// Brute-force ground truth on small instances. Everything here enumerates
// explicit points of X up to a horizon H and never uses the symbolic
// coverage search of cover.hpp. Truncation is exact only once H reaches the
// stable level of every input, so each entry point checks that first.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "starweb/cover.hpp"
#include "starweb/cube.hpp"
#include "starweb/errors.hpp"
#include "starweb/space.hpp"

namespace starweb::oracle {

inline constexpr std::size_t kDefaultHorizon = 20;
inline constexpr std::size_t kExhaustiveMaxTau = 3;
inline constexpr std::size_t kExhaustiveMaxSize = 4;

// All (p, n) with n < horizon, then all (z_alpha, TOP): 2^tau * H + tau points.
struct FiniteModel {
  std::size_t tau;
  std::size_t horizon;
  std::vector<XPoint> points;

  FiniteModel(std::size_t t, std::size_t h) : tau(t), horizon(h) {
    detail::check_tau(tau);
    if (tau > kOracleMaxTau)
      throw DimensionError("finite model limited to dimension " +
                           std::to_string(kOracleMaxTau));
    if (horizon == 0) throw InvalidArgument("horizon must be positive");
    points.reserve((std::size_t{1} << tau) * horizon + tau);
    for (std::size_t n = 0; n < horizon; ++n)
      for_each_point(tau, [&](const CubePoint& p) {
        points.emplace_back(p, Level{n});
      });
    for (auto& x : top_points(tau)) points.push_back(x);
  }
};

// Smallest horizon at which truncation is exact.
inline std::size_t required_horizon(const Cover& c) {
  return stable_level(c) + 1;
}
inline std::size_t required_horizon(const LevelFamily& a) {
  return a.horizon() + 1;
}

inline void check_horizon(std::size_t given, std::size_t required) {
  if (given < required) throw HorizonTooSmall(given, required);
}

inline bool in_set(const XPoint& x, const LevelFamily& a,
                   std::span<const CubePoint> tops) {
  if (x.level.is_top())
    return std::find(tops.begin(), tops.end(), x.base) != tops.end();
  return a.contains(x.base, x.level.value());
}

struct StarCheck {
  bool covers = false;
  std::optional<XPoint> missed;
  std::vector<std::size_t> starred;  // ids of elements meeting the set
};

// St(A, c) = X decided by listing element-point incidences.
inline StarCheck brute_star_covers(const LevelFamily& a, const Cover& c,
                                   std::size_t horizon,
                                   std::span<const CubePoint> tops = {}) {
  detail::check_same_tau(a.tau(), c.tau());
  check_horizon(horizon, std::max(required_horizon(a), required_horizon(c)));
  const FiniteModel model{c.tau(), horizon};

  StarCheck out;
  std::vector<const CoverElement*> starred;
  for (const auto& e : c.elements()) {
    const bool hit = std::any_of(
        model.points.begin(), model.points.end(),
        [&](const XPoint& x) { return e.contains(x) && in_set(x, a, tops); });
    if (hit) {
      out.starred.push_back(e.id);
      starred.push_back(&e);
    }
  }
  for (const auto& x : model.points) {
    const bool inside =
        std::any_of(starred.begin(), starred.end(),
                    [&](const CoverElement* e) { return e->contains(x); });
    if (!inside) {
      out.missed = x;
      return out;
    }
  }
  out.covers = true;
  return out;
}

// Closed and discrete by neighbourhood enumeration. Finite-level points are
// isolated by {p} x {n}, which meets A in at most the point itself, so only
// top points can accumulate: (z, TOP) does iff every {z} x [n, TOP] meets A.
inline ClosedDiscreteResult brute_closed_discrete(const LevelFamily& a,
                                                  std::size_t horizon) {
  check_horizon(horizon, required_horizon(a));
  if (a.tau() > kOracleMaxTau)
    throw DimensionError("finite model limited to dimension " +
                         std::to_string(kOracleMaxTau));
  for (std::size_t alpha = 0; alpha < a.tau(); ++alpha) {
    const CubePoint z = unit_point(alpha, a.tau());
    bool every_neighbourhood_meets = true;
    for (std::size_t n = 0; n < horizon && every_neighbourhood_meets; ++n) {
      bool meets = false;
      for (std::size_t m = n; m < horizon && !meets; ++m)
        meets = a.contains(z, m);
      every_neighbourhood_meets = meets;
    }
    if (every_neighbourhood_meets) return {false, z};
  }
  return {};
}

struct StarcompactResult {
  std::optional<std::vector<XPoint>> found;
  // NotFound is conclusive only when the exhaustive search ran.
  bool exhaustive = false;

  bool conclusive() const noexcept { return found.has_value() || exhaustive; }
};

// Finite A with |A| <= max_size and St(A, c) = X: greedy first, then, for
// tau <= 3 and max_size <= 4, exhaustive search over points grouped by the
// set of elements containing them.
inline StarcompactResult starcompact_search(const Cover& c,
                                            std::size_t max_size,
                                            std::size_t horizon) {
  if (auto v = validate_cover(c); !v)
    throw InvalidCover(v.missed->to_string(), "not a cover");
  check_horizon(horizon, required_horizon(c));
  const FiniteModel model{c.tau(), horizon};
  const std::size_t m = c.size();
  using Bits = boost::dynamic_bitset<>;

  // Signature of a point: the elements containing it. Points sharing a
  // signature are interchangeable in A.
  std::vector<Bits> sig_of_point;
  std::vector<Bits> sigs;
  std::vector<XPoint> reps;
  for (const auto& x : model.points) {
    Bits s(m);
    for (std::size_t i = 0; i < m; ++i)
      if (c.elements()[i].contains(x)) s.set(i);
    sig_of_point.push_back(s);
    if (std::find(sigs.begin(), sigs.end(), s) == sigs.end()) {
      sigs.push_back(s);
      reps.push_back(x);
    }
  }
  auto covers = [&](const Bits& starred) {
    return std::all_of(sig_of_point.begin(), sig_of_point.end(),
                       [&](const Bits& s) { return s.intersects(starred); });
  };

  StarcompactResult out;
  {
    Bits starred(m);
    std::vector<XPoint> chosen;
    while (!covers(starred) && chosen.size() < max_size) {
      std::size_t best = 0, gain = 0;
      for (std::size_t i = 0; i < sigs.size(); ++i) {
        const std::size_t g = (sigs[i] - starred).count();
        if (g > gain) {
          gain = g;
          best = i;
        }
      }
      if (gain == 0) break;
      starred |= sigs[best];
      chosen.push_back(reps[best]);
    }
    if (covers(starred)) {
      out.found = chosen;
      return out;
    }
  }

  if (c.tau() > kExhaustiveMaxTau || max_size > kExhaustiveMaxSize)
    return out;
  out.exhaustive = true;
  std::vector<std::size_t> idx;
  Bits starred(m);
  // Depth-first over increasing index tuples of length <= max_size.
  auto search = [&](auto&& self, std::size_t start, const Bits& acc) -> bool {
    if (covers(acc)) return true;
    if (idx.size() == max_size) return false;
    for (std::size_t i = start; i < sigs.size(); ++i) {
      idx.push_back(i);
      if (self(self, i + 1, acc | sigs[i])) return true;
      idx.pop_back();
    }
    return false;
  };
  if (search(search, 0, starred)) {
    std::vector<XPoint> a;
    for (std::size_t i : idx) a.push_back(reps[i]);
    out.found = a;
  }
  return out;
}

struct ExtentWitness {
  std::size_t extent = 0;
  std::vector<XPoint> witness;
  bool verified = false;
};

// tau together with Z x {TOP}, checked to be closed and discrete: every
// point of X has a basic neighbourhood meeting the witness in at most the
// point itself ({p} x {n} at finite levels, the column {z} x [0, TOP] on top).
inline ExtentWitness extent_lower_bound(std::size_t tau) {
  ExtentWitness out;
  out.witness = top_points(tau);
  out.extent = out.witness.size();
  const FiniteModel model{tau, 1};
  out.verified = std::all_of(
      model.points.begin(), model.points.end(), [&](const XPoint& x) {
        const Piece nbhd{Box::singleton(x.base),
                         x.level.is_top()
                             ? LevelInterval::from(0)
                             : LevelInterval::closed(x.level.value(),
                                                     x.level.value())};
        return std::none_of(out.witness.begin(), out.witness.end(),
                            [&](const XPoint& w) {
                              return !(w == x) && nbhd.contains(w);
                            });
      });
  return out;
}

}  // namespace starweb::oracle
