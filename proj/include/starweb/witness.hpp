#pragma once

// Construction of a countable closed discrete A with St(A, V) = X for a
// finite cover V of X.
//
//   Q part: at each level take a finite subcover, pick in every box U used a
//     point p_U off Z, and put (p_U, n) into Q. Q stars every finite level.
//   R part: for each alpha pick an element O_alpha holding (z_alpha, TOP) and
//     a canonical neighbourhood U_alpha of z_alpha inside it. Decompose the
//     set mapping alpha -> F_alpha into free classes; the indicator point of
//     each class lies in U_alpha for every alpha in the class. With
//     S = {s_0, s_1, ...} put R_n = {(s_k, n) : k <= n}. R stars every top
//     point.
//
// Neither part has points over Z, so A = Q u R is closed and discrete. At
// finite dimension two steps can be impossible; they raise BoxInsideZ and
// SingletonUnfixable instead of being patched.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "starweb/choice.hpp"
#include "starweb/cover.hpp"
#include "starweb/cube.hpp"
#include "starweb/errors.hpp"
#include "starweb/setmap.hpp"
#include "starweb/space.hpp"

namespace starweb {

// Choice for one top point (z_alpha, TOP).
struct TopChoice {
  std::size_t alpha;
  std::size_t element_id;             // O_alpha
  std::vector<std::size_t> zeros;     // F_alpha
  std::size_t threshold;              // n_alpha

  // U_alpha = {f : f(alpha) = 1, f(beta) = 0 for beta in F_alpha}.
  Box neighborhood(std::size_t tau) const {
    return z_neighborhood(alpha, zeros, tau);
  }
};

using TopAssignment = std::vector<TopChoice>;

struct HittingSet {
  std::vector<CubePoint> points;
  FreeDecomposition classes;  // points[i] comes from classes.classes[i]
};

// Points hitting every U_alpha and avoiding Z. `zeros[alpha]` is F_alpha.
inline HittingSet off_z_hitting_set(
    std::span<const std::vector<std::size_t>> zeros, ChoiceRule& choice) {
  const std::size_t tau = zeros.size();
  detail::check_tau(tau);
  std::vector<std::vector<std::size_t>> images(zeros.begin(), zeros.end());
  for (std::size_t alpha = 0; alpha < tau; ++alpha)
    for (std::size_t beta : images[alpha])
      if (beta >= tau) throw IndexError("F_alpha coordinate out of range");
  const SetMapping f{std::move(images)};

  HittingSet out;
  out.classes = free_decompose(f);
  for (const auto& cls : out.classes.classes) {
    Mask bits = 0;
    for (std::size_t alpha : cls) bits |= detail::bit(alpha);
    if (cls.size() == 1) {
      // Switch on one more coordinate outside F_alpha so the point leaves Z
      // and stays in U_alpha.
      const std::size_t alpha = cls.front();
      const Mask spare = detail::full_mask(tau) & ~bits &
                         ~detail::mask_of(f.image(alpha), tau);
      if (!spare)
        throw SingletonUnfixable(
            alpha, "no spare coordinate for singleton class {" +
                       std::to_string(alpha) + "}");
      const auto candidates = detail::indices_of(spare);
      bits |= detail::bit(candidates[choice.pick(candidates.size())]);
    }
    out.points.emplace_back(tau, bits);
  }
  return out;
}

inline HittingSet off_z_hitting_set(
    std::span<const std::vector<std::size_t>> zeros) {
  auto rule = ChoiceRule::first();
  return off_z_hitting_set(zeros, rule);
}

// O_alpha, U_alpha, n_alpha for every alpha. Deterministic rule: the first
// element (in list order) holding (z_alpha, TOP), its own pins, n_alpha = lo.
inline TopAssignment assign_top_neighborhoods(const Cover& c,
                                              ChoiceRule& choice) {
  TopAssignment out;
  for (std::size_t alpha = 0; alpha < c.tau(); ++alpha) {
    const XPoint top{unit_point(alpha, c.tau()), Level::top()};
    std::vector<const CoverElement*> holders;
    for (const auto& e : c.elements())
      if (e.contains(top)) holders.push_back(&e);
    if (holders.empty())
      throw InvalidCover(top.to_string(),
                         top.to_string() + " is not covered");
    const CoverElement& o = *holders[choice.pick(holders.size())];
    std::size_t threshold = o.interval.lo;
    if (choice.is_random()) threshold += choice.pick(4);
    out.push_back({alpha, o.id, canonical_z_neighborhood(o.box, alpha),
                   threshold});
  }
  return out;
}

// Q: the off-Z picks of each level's subcover boxes.
inline LevelFamily build_q_part(const Cover& c, ChoiceRule& choice) {
  const std::size_t n_stable = stable_level(c);
  std::vector<std::pair<Box, CubePoint>> picks;  // one p_U per distinct box
  auto pick_for = [&](const Box& b) {
    for (const auto& [box, p] : picks)
      if (box == b) return p;
    CubePoint p = pick_off_z_point(b, choice);
    picks.emplace_back(b, p);
    return p;
  };
  auto slice = [&](std::size_t n) {
    PointSet s;
    for (const auto& e : per_level_subcover(c, n)) s.insert(pick_for(e.box));
    return s;
  };
  std::vector<PointSet> prefix;
  for (std::size_t n = 0; n < n_stable; ++n) prefix.push_back(slice(n));
  PointSet tail = slice(n_stable);
  return LevelFamily{c.tau(), std::move(prefix), std::move(tail)}.normalized();
}

struct RPart {
  LevelFamily family;
  TopAssignment tops;
  HittingSet hitting;
};

// R: R_n = {(s_k, n) : k <= n}; constant S from level |S| - 1 on.
inline RPart build_r_part_detailed(const Cover& c, ChoiceRule& choice) {
  TopAssignment tops = assign_top_neighborhoods(c, choice);
  std::vector<std::vector<std::size_t>> zeros;
  zeros.reserve(tops.size());
  for (const auto& t : tops) zeros.push_back(t.zeros);
  HittingSet hs = off_z_hitting_set(zeros, choice);

  std::vector<CubePoint> seq = hs.points;
  if (auto* rng = choice.engine()) std::shuffle(seq.begin(), seq.end(), *rng);

  std::vector<PointSet> prefix;
  PointSet running;
  for (const auto& s : seq) {
    running.insert(s);
    prefix.push_back(running);
  }
  LevelFamily fam{c.tau(), std::move(prefix), running};
  return {fam.normalized(), std::move(tops), std::move(hs)};
}

inline LevelFamily build_r_part(const Cover& c, ChoiceRule& choice) {
  return build_r_part_detailed(c, choice).family;
}

struct WitnessReport {
  LevelFamily witness;
  LevelFamily q_part;
  LevelFamily r_part;
  TopAssignment tops;
  bool closed_discrete = false;
  bool star_covers = false;
  std::optional<CubePoint> accumulation;  // z with (z, TOP) accumulating
  std::optional<XPoint> missed;           // point of X outside the star

  bool ok() const noexcept { return closed_discrete && star_covers; }
};

// Runs the whole construction and checks its outcome with the symbolic
// decision procedures. The top part is built first, so a cover that is
// degenerate for both steps reports SingletonUnfixable.
inline WitnessReport synthesize(const Cover& c, ChoiceRule& choice) {
  if (auto v = validate_cover(c); !v)
    throw InvalidCover(v.missed->to_string(),
                       "not a cover: " + v.missed->to_string() +
                           " is not covered");
  RPart r = build_r_part_detailed(c, choice);
  LevelFamily q = build_q_part(c, choice);
  LevelFamily a = family_union(q, r.family);

  WitnessReport rep{a, q, r.family, std::move(r.tops)};
  const auto cd = is_closed_discrete(a);
  rep.closed_discrete = cd.closed_discrete;
  rep.accumulation = cd.violating;
  const auto cov = region_covers_X(star(a, c), c.tau());
  rep.star_covers = cov.covered;
  rep.missed = cov.missed;
  return rep;
}

inline WitnessReport synthesize(const Cover& c) {
  auto rule = ChoiceRule::first();
  return synthesize(c, rule);
}

}  // namespace starweb
