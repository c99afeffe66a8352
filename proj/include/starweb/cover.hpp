#pragma once

// Finite open covers of X made of basic pieces box x level-interval, the star
// operator, and exact coverage tests.
//
// A piece with interval [lo, inf) also contains the top points of its box;
// a finite interval [lo, hi] never does. Beyond the stable level N (one past
// the largest endpoint) every level slice of a finite list of pieces looks
// the same, so checking levels 0..N plus the top points is exact.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "starweb/cube.hpp"
#include "starweb/errors.hpp"
#include "starweb/space.hpp"

namespace starweb {

struct LevelInterval {
  std::size_t lo = 0;
  std::optional<std::size_t> hi;  // nullopt: unbounded, top included

  LevelInterval() = default;
  LevelInterval(std::size_t l, std::optional<std::size_t> h) : lo(l), hi(h) {
    if (hi && *hi < lo)
      throw InvalidArgument("level interval " + std::to_string(lo) + ".." +
                            std::to_string(*hi) + " is empty");
  }

  static LevelInterval from(std::size_t lo) { return {lo, std::nullopt}; }
  static LevelInterval closed(std::size_t lo, std::size_t hi) {
    return {lo, hi};
  }

  bool unbounded() const noexcept { return !hi.has_value(); }

  bool contains(Level l) const noexcept {
    if (l.is_top()) return unbounded();
    return l.value() >= lo && (!hi || l.value() <= *hi);
  }
  bool contains(std::size_t n) const noexcept { return contains(Level{n}); }

  std::string to_string() const {
    return std::to_string(lo) + ".." + (hi ? std::to_string(*hi) : "*");
  }

  friend bool operator==(const LevelInterval&, const LevelInterval&) = default;
};

// A box x interval piece, intersected with X.
struct Piece {
  Box box;
  LevelInterval interval;

  bool contains(const XPoint& x) const {
    return box.contains(x.base) && interval.contains(x.level);
  }

  friend bool operator==(const Piece&, const Piece&) = default;
};

struct CoverElement {
  Box box;
  LevelInterval interval;
  std::size_t id = 0;

  Piece piece() const { return {box, interval}; }
  bool contains(const XPoint& x) const { return piece().contains(x); }

  friend bool operator==(const CoverElement&, const CoverElement&) = default;
};

class Cover {
 public:
  explicit Cover(std::size_t tau) : tau_(tau) { detail::check_tau(tau); }

  Cover(std::size_t tau, std::vector<CoverElement> elements)
      : tau_(tau), elements_(std::move(elements)) {
    detail::check_tau(tau);
    for (const auto& e : elements_) detail::check_same_tau(e.box.tau(), tau_);
  }

  // Appends an element; its id is its position.
  Cover& add(Box box, LevelInterval interval) {
    detail::check_same_tau(box.tau(), tau_);
    elements_.push_back({box, interval, elements_.size()});
    return *this;
  }

  std::size_t tau() const noexcept { return tau_; }
  const std::vector<CoverElement>& elements() const noexcept {
    return elements_;
  }
  std::size_t size() const noexcept { return elements_.size(); }

  std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    out.reserve(elements_.size());
    for (const auto& e : elements_) out.push_back(e.piece());
    return out;
  }

  friend bool operator==(const Cover&, const Cover&) = default;

 private:
  std::size_t tau_;
  std::vector<CoverElement> elements_;
};

// Finite union of pieces.
struct Region {
  std::size_t tau;
  std::vector<Piece> pieces;

  bool empty() const noexcept { return pieces.empty(); }

  bool contains(const XPoint& x) const {
    return std::any_of(pieces.begin(), pieces.end(),
                       [&](const Piece& p) { return p.contains(x); });
  }
};

// N = 1 + the largest finite endpoint or lower bound (0 when there is none).
// All levels >= N see the same pieces.
inline std::size_t stable_level(std::span<const Piece> pieces) {
  std::size_t m = 0;
  for (const auto& p : pieces) {
    m = std::max(m, p.interval.lo);
    if (p.interval.hi) m = std::max(m, *p.interval.hi);
  }
  return m + 1;
}

inline std::size_t stable_level(const Cover& c) {
  return stable_level(c.pieces());
}

struct CoverageResult {
  bool covered = true;
  std::optional<XPoint> missed;

  explicit operator bool() const noexcept { return covered; }
};

namespace detail {

inline std::vector<Box> boxes_at(std::span<const Piece> pieces, Level l) {
  std::vector<Box> out;
  for (const auto& p : pieces)
    if (p.interval.contains(l)) out.push_back(p.box);
  return out;
}

// First point of X (finite levels in order, then top points by alpha) not in
// the union of the pieces; at each level the lexicographically smallest.
inline CoverageResult first_missed(std::size_t tau,
                                   std::span<const Piece> pieces) {
  const std::size_t n_stable = stable_level(pieces);
  for (std::size_t n = 0; n <= n_stable; ++n) {
    const auto boxes = boxes_at(pieces, Level{n});
    if (auto p = smallest_uncovered(boxes, Box::whole(tau)))
      return {false, XPoint{*p, Level{n}}};
  }
  const auto top_boxes = boxes_at(pieces, Level::top());
  for (std::size_t alpha = 0; alpha < tau; ++alpha) {
    const CubePoint z = unit_point(alpha, tau);
    if (std::none_of(top_boxes.begin(), top_boxes.end(),
                     [&](const Box& b) { return b.contains(z); }))
      return {false, XPoint{z, Level::top()}};
  }
  return {};
}

}  // namespace detail

// Does every point of X lie in some element? Certificate: the first missed
// point.
inline CoverageResult validate_cover(const Cover& c) {
  const auto pieces = c.pieces();
  return detail::first_missed(c.tau(), pieces);
}

inline CoverageResult region_covers_X(const Region& r, std::size_t tau) {
  for (const auto& p : r.pieces) detail::check_same_tau(p.box.tau(), tau);
  return detail::first_missed(tau, r.pieces);
}

// Elements containing level n, thinned in list order: an element is kept
// only if it covers some point of D^tau missed by the elements kept before.
inline std::vector<CoverElement> per_level_subcover(const Cover& c,
                                                    std::size_t n) {
  std::vector<CoverElement> kept;
  std::vector<Box> kept_boxes;
  for (const auto& e : c.elements()) {
    if (!e.interval.contains(n)) continue;
    if (boxes_cover(kept_boxes, e.box)) continue;
    kept.push_back(e);
    kept_boxes.push_back(e.box);
  }
  if (!boxes_cover(kept_boxes, Box::whole(c.tau())))
    throw InvalidCover(
        XPoint{*smallest_uncovered(kept_boxes, Box::whole(c.tau())), Level{n}}
            .to_string(),
        "level " + std::to_string(n) + " is not covered");
  return kept;
}

// Does the element meet fam together with the given top points?
inline bool meets(const CoverElement& e, const LevelFamily& fam,
                  std::span<const CubePoint> tops = {}) {
  for (const auto& p : fam.support())
    if (e.box.contains(p) && fiber(fam, p).meets(e.interval.lo, e.interval.hi))
      return true;
  if (e.interval.unbounded())
    for (const auto& z : tops)
      if (e.box.contains(z)) return true;
  return false;
}

// Ids of the elements meeting the set.
inline std::vector<std::size_t> starred_elements(
    const LevelFamily& fam, const Cover& c,
    std::span<const CubePoint> tops = {}) {
  detail::check_same_tau(fam.tau(), c.tau());
  for (const auto& z : tops) {
    detail::check_same_tau(z.tau(), c.tau());
    if (!z.is_unit())
      throw InvalidArgument("top point over non-unit " + z.to_string());
  }
  std::vector<std::size_t> ids;
  for (const auto& e : c.elements())
    if (meets(e, fam, tops)) ids.push_back(e.id);
  return ids;
}

// St(A, c): union of the elements meeting A.
inline Region star(const LevelFamily& fam, const Cover& c,
                   std::span<const CubePoint> tops = {}) {
  Region r{c.tau(), {}};
  const auto ids = starred_elements(fam, c, tops);
  for (const auto& e : c.elements())
    if (std::find(ids.begin(), ids.end(), e.id) != ids.end())
      r.pieces.push_back(e.piece());
  return r;
}

// Exact containment a subset-of b of the denoted subsets of X.
inline bool region_subset(const Region& a, const Region& b) {
  detail::check_same_tau(a.tau, b.tau);
  const std::size_t n_stable =
      std::max(stable_level(a.pieces), stable_level(b.pieces));
  for (std::size_t n = 0; n <= n_stable; ++n) {
    const auto cover = detail::boxes_at(b.pieces, Level{n});
    for (const auto& box : detail::boxes_at(a.pieces, Level{n}))
      if (!boxes_cover(cover, box)) return false;
  }
  for (std::size_t alpha = 0; alpha < a.tau; ++alpha) {
    const XPoint z{unit_point(alpha, a.tau), Level::top()};
    if (a.contains(z) && !b.contains(z)) return false;
  }
  return true;
}

}  // namespace starweb
