#pragma once

// The space X = (D^tau x (omega+1)) \ ((D^tau \ Z) x {omega}), where Z is the
// set of unit points. Points are (p, n) for a finite level n, plus the top
// points (z, TOP) for z in Z.
//
// Countable subsets of D^tau x omega are represented by LevelFamily: an
// explicit finite slice for each level below a horizon H and one finite
// slice repeated at every level from H on.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "starweb/cube.hpp"
#include "starweb/errors.hpp"

namespace starweb {

class Level {
 public:
  constexpr explicit Level(std::size_t n) : value_(n) {}
  static constexpr Level top() { return Level{kTop}; }

  constexpr bool is_top() const noexcept { return value_ == kTop; }
  constexpr std::size_t value() const noexcept { return value_; }

  std::string to_string() const {
    return is_top() ? std::string("TOP") : std::to_string(value_);
  }

  friend constexpr auto operator<=>(Level, Level) = default;

 private:
  static constexpr std::size_t kTop = static_cast<std::size_t>(-1);
  std::size_t value_;
};

struct XPoint {
  XPoint(CubePoint b, Level l) : base(b), level(l) {
    if (level.is_top() && !base.is_unit())
      throw InvalidArgument("(" + base.to_string() +
                            ",TOP) is not a point of X");
  }

  CubePoint base;
  Level level;

  std::string to_string() const {
    return "(" + base.to_string() + "," + level.to_string() + ")";
  }

  friend bool operator==(const XPoint&, const XPoint&) = default;
};

// Sorted, duplicate-free set of points of one dimension.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<CubePoint> pts) : pts_(pts) { normalise(); }
  explicit PointSet(std::vector<CubePoint> pts) : pts_(std::move(pts)) {
    normalise();
  }

  void insert(const CubePoint& p) {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) pts_.insert(it, p);
  }

  bool contains(const CubePoint& p) const {
    return std::binary_search(pts_.begin(), pts_.end(), p);
  }

  std::size_t size() const noexcept { return pts_.size(); }
  bool empty() const noexcept { return pts_.empty(); }
  auto begin() const noexcept { return pts_.begin(); }
  auto end() const noexcept { return pts_.end(); }
  const std::vector<CubePoint>& points() const noexcept { return pts_; }

  friend PointSet operator|(const PointSet& a, const PointSet& b) {
    std::vector<CubePoint> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    PointSet s;
    s.pts_ = std::move(out);
    return s;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  void normalise() {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  std::vector<CubePoint> pts_;
};

class LevelFamily {
 public:
  explicit LevelFamily(std::size_t tau) : tau_(tau) { detail::check_tau(tau); }

  LevelFamily(std::size_t tau, std::vector<PointSet> prefix, PointSet tail)
      : tau_(tau), prefix_(std::move(prefix)), tail_(std::move(tail)) {
    detail::check_tau(tau);
    for (const auto& s : prefix_) check(s);
    check(tail_);
  }

  static LevelFamily constant(std::size_t tau, PointSet tail) {
    return {tau, {}, std::move(tail)};
  }

  std::size_t tau() const noexcept { return tau_; }
  std::size_t horizon() const noexcept { return prefix_.size(); }
  const std::vector<PointSet>& prefix() const noexcept { return prefix_; }
  const PointSet& tail() const noexcept { return tail_; }

  // The slice at level n.
  const PointSet& at(std::size_t n) const {
    return n < prefix_.size() ? prefix_[n] : tail_;
  }

  bool contains(const CubePoint& p, std::size_t n) const {
    return at(n).contains(p);
  }

  bool empty() const {
    return tail_.empty() &&
           std::all_of(prefix_.begin(), prefix_.end(),
                       [](const PointSet& s) { return s.empty(); });
  }

  // Every base point that occurs at some level.
  PointSet support() const {
    PointSet s = tail_;
    for (const auto& level : prefix_) s = s | level;
    return s;
  }

  // Same denoted set with trailing prefix levels equal to the tail dropped.
  LevelFamily normalized() const {
    LevelFamily out = *this;
    while (!out.prefix_.empty() && out.prefix_.back() == out.tail_)
      out.prefix_.pop_back();
    return out;
  }

  friend bool operator==(const LevelFamily&, const LevelFamily&) = default;

 private:
  void check(const PointSet& s) const {
    for (const auto& p : s) detail::check_same_tau(p.tau(), tau_);
  }

  std::size_t tau_;
  std::vector<PointSet> prefix_;
  PointSet tail_;
};

// Equality of the denoted subsets of D^tau x omega.
inline bool same_set(const LevelFamily& a, const LevelFamily& b) {
  if (a.tau() != b.tau()) return false;
  const std::size_t h = std::max(a.horizon(), b.horizon());
  for (std::size_t n = 0; n <= h; ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

// {n : (p, n) in fam}: an explicit finite part, plus "every n >= from" when
// p lies in the tail.
struct Fiber {
  std::vector<std::size_t> levels;
  std::optional<std::size_t> cofinite_from;

  bool is_finite() const noexcept { return !cofinite_from.has_value(); }

  bool contains(std::size_t n) const {
    if (cofinite_from && n >= *cofinite_from) return true;
    return std::binary_search(levels.begin(), levels.end(), n);
  }

  // Does the fiber meet [lo, hi] (hi = nullopt meaning unbounded)?
  bool meets(std::size_t lo, std::optional<std::size_t> hi) const {
    if (cofinite_from && (!hi || *hi >= *cofinite_from)) return true;
    auto it = std::lower_bound(levels.begin(), levels.end(), lo);
    return it != levels.end() && (!hi || *it <= *hi);
  }

  friend bool operator==(const Fiber&, const Fiber&) = default;
};

inline Fiber fiber(const LevelFamily& fam, const CubePoint& p) {
  detail::check_same_tau(fam.tau(), p.tau());
  Fiber f;
  for (std::size_t n = 0; n < fam.horizon(); ++n)
    if (fam.prefix()[n].contains(p)) f.levels.push_back(n);
  if (fam.tail().contains(p)) f.cofinite_from = fam.horizon();
  return f;
}

struct ClosedDiscreteResult {
  bool closed_discrete = true;
  // A unit point z whose top point (z, TOP) is an accumulation point.
  std::optional<CubePoint> violating;

  explicit operator bool() const noexcept { return closed_discrete; }
};

// Level slices are finite and each level is clopen, so the only possible
// accumulation points are top points; (z, TOP) accumulates iff the fiber over
// z is infinite.
inline ClosedDiscreteResult is_closed_discrete(const LevelFamily& fam) {
  for (std::size_t alpha = 0; alpha < fam.tau(); ++alpha) {
    const CubePoint z = unit_point(alpha, fam.tau());
    if (!fiber(fam, z).is_finite()) return {false, z};
  }
  return {};
}

// Union with horizons aligned to the larger one.
inline LevelFamily family_union(const LevelFamily& a, const LevelFamily& b) {
  detail::check_same_tau(a.tau(), b.tau());
  const std::size_t h = std::max(a.horizon(), b.horizon());
  std::vector<PointSet> prefix;
  prefix.reserve(h);
  for (std::size_t n = 0; n < h; ++n) prefix.push_back(a.at(n) | b.at(n));
  return {a.tau(), std::move(prefix), a.tail() | b.tail()};
}

// The top-level copy of Z as a list of points of X.
inline std::vector<XPoint> top_points(std::size_t tau) {
  std::vector<XPoint> out;
  for (std::size_t alpha = 0; alpha < tau; ++alpha)
    out.emplace_back(unit_point(alpha, tau), Level::top());
  return out;
}

}  // namespace starweb
