#pragma once

// Points and basic clopen boxes of the finite Cantor cube D^tau.
//
// A point is a bit vector of length tau stored in a 64-bit word, with
// coordinate alpha at bit alpha. Textually a point is written as a bit string
// whose first character is coordinate 0, so unit_point(1, 2) prints as "01".
// Points are ordered lexicographically by that string.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "starweb/choice.hpp"
#include "starweb/errors.hpp"

namespace starweb {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxTau = 64;
// Largest dimension for which anything enumerates D^tau point by point.
inline constexpr std::size_t kOracleMaxTau = 12;

namespace detail {

constexpr Mask full_mask(std::size_t tau) {
  return tau >= 64 ? ~Mask{0} : (Mask{1} << tau) - 1;
}

constexpr Mask bit(std::size_t alpha) { return Mask{1} << alpha; }

inline void check_tau(std::size_t tau) {
  if (tau == 0 || tau > kMaxTau)
    throw DimensionError("dimension " + std::to_string(tau) +
                         " outside [1, 64]");
}

inline void check_same_tau(std::size_t a, std::size_t b) {
  if (a != b)
    throw DimensionError("dimension mismatch: " + std::to_string(a) +
                         " vs " + std::to_string(b));
}

inline std::vector<std::size_t> indices_of(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

inline Mask mask_of(std::span<const std::size_t> indices, std::size_t tau) {
  Mask m = 0;
  for (std::size_t i : indices) {
    if (i >= tau)
      throw IndexError("coordinate " + std::to_string(i) +
                       " out of range for dimension " + std::to_string(tau));
    m |= bit(i);
  }
  return m;
}

// Spreads the bits of `counter` over the coordinates in `slots` so that the
// lowest slot receives the most significant bit. Iterating counter upward
// then visits points in lexicographic order.
inline Mask spread(std::uint64_t counter, std::span<const std::size_t> slots) {
  Mask m = 0;
  const std::size_t k = slots.size();
  for (std::size_t j = 0; j < k; ++j)
    if ((counter >> (k - 1 - j)) & 1U) m |= bit(slots[j]);
  return m;
}

}  // namespace detail

class CubePoint {
 public:
  CubePoint(std::size_t tau, Mask bits) : tau_(tau), bits_(bits) {
    detail::check_tau(tau);
    if (bits & ~detail::full_mask(tau))
      throw IndexError("point has bits beyond dimension " +
                       std::to_string(tau));
  }

  static CubePoint zero(std::size_t tau) { return {tau, 0}; }

  static CubePoint parse(std::string_view text) {
    if (text.empty() || text.size() > kMaxTau)
      throw InvalidArgument("bad point '" + std::string(text) + "'");
    Mask m = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1')
        m |= detail::bit(i);
      else if (text[i] != '0')
        throw InvalidArgument("bad point '" + std::string(text) + "'");
    }
    return {text.size(), m};
  }

  std::size_t tau() const noexcept { return tau_; }
  Mask bits() const noexcept { return bits_; }

  bool operator[](std::size_t alpha) const noexcept {
    return (bits_ >> alpha) & 1U;
  }

  std::size_t ones_count() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  bool is_unit() const noexcept { return ones_count() == 1; }

  CubePoint with(std::size_t alpha, bool value) const {
    if (alpha >= tau_) throw IndexError("coordinate out of range");
    return {tau_, value ? (bits_ | detail::bit(alpha))
                        : (bits_ & ~detail::bit(alpha))};
  }

  std::string to_string() const {
    std::string s(tau_, '0');
    for (std::size_t i = 0; i < tau_; ++i)
      if ((*this)[i]) s[i] = '1';
    return s;
  }

  friend bool operator==(const CubePoint&, const CubePoint&) = default;

  friend std::strong_ordering operator<=>(const CubePoint& a,
                                          const CubePoint& b) {
    if (auto c = a.tau_ <=> b.tau_; c != 0) return c;
    const Mask diff = a.bits_ ^ b.bits_;
    if (!diff) return std::strong_ordering::equal;
    const auto first = std::countr_zero(diff);
    return ((a.bits_ >> first) & 1U) ? std::strong_ordering::greater
                                     : std::strong_ordering::less;
  }

 private:
  std::size_t tau_;
  Mask bits_;
};

// z_alpha: the point with only coordinate alpha equal to 1.
inline CubePoint unit_point(std::size_t alpha, std::size_t tau) {
  detail::check_tau(tau);
  if (alpha >= tau)
    throw IndexError("unit point index " + std::to_string(alpha) +
                     " out of range for dimension " + std::to_string(tau));
  return {tau, detail::bit(alpha)};
}

// Basic clopen box: coordinates in `ones` pinned to 1, in `zeros` pinned to 0.
class Box {
 public:
  Box(std::size_t tau, Mask ones, Mask zeros)
      : tau_(tau), ones_(ones), zeros_(zeros) {
    detail::check_tau(tau);
    const Mask full = detail::full_mask(tau);
    if ((ones | zeros) & ~full)
      throw IndexError("box pins a coordinate beyond dimension " +
                       std::to_string(tau));
    if (ones & zeros)
      throw InvalidArgument("box pins a coordinate to both 0 and 1");
  }

  static Box whole(std::size_t tau) { return {tau, 0, 0}; }

  static Box from_pins(std::size_t tau, std::span<const std::size_t> ones,
                       std::span<const std::size_t> zeros) {
    return {tau, detail::mask_of(ones, tau), detail::mask_of(zeros, tau)};
  }

  // The singleton box {p}.
  static Box singleton(const CubePoint& p) {
    return {p.tau(), p.bits(), ~p.bits() & detail::full_mask(p.tau())};
  }

  std::size_t tau() const noexcept { return tau_; }
  Mask ones() const noexcept { return ones_; }
  Mask zeros() const noexcept { return zeros_; }
  Mask pinned() const noexcept { return ones_ | zeros_; }
  Mask free() const noexcept { return ~pinned() & detail::full_mask(tau_); }
  std::size_t free_count() const noexcept {
    return static_cast<std::size_t>(std::popcount(free()));
  }

  std::vector<std::size_t> ones_list() const {
    return detail::indices_of(ones_);
  }
  std::vector<std::size_t> zeros_list() const {
    return detail::indices_of(zeros_);
  }

  bool contains(const CubePoint& p) const noexcept {
    return p.tau() == tau_ && (p.bits() & ones_) == ones_ &&
           (p.bits() & zeros_) == 0;
  }

  bool intersects(const Box& o) const noexcept {
    return (ones_ & o.zeros_) == 0 && (zeros_ & o.ones_) == 0;
  }

  // Subset as point sets: every pin of `o` is also a pin here.
  bool subset_of(const Box& o) const noexcept {
    return (o.ones_ & ~ones_) == 0 && (o.zeros_ & ~zeros_) == 0;
  }

  Box pin(std::size_t alpha, bool value) const {
    const Mask b = detail::bit(alpha);
    return value ? Box{tau_, ones_ | b, zeros_ & ~b}
                 : Box{tau_, ones_ & ~b, zeros_ | b};
  }

  // Lexicographically smallest member.
  CubePoint min_point() const { return {tau_, ones_}; }

  std::string to_string() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::size_t tau_;
  Mask ones_;
  Mask zeros_;
};

inline std::string join_indices(Mask m) {
  std::string s;
  for (std::size_t i : detail::indices_of(m)) {
    if (!s.empty()) s += ',';
    s += std::to_string(i);
  }
  return s;
}

inline std::string Box::to_string() const {
  return "ones=" + join_indices(ones_) + " zeros=" + join_indices(zeros_);
}

inline bool point_in_box(const CubePoint& p, const Box& b) {
  detail::check_same_tau(p.tau(), b.tau());
  return b.contains(p);
}

// Visits every point of `b` in lexicographic order. Refuses boxes with more
// than kOracleMaxTau free coordinates.
inline void for_each_point_in_box(const Box& b,
                                  const std::function<void(const CubePoint&)>& fn) {
  const auto slots = detail::indices_of(b.free());
  if (slots.size() > kOracleMaxTau)
    throw DimensionError("box too large to enumerate");
  const std::uint64_t n = std::uint64_t{1} << slots.size();
  for (std::uint64_t i = 0; i < n; ++i)
    fn(CubePoint{b.tau(), b.ones() | detail::spread(i, slots)});
}

inline void for_each_point(std::size_t tau,
                           const std::function<void(const CubePoint&)>& fn) {
  for_each_point_in_box(Box::whole(tau), fn);
}

// A point of `b` that is not a unit point. Deterministic rule: switch on
// every unpinned coordinate; if that lands on a unit point, take the
// lexicographically smallest qualifying point of `b`. The seeded rule draws
// the unpinned coordinates at random and falls back the same way.
inline CubePoint pick_off_z_point(const Box& b, ChoiceRule& choice) {
  CubePoint p{b.tau(), b.ones() | b.free()};
  if (auto* rng = choice.engine()) {
    Mask m = b.ones() | ((*rng)() & b.free());
    p = CubePoint{b.tau(), m};
  }
  if (!p.is_unit()) return p;

  // Fallback: lexicographically smallest qualifying point. The scan stops
  // within the first two candidates unless the box is tiny.
  const auto slots = detail::indices_of(b.free());
  if (slots.size() <= kOracleMaxTau) {
    std::optional<CubePoint> found;
    const std::uint64_t n = std::uint64_t{1} << slots.size();
    for (std::uint64_t i = 0; i < n && !found; ++i) {
      CubePoint q{b.tau(), b.ones() | detail::spread(i, slots)};
      if (!q.is_unit()) found = q;
    }
    if (found) return *found;
  } else if (std::popcount(b.ones()) != 1) {
    return b.min_point();
  } else {
    // One coordinate pinned to 1 and many free: the next point in
    // lexicographic order switches on the last free coordinate.
    const auto last = 63 - std::countl_zero(b.free());
    return CubePoint{b.tau(), b.ones() | detail::bit(last)};
  }
  throw BoxInsideZ(b.to_string(),
                   "box {" + b.to_string() + "} lies inside Z");
}

inline CubePoint pick_off_z_point(const Box& b) {
  auto rule = ChoiceRule::first();
  return pick_off_z_point(b, rule);
}

// F_alpha for a box containing z_alpha: the coordinates the box pins to 0.
// The box {f : f(alpha) = 1, f(beta) = 0 for beta in F_alpha} sits inside b.
inline std::vector<std::size_t> canonical_z_neighborhood(const Box& b,
                                                         std::size_t alpha) {
  const CubePoint z = unit_point(alpha, b.tau());
  if (!b.contains(z))
    throw InvalidArgument("z_" + std::to_string(alpha) + " is not in box {" +
                          b.to_string() + "}");
  return b.zeros_list();
}

// The canonical neighbourhood of z_alpha determined by F.
inline Box z_neighborhood(std::size_t alpha, std::span<const std::size_t> f,
                          std::size_t tau) {
  const Mask zeros = detail::mask_of(f, tau);
  if (alpha >= tau) throw IndexError("alpha out of range");
  if (zeros & detail::bit(alpha))
    throw InvalidArgument("F_alpha contains alpha");
  return {tau, detail::bit(alpha), zeros};
}

namespace detail {

// Is `region` inside the union of `boxes`? Branches on the coordinate pinned
// by the most live boxes and gives up early when the live boxes are too small
// in total to fill the region.
inline bool region_covered(std::span<const Box> boxes, const Box& region) {
  std::vector<Box> live;
  long double volume = 0;
  for (const Box& b : boxes) {
    if (!b.intersects(region)) continue;
    if (region.subset_of(b)) return true;
    live.push_back(b);
    volume += std::ldexp(1.0L, std::popcount(b.free() & region.free()));
  }
  if (live.empty()) return false;
  const long double need =
      std::ldexp(1.0L, static_cast<int>(region.free_count()));
  if (volume < need * (1 - 1e-12L)) return false;

  std::array<std::size_t, kMaxTau> pins{};
  const Mask open = region.free();
  for (const Box& b : live)
    for (Mask m = b.pinned() & open; m; m &= m - 1)
      ++pins[static_cast<std::size_t>(std::countr_zero(m))];
  // Every live box pins some free coordinate, otherwise it would contain
  // the region.
  const auto best = static_cast<std::size_t>(
      std::max_element(pins.begin(), pins.end()) - pins.begin());
  return region_covered(live, region.pin(best, false)) &&
         region_covered(live, region.pin(best, true));
}

}  // namespace detail

// Lexicographically smallest point of `region` outside every box in
// `boxes`, or nullopt when the boxes cover the region. Exact for every tau:
// coordinates are fixed in order, each to 0 unless that half is covered.
inline std::optional<CubePoint> smallest_uncovered(std::span<const Box> boxes,
                                                   const Box& region) {
  std::vector<Box> live;
  for (const Box& b : boxes) {
    detail::check_same_tau(b.tau(), region.tau());
    if (b.intersects(region)) live.push_back(b);
  }
  if (detail::region_covered(live, region)) return std::nullopt;

  Box r = region;
  for (Mask free = region.free(); free; free &= free - 1) {
    const auto alpha = static_cast<std::size_t>(std::countr_zero(free));
    const Box zero = r.pin(alpha, false);
    r = detail::region_covered(live, zero) ? r.pin(alpha, true) : zero;
    std::erase_if(live, [&](const Box& b) { return !b.intersects(r); });
  }
  return r.min_point();
}

inline bool boxes_cover(std::span<const Box> boxes, const Box& region) {
  return !smallest_uncovered(boxes, region).has_value();
}

}  // namespace starweb

template <>
struct std::hash<starweb::CubePoint> {
  std::size_t operator()(const starweb::CubePoint& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.bits() * 131 + p.tau());
  }
};
