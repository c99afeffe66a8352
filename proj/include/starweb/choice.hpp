#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace starweb {

// Resolves the free choices of the witness construction: which covering
// element, which point of a box, which spare coordinate. The deterministic
// rule always takes the first candidate; the seeded rule draws uniformly.
class ChoiceRule {
 public:
  static ChoiceRule first() { return ChoiceRule{}; }
  static ChoiceRule seeded(std::uint64_t seed) {
    ChoiceRule rule;
    rule.rng_.emplace(seed);
    return rule;
  }

  bool is_random() const noexcept { return rng_.has_value(); }

  // Index in [0, count). count must be positive.
  std::size_t pick(std::size_t count) {
    if (!rng_ || count <= 1) return 0;
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(*rng_);
  }

  bool coin() {
    if (!rng_) return false;
    return std::bernoulli_distribution(0.5)(*rng_);
  }

  std::mt19937_64* engine() noexcept { return rng_ ? &*rng_ : nullptr; }

 private:
  ChoiceRule() = default;
  std::optional<std::mt19937_64> rng_;
};

}  // namespace starweb
