#pragma once

// Set mappings on a finite ground set {0, ..., n-1} and their decomposition
// into free subsets.
//
// A set mapping assigns to each element s a finite image f(s) not containing
// s. A subset T is f-free when f(t) and T are disjoint for every t in T.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "starweb/errors.hpp"

namespace starweb {

class SetMapping {
 public:
  // Images are normalised to sorted, duplicate-free lists.
  explicit SetMapping(std::vector<std::vector<std::size_t>> images)
      : images_(std::move(images)) {
    const std::size_t n = images_.size();
    for (std::size_t s = 0; s < n; ++s) {
      auto& img = images_[s];
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      for (std::size_t t : img) {
        if (t >= n)
          throw IndexError("image of " + std::to_string(s) + " contains " +
                           std::to_string(t) + " outside the ground set");
        if (t == s)
          throw InvalidArgument("element " + std::to_string(s) +
                                " belongs to its own image");
      }
    }
  }

  std::size_t size() const noexcept { return images_.size(); }

  std::span<const std::size_t> image(std::size_t s) const {
    if (s >= images_.size()) throw IndexError("element outside ground set");
    return images_[s];
  }

  friend bool operator==(const SetMapping&, const SetMapping&) = default;

 private:
  std::vector<std::vector<std::size_t>> images_;
};

struct FreeDecomposition {
  std::vector<std::vector<std::size_t>> classes;

  std::size_t class_count() const noexcept { return classes.size(); }
};

inline bool is_free(std::span<const std::size_t> subset, const SetMapping& f) {
  std::vector<char> in(f.size(), 0);
  for (std::size_t t : subset) {
    if (t >= f.size()) throw IndexError("element outside ground set");
    in[t] = 1;
  }
  for (std::size_t t : subset)
    for (std::size_t u : f.image(t))
      if (in[u]) return false;
  return true;
}

// Undirected conflict graph: s ~ t iff t in f(s) or s in f(t).
inline std::vector<std::vector<std::size_t>> conflict_graph(
    const SetMapping& f) {
  std::vector<std::vector<std::size_t>> adj(f.size());
  for (std::size_t s = 0; s < f.size(); ++s)
    for (std::size_t t : f.image(s)) {
      adj[s].push_back(t);
      adj[t].push_back(s);
    }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

inline std::size_t max_conflict_degree(const SetMapping& f) {
  std::size_t d = 0;
  for (const auto& a : conflict_graph(f)) d = std::max(d, a.size());
  return d;
}

// Greedy colouring of the conflict graph in ascending element order; each
// element joins the smallest class that none of its neighbours is in yet.
// Classes are disjoint, free, and at most (max degree + 1) in number.
inline FreeDecomposition free_decompose(const SetMapping& f) {
  const auto adj = conflict_graph(f);
  constexpr std::size_t kUncoloured = static_cast<std::size_t>(-1);
  std::vector<std::size_t> colour(f.size(), kUncoloured);
  FreeDecomposition out;
  std::vector<char> taken;
  for (std::size_t s = 0; s < f.size(); ++s) {
    taken.assign(adj[s].size() + 1, 0);
    for (std::size_t t : adj[s])
      if (colour[t] != kUncoloured && colour[t] < taken.size())
        taken[colour[t]] = 1;
    std::size_t c = 0;
    while (taken[c]) ++c;
    colour[s] = c;
    if (c == out.classes.size()) out.classes.emplace_back();
    out.classes[c].push_back(s);
  }
  return out;
}

}  // namespace starweb
