#pragma once

// Permutations of [n] = {1, ..., n}.
//
// Externally everything is 1-based (one-line form and cycle notation), the
// storage is 0-based. Composition is fixed once for the whole library:
//
//     compose(p, q)(i) == p(q(i))
//
// so gamma * inverse(pi) means "apply pi^{-1} first, then gamma".

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sofree/errors.hpp"

namespace sofree {

class Permutation {
 public:
  Permutation() = default;

  /// One-line form, 1-based: `images[i-1] == p(i)`.
  explicit Permutation(const std::vector<int>& images) : map_(images.size()) {
    const int n = static_cast<int>(images.size());
    std::vector<char> seen(images.size(), 0);
    for (int i = 0; i < n; ++i) {
      const int target = images[static_cast<std::size_t>(i)];
      detail::require(target >= 1 && target <= n,
                      "permutation image out of range");
      detail::require(!seen[static_cast<std::size_t>(target - 1)],
                      "permutation images are not distinct");
      seen[static_cast<std::size_t>(target - 1)] = 1;
      map_[static_cast<std::size_t>(i)] = target - 1;
    }
  }

  static Permutation identity(int n) {
    detail::require(n >= 0, "negative permutation size");
    Permutation p;
    p.map_.resize(static_cast<std::size_t>(n));
    std::iota(p.map_.begin(), p.map_.end(), 0);
    return p;
  }

  /// Builds a permutation of [n] from 1-based cycles; unmentioned points are
  /// fixed.
  static Permutation from_cycles(int n,
                                 const std::vector<std::vector<int>>& cycles) {
    Permutation p = identity(n);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (const auto& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int from = cycle[k];
        const int to = cycle[(k + 1) % cycle.size()];
        detail::require(from >= 1 && from <= n, "cycle entry out of range");
        detail::require(!used[static_cast<std::size_t>(from - 1)],
                        "cycles are not disjoint");
        used[static_cast<std::size_t>(from - 1)] = 1;
        p.map_[static_cast<std::size_t>(from - 1)] = to - 1;
      }
    }
    return p;
  }

  /// From a 0-based image array; the caller guarantees bijectivity.
  static Permutation from_zero_based(std::vector<int> images) {
    Permutation p;
    p.map_ = std::move(images);
    return p;
  }

  static Permutation random(int n, std::mt19937_64& rng) {
    Permutation p = identity(n);
    std::shuffle(p.map_.begin(), p.map_.end(), rng);
    return p;
  }

  int size() const { return static_cast<int>(map_.size()); }

  /// 1-based evaluation.
  int operator()(int i) const { return map_[static_cast<std::size_t>(i - 1)] + 1; }

  /// 0-based evaluation.
  int at0(int i) const { return map_[static_cast<std::size_t>(i)]; }
  std::span<const int> zero_based() const { return map_; }

  std::vector<int> one_line() const {
    std::vector<int> out(map_.size());
    std::transform(map_.begin(), map_.end(), out.begin(),
                   [](int v) { return v + 1; });
    return out;
  }

  Permutation inverse() const {
    Permutation inv;
    inv.map_.resize(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i)
      inv.map_[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
    return inv;
  }

  /// Cycles in canonical order: each starts at its minimum, cycles sorted by
  /// their minima. Fixed points are included as 1-cycles.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(map_.size(), 0);
    for (std::size_t start = 0; start < map_.size(); ++start) {
      if (seen[start]) continue;
      std::vector<int> cycle;
      for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(map_[i])) {
        seen[i] = 1;
        cycle.push_back(static_cast<int>(i) + 1);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  /// Cycles of length >= 2 only.
  std::vector<std::vector<int>> nontrivial_cycles() const {
    auto all = cycles();
    std::erase_if(all, [](const auto& c) { return c.size() < 2; });
    return all;
  }

  int num_cycles() const {
    int count = 0;
    std::vector<char> seen(map_.size(), 0);
    for (std::size_t start = 0; start < map_.size(); ++start) {
      if (seen[start]) continue;
      ++count;
      for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(map_[i]))
        seen[i] = 1;
    }
    return count;
  }

  /// |p|: minimal number of transpositions, computed as n - #(p).
  int length() const { return size() - num_cycles(); }

  /// Cycle lengths in non-increasing order (an integer partition of n).
  std::vector<int> cycle_type() const {
    std::vector<int> type;
    for (const auto& c : cycles()) type.push_back(static_cast<int>(c.size()));
    std::sort(type.begin(), type.end(), std::greater<>());
    return type;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] != static_cast<int>(i)) return false;
    return true;
  }

  /// Cycle notation without fixed points: "(1 2 3)(4 5)"; identity is "()".
  std::string to_string() const {
    const auto cs = nontrivial_cycles();
    if (cs.empty()) return "()";
    std::ostringstream os;
    for (const auto& c : cs) {
      os << '(';
      for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
      os << ')';
    }
    return os.str();
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> map_;
};

/// (p o q)(i) = p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  detail::require(p.size() == q.size(), "compose: size mismatch");
  std::vector<int> out(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(i)] = p.at0(q.at0(i));
  return Permutation::from_zero_based(std::move(out));
}

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

/// gamma_{m_1,...,m_k}: full cycles on consecutive intervals.
inline Permutation gamma(std::span<const int> block_lengths) {
  detail::require(!block_lengths.empty(), "gamma: empty block list");
  int n = 0;
  for (int m : block_lengths) {
    detail::require(m >= 1, "gamma: block lengths must be positive");
    n += m;
  }
  std::vector<int> out(static_cast<std::size_t>(n));
  int start = 0;
  for (int m : block_lengths) {
    for (int k = 0; k < m; ++k)
      out[static_cast<std::size_t>(start + k)] = start + (k + 1) % m;
    start += m;
  }
  return Permutation::from_zero_based(std::move(out));
}

inline Permutation gamma(std::initializer_list<int> block_lengths) {
  return gamma(std::span<const int>(block_lengths.begin(), block_lengths.size()));
}

/// p1 x p2: p1 on [1, m], p2 shifted onto [m+1, m+n].
inline Permutation direct_sum(const Permutation& p1, const Permutation& p2) {
  std::vector<int> out(p1.zero_based().begin(), p1.zero_based().end());
  for (int v : p2.zero_based()) out.push_back(v + p1.size());
  return Permutation::from_zero_based(std::move(out));
}

/// Restriction of p to an invariant subset (1-based, any order), relabelled
/// order-preservingly onto [1, |subset|].
inline Permutation restrict_to(const Permutation& p, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  std::vector<int> position(static_cast<std::size_t>(p.size()), -1);
  for (std::size_t k = 0; k < subset.size(); ++k)
    position[static_cast<std::size_t>(subset[k] - 1)] = static_cast<int>(k);
  std::vector<int> out(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const int image = position[static_cast<std::size_t>(p.at0(subset[k] - 1))];
    detail::require(image >= 0, "restrict_to: subset is not invariant");
    out[k] = image;
  }
  return Permutation::from_zero_based(std::move(out));
}

/// True iff the group generated by p and g acts transitively on [n].
inline bool is_connected(const Permutation& p, const Permutation& g) {
  detail::require(p.size() == g.size(), "is_connected: size mismatch");
  const int n = p.size();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j : {p.at0(i), g.at0(i)}) {
      if (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  // Orbits of a finite group generated by bijections are closed under the
  // forward maps alone.
  return reached == n;
}

/// All of S_n in lexicographic one-line order.
template <class F>
void for_each_permutation(int n, F&& visit) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  do {
    visit(Permutation::from_zero_based(images));
  } while (std::next_permutation(images.begin(), images.end()));
}

/// Parses cycle notation such as "(1 2 3)(4 5)" or "(1,2)"; "()" is the
/// identity.
inline Permutation parse_cycles(int n, const std::string& text) {
  std::vector<std::vector<int>> cycles;
  std::vector<int>* current = nullptr;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '(') {
      detail::require(current == nullptr, "nested '(' in cycle notation");
      cycles.emplace_back();
      current = &cycles.back();
      ++i;
    } else if (c == ')') {
      detail::require(current != nullptr, "unbalanced ')' in cycle notation");
      current = nullptr;
      ++i;
    } else if (c == ' ' || c == ',') {
      ++i;
    } else if (c >= '0' && c <= '9') {
      detail::require(current != nullptr, "number outside a cycle");
      int v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9')
        v = v * 10 + (text[i++] - '0');
      current->push_back(v);
    } else {
      throw InvalidArgument("unexpected character in cycle notation");
    }
  }
  detail::require(current == nullptr, "unterminated cycle");
  return Permutation::from_cycles(n, cycles);
}

}  // namespace sofree

template <>
struct std::hash<sofree::Permutation> {
  std::size_t operator()(const sofree::Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.zero_based()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};
