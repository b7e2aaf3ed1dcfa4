#pragma once

// Set partitions of [n], the lattice join, Moebius functions on the
// partition lattice and classical cumulants by Moebius inversion.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <shared_mutex>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sofree/errors.hpp"
#include "sofree/permutation.hpp"

namespace sofree {

inline constexpr int kDefaultPartitionCap = 12;

/// Partition of [n] into non-empty blocks. Canonical form: elements sorted
/// within blocks, blocks sorted by their minima.
class SetPartition {
 public:
  SetPartition() = default;

  SetPartition(int n, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      detail::require(!blocks[b].empty(), "partition block is empty");
      for (int i : blocks[b]) {
        detail::require(i >= 1 && i <= n, "partition element out of range");
        detail::require(labels[static_cast<std::size_t>(i - 1)] < 0,
                        "partition blocks overlap");
        labels[static_cast<std::size_t>(i - 1)] = static_cast<int>(b);
      }
    }
    for (int l : labels) detail::require(l >= 0, "partition blocks do not cover [n]");
    *this = from_labels(labels);
  }

  /// `labels[i]` is an arbitrary block label of element i+1.
  static SetPartition from_labels(std::span<const int> labels) {
    SetPartition a;
    std::map<int, int> relabel;
    a.block_of_.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] =
          relabel.emplace(labels[i], static_cast<int>(relabel.size()));
      a.block_of_[i] = it->second;
    }
    a.blocks_.assign(relabel.size(), {});
    for (std::size_t i = 0; i < labels.size(); ++i)
      a.blocks_[static_cast<std::size_t>(a.block_of_[i])].push_back(
          static_cast<int>(i) + 1);
    return a;
  }

  static SetPartition discrete(int n) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 0);
    return from_labels(labels);
  }

  static SetPartition one(int n) {
    return from_labels(std::vector<int>(static_cast<std::size_t>(n), 0));
  }

  /// Orbit partition of p (its cycles as blocks).
  static SetPartition from_cycles(const Permutation& p) {
    return SetPartition(p.size(), p.cycles());
  }

  int size() const { return static_cast<int>(block_of_.size()); }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  /// 0-based block index of the 1-based element i.
  int block_of(int i) const { return block_of_[static_cast<std::size_t>(i - 1)]; }
  std::span<const int> labels() const { return block_of_; }

  /// |A| = n - #(A).
  int norm() const { return size() - num_blocks(); }

  /// this <= other in the refinement order.
  bool refines(const SetPartition& other) const {
    detail::require(size() == other.size(), "refines: size mismatch");
    for (const auto& block : blocks_)
      for (int i : block)
        if (other.block_of(i) != other.block_of(block.front())) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      os << (b ? "," : "") << '{';
      for (std::size_t k = 0; k < blocks_[b].size(); ++k)
        os << (k ? "," : "") << blocks_[b][k];
      os << '}';
    }
    os << '}';
    return os.str();
  }

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.block_of_ == b.block_of_;
  }
  friend auto operator<=>(const SetPartition& a, const SetPartition& b) {
    return a.block_of_ <=> b.block_of_;
  }

 private:
  std::vector<int> block_of_;  // canonical: labels in order of first appearance
  std::vector<std::vector<int>> blocks_;
};

/// AugmentedNorm |(A, p)| = 2|A| - |p| for a p-invariant A.
struct AugmentedNorm {
  int value = 0;
};

/// Least upper bound in the partition lattice.
inline SetPartition join(const SetPartition& a, const SetPartition& b) {
  detail::require(a.size() == b.size(), "join: size mismatch");
  const int n = a.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto* part : {&a, &b})
    for (const auto& block : part->blocks())
      for (int i : block) {
        const int r1 = find(block.front() - 1);
        const int r2 = find(i - 1);
        if (r1 != r2) parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
      }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = find(i);
  return SetPartition::from_labels(labels);
}

/// True iff p maps every block of A onto itself.
inline bool is_pi_invariant(const SetPartition& a, const Permutation& p) {
  detail::require(a.size() == p.size(), "is_pi_invariant: size mismatch");
  for (int i = 1; i <= p.size(); ++i)
    if (a.block_of(i) != a.block_of(p(i))) return false;
  return true;
}

inline AugmentedNorm augmented_norm(const SetPartition& a, const Permutation& p) {
  detail::require(is_pi_invariant(a, p), "augmented_norm: A is not p-invariant");
  return {2 * a.norm() - p.length()};
}

/// moeb(C, 1_n) = (-1)^{k-1} (k-1)! with k = #(C).
inline std::int64_t mobius_to_top(const SetPartition& c) {
  const int k = c.num_blocks();
  std::int64_t factorial = 1;
  for (int i = 2; i < k; ++i) factorial *= i;
  return (k % 2 == 1) ? factorial : -factorial;
}

/// Visits all set partitions of [n] as restricted growth strings.
template <class F>
void for_each_partition(int n, F&& visit, int cap = kDefaultPartitionCap) {
  detail::require_cap(n <= cap, "enumerate_partitions: n=" + std::to_string(n) +
                                    " exceeds cap " + std::to_string(cap));
  if (n <= 0) return;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(SetPartition::from_labels(labels));
    int i = n - 1;
    while (i > 0 && labels[static_cast<std::size_t>(i)] >
                        prefix_max[static_cast<std::size_t>(i - 1)])
      --i;
    if (i == 0) return;
    ++labels[static_cast<std::size_t>(i)];
    for (int j = i; j < n; ++j) {
      if (j > i) labels[static_cast<std::size_t>(j)] = 0;
      prefix_max[static_cast<std::size_t>(j)] =
          std::max(prefix_max[static_cast<std::size_t>(j - 1)],
                   labels[static_cast<std::size_t>(j)]);
    }
  }
}

inline std::vector<SetPartition> enumerate_partitions(int n, int cap = kDefaultPartitionCap) {
  std::vector<SetPartition> out;
  for_each_partition(n, [&](const SetPartition& a) { out.push_back(a); }, cap);
  return out;
}

/// Visits every p-invariant partition of [n], generated as partitions of the
/// cycle set of p.
template <class F>
void for_each_pi_invariant(const Permutation& p, F&& visit,
                           int cap = kDefaultPartitionCap) {
  const auto cycles = p.cycles();
  const int k = static_cast<int>(cycles.size());
  detail::require_cap(k <= cap, "enumerate_pi_invariant: #cycles exceeds cap");
  std::vector<int> labels(static_cast<std::size_t>(p.size()));
  for_each_partition(
      k,
      [&](const SetPartition& grouping) {
        for (int c = 0; c < k; ++c)
          for (int i : cycles[static_cast<std::size_t>(c)])
            labels[static_cast<std::size_t>(i - 1)] = grouping.block_of(c + 1);
        visit(SetPartition::from_labels(labels));
      },
      cap);
}

inline std::vector<SetPartition> enumerate_pi_invariant(const Permutation& p,
                                                        int cap = kDefaultPartitionCap) {
  std::vector<SetPartition> out;
  for_each_pi_invariant(p, [&](const SetPartition& a) { out.push_back(a); }, cap);
  return out;
}

/// Visits all D with lower <= D <= upper, generated block-wise: for each block
/// of `upper`, every grouping of the `lower` blocks it contains.
template <class F>
void for_each_in_interval(const SetPartition& lower, const SetPartition& upper,
                          F&& visit) {
  detail::require(lower.refines(upper), "interval: lower does not refine upper");
  // Lower blocks contained in each upper block.
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(upper.num_blocks()));
  for (int b = 0; b < lower.num_blocks(); ++b)
    groups[static_cast<std::size_t>(
               upper.block_of(lower.blocks()[static_cast<std::size_t>(b)].front()))]
        .push_back(b);

  std::vector<std::vector<SetPartition>> choices;
  for (const auto& g : groups)
    choices.push_back(enumerate_partitions(static_cast<int>(g.size()), 64));

  std::vector<int> lower_label(static_cast<std::size_t>(lower.num_blocks()));
  std::vector<std::size_t> index(choices.size(), 0);
  std::vector<int> labels(static_cast<std::size_t>(lower.size()));
  while (true) {
    int next_label = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& grouping = choices[g][index[g]];
      for (std::size_t j = 0; j < groups[g].size(); ++j)
        lower_label[static_cast<std::size_t>(groups[g][j])] =
            next_label + grouping.block_of(static_cast<int>(j) + 1);
      next_label += grouping.num_blocks();
    }
    for (int i = 1; i <= lower.size(); ++i)
      labels[static_cast<std::size_t>(i - 1)] =
          lower_label[static_cast<std::size_t>(lower.block_of(i))];
    visit(SetPartition::from_labels(labels));

    std::size_t g = 0;
    while (g < index.size() && ++index[g] == choices[g].size()) index[g++] = 0;
    if (g == index.size()) return;
  }
}

namespace detail {

// Moebius value of an interval [C, A] depends only on the multiset of
// "number of C-blocks inside each A-block". Memoized on that profile.
class MobiusProfileCache {
 public:
  std::int64_t get(std::vector<int> profile) {
    std::erase(profile, 1);
    std::sort(profile.begin(), profile.end());
    if (profile.empty()) return 1;
    {
      std::shared_lock lock(mutex_);
      if (auto it = memo_.find(profile); it != memo_.end()) return it->second;
    }
    // Defining recursion: mu(C, A) = -sum_{C <= D < A} mu(C, D).
    int total = 0;
    for (int k : profile) total += k;
    std::vector<std::vector<int>> blocks;
    std::vector<int> upper_labels;
    int element = 1;
    for (std::size_t b = 0; b < profile.size(); ++b) {
      for (int j = 0; j < profile[b]; ++j) {
        blocks.push_back({element++});
        upper_labels.push_back(static_cast<int>(b));
      }
    }
    const SetPartition lower = SetPartition::discrete(total);
    const SetPartition upper = SetPartition::from_labels(upper_labels);
    std::int64_t sum = 0;
    for_each_in_interval(lower, upper, [&](const SetPartition& d) {
      if (d == upper) return;
      std::vector<int> sub;
      for (const auto& block : d.blocks()) sub.push_back(static_cast<int>(block.size()));
      sum += get(sub);
    });
    const std::int64_t value = -sum;
    std::unique_lock lock(mutex_);
    memo_.emplace(std::move(profile), value);
    return value;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::vector<int>, std::int64_t> memo_;
};

inline MobiusProfileCache& mobius_cache() {
  static MobiusProfileCache cache;
  return cache;
}

}  // namespace detail

/// Moebius function of the interval [C, A] in the partition lattice.
inline std::int64_t mobius_interval(const SetPartition& c, const SetPartition& a) {
  detail::require(c.size() == a.size(), "mobius_interval: size mismatch");
  detail::require(c.refines(a), "mobius_interval: C is not below A");
  std::vector<int> profile(static_cast<std::size_t>(a.num_blocks()), 0);
  for (const auto& block : c.blocks()) ++profile[static_cast<std::size_t>(a.block_of(block.front()))];
  return detail::mobius_cache().get(std::move(profile));
}

/// Classical joint cumulant k_r(a_1, ..., a_r) by Moebius inversion over P(r):
///
///     k_r = sum_{C in P(r)} moeb(C, 1_r) prod_{V in C} E(prod_{j in V} a_j)
///
/// `moment` receives a block as a sorted list of 0-based observable indices.
template <class T, class MomentOracle>
T cumulants_from_moments(MomentOracle&& moment, int r, int cap = 6) {
  detail::require(r >= 1, "cumulant order must be positive");
  detail::require_cap(r <= cap, "cumulant order exceeds cap");
  T total(0);
  for_each_partition(r, [&](const SetPartition& c) {
    T term(static_cast<long>(mobius_to_top(c)));
    for (const auto& block : c.blocks()) {
      std::vector<int> indices;
      for (int i : block) indices.push_back(i - 1);
      term *= moment(indices);
    }
    total += term;
  });
  return total;
}

/// Random p-invariant partition: each cycle of p joins a uniformly chosen
/// label.
inline SetPartition random_pi_invariant(const Permutation& p, std::mt19937_64& rng) {
  const auto cycles = p.cycles();
  std::uniform_int_distribution<int> pick(0, static_cast<int>(cycles.size()) - 1);
  std::vector<int> labels(static_cast<std::size_t>(p.size()));
  for (const auto& c : cycles) {
    const int label = pick(rng);
    for (int i : c) labels[static_cast<std::size_t>(i - 1)] = label;
  }
  return SetPartition::from_labels(labels);
}

}  // namespace sofree
