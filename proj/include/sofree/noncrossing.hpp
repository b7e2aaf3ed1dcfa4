#pragma once

// Non-crossing and annular non-crossing permutations, epsilon-alternating
// permutations S^(eps), the (alpha, beta) parametrisation and pi-tilde.

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sofree/errors.hpp"
#include "sofree/partition.hpp"
#include "sofree/permutation.hpp"

namespace sofree {

inline constexpr int kDefaultNcCap = 10;
inline constexpr int kDefaultEpsilonCap = 5;

/// Signs eps_1, ..., eps_k in {+1, -1}; +1 marks a U factor, -1 a U*.
class EpsilonVector {
 public:
  EpsilonVector() = default;
  explicit EpsilonVector(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_) detail::require(s == 1 || s == -1, "epsilon entries must be +1 or -1");
  }

  int size() const { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[static_cast<std::size_t>(i - 1)]; }  // 1-based
  const std::vector<int>& signs() const { return signs_; }

  bool balanced() const { return std::accumulate(signs_.begin(), signs_.end(), 0) == 0; }

  /// 1-based positions p_1 < ... of the +1 entries.
  std::vector<int> positives() const { return positions(1); }
  /// 1-based positions q_1 < ... of the -1 entries.
  std::vector<int> negatives() const { return positions(-1); }

  /// Restriction to the 1-based interval [first, last].
  EpsilonVector slice(int first, int last) const {
    return EpsilonVector(std::vector<int>(signs_.begin() + (first - 1), signs_.begin() + last));
  }

  friend bool operator==(const EpsilonVector&, const EpsilonVector&) = default;

 private:
  std::vector<int> positions(int sign) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < signs_.size(); ++i)
      if (signs_[i] == sign) out.push_back(static_cast<int>(i) + 1);
    return out;
  }
  std::vector<int> signs_;
};

/// #(p) + #(gamma_n p^{-1}) == n + 1.
inline bool is_noncrossing(const Permutation& p) {
  const int n = p.size();
  if (n == 0) return true;
  return p.num_cycles() + compose(gamma({n}), p.inverse()).num_cycles() == n + 1;
}

/// Kreweras complement p^{-1} gamma_n.
inline Permutation kreweras(const Permutation& p, bool require_noncrossing = true) {
  if (require_noncrossing)
    detail::require(is_noncrossing(p), "kreweras: permutation is not non-crossing");
  return compose(p.inverse(), gamma({p.size()}));
}

/// Connected w.r.t. gamma_{m,n} and |p| + |gamma_{m,n} p^{-1}| == m + n.
inline bool is_annular_noncrossing(const Permutation& p, int m, int n) {
  detail::require(m >= 1 && n >= 1, "annular: m and n must be positive");
  detail::require(p.size() == m + n, "annular: permutation size differs from m + n");
  const Permutation g = gamma({m, n});
  if (!is_connected(p, g)) return false;
  return p.length() + compose(g, p.inverse()).length() == m + n;
}

/// NC(n) via non-crossing set partitions, each block read as an increasing
/// cycle. Sorted by one-line form.
inline std::vector<Permutation> enumerate_nc(int n, int cap = kDefaultNcCap) {
  detail::require_cap(n <= cap, "enumerate_nc: n exceeds cap");
  std::vector<Permutation> out;
  if (n <= 0) return out;
  for_each_partition(
      n,
      [&](const SetPartition& a) {
        // Crossing: a < b < c < d with a,c in one block and b,d in another.
        const auto& blocks = a.blocks();
        for (std::size_t x = 0; x < blocks.size(); ++x)
          for (std::size_t y = 0; y < blocks.size(); ++y) {
            if (x == y) continue;
            for (std::size_t i = 0; i + 1 < blocks[x].size(); ++i) {
              const int lo = blocks[x][i];
              const int hi = blocks[x][i + 1];
              bool inside = false;
              bool outside = false;
              for (int v : blocks[y]) (v > lo && v < hi ? inside : outside) = true;
              if (inside && outside) return;
            }
          }
        out.push_back(Permutation::from_cycles(n, blocks));
      },
      cap);
  std::sort(out.begin(), out.end());
  return out;
}

/// S_NC(m, n) by filtering S_{m+n}. Sorted by one-line form.
inline std::vector<Permutation> enumerate_snc(int m, int n, int cap = kDefaultNcCap) {
  detail::require_cap(m + n <= cap, "enumerate_snc: m + n exceeds cap");
  std::vector<Permutation> out;
  for_each_permutation(m + n, [&](const Permutation& p) {
    if (is_annular_noncrossing(p, m, n)) out.push_back(p);
  });
  return out;
}

/// pi_{alpha,beta}: pi(p_{alpha(k)}) = q_k and pi(q_k) = p_{beta(k)}.
inline Permutation from_alpha_beta(const Permutation& alpha, const Permutation& beta,
                                   const EpsilonVector& eps) {
  detail::require(eps.balanced(), "from_alpha_beta: epsilon is not balanced");
  const auto p = eps.positives();
  const auto q = eps.negatives();
  const int l = static_cast<int>(p.size());
  detail::require(alpha.size() == l && beta.size() == l, "from_alpha_beta: alpha, beta must lie in S_l");
  std::vector<int> images(static_cast<std::size_t>(2 * l));
  for (int k = 1; k <= l; ++k) {
    images[static_cast<std::size_t>(p[static_cast<std::size_t>(alpha(k) - 1)] - 1)] =
        q[static_cast<std::size_t>(k - 1)] - 1;
    images[static_cast<std::size_t>(q[static_cast<std::size_t>(k - 1)] - 1)] =
        p[static_cast<std::size_t>(beta(k) - 1)] - 1;
  }
  return Permutation::from_zero_based(std::move(images));
}

/// True iff pi maps the +1 positions onto the -1 positions and vice versa.
inline bool in_s_epsilon(const Permutation& pi, const EpsilonVector& eps) {
  if (pi.size() != eps.size() || !eps.balanced()) return false;
  for (int i = 1; i <= pi.size(); ++i)
    if (eps[pi(i)] == eps[i]) return false;
  return true;
}

/// Inverse of from_alpha_beta.
inline std::pair<Permutation, Permutation> to_alpha_beta(const Permutation& pi,
                                                         const EpsilonVector& eps) {
  detail::require(in_s_epsilon(pi, eps), "to_alpha_beta: permutation is not in S^(eps)");
  const auto p = eps.positives();
  const auto q = eps.negatives();
  const int l = static_cast<int>(p.size());
  std::vector<int> index_of(static_cast<std::size_t>(pi.size()) + 1, 0);
  for (int k = 1; k <= l; ++k) {
    index_of[static_cast<std::size_t>(p[static_cast<std::size_t>(k - 1)])] = k;
    index_of[static_cast<std::size_t>(q[static_cast<std::size_t>(k - 1)])] = k;
  }
  std::vector<int> alpha(static_cast<std::size_t>(l)), beta(static_cast<std::size_t>(l));
  for (int j = 1; j <= l; ++j) {
    // pi(p_j) = q_k  =>  alpha(k) = j
    const int k = index_of[static_cast<std::size_t>(pi(p[static_cast<std::size_t>(j - 1)]))];
    alpha[static_cast<std::size_t>(k - 1)] = j;
  }
  for (int k = 1; k <= l; ++k)
    beta[static_cast<std::size_t>(k - 1)] =
        index_of[static_cast<std::size_t>(pi(q[static_cast<std::size_t>(k - 1)]))];
  return {Permutation(alpha), Permutation(beta)};
}

/// pi-tilde in S_l: pi^2(p_k) = p_{tilde(k)}.
inline Permutation tilde(const Permutation& pi, const EpsilonVector& eps) {
  detail::require(in_s_epsilon(pi, eps), "tilde: permutation is not in S^(eps)");
  const auto p = eps.positives();
  std::vector<int> index_of(static_cast<std::size_t>(pi.size()) + 1, 0);
  for (std::size_t k = 0; k < p.size(); ++k) index_of[static_cast<std::size_t>(p[k])] = static_cast<int>(k) + 1;
  std::vector<int> images(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    images[k] = index_of[static_cast<std::size_t>(pi(pi(p[k])))];
  return Permutation(images);
}

/// Visits S^(eps) via the (alpha, beta) grid; nothing for unbalanced eps.
/// The callback receives (pi, alpha, beta).
template <class F>
void for_each_s_epsilon(const EpsilonVector& eps, F&& visit, int cap = kDefaultEpsilonCap) {
  if (!eps.balanced()) return;
  const int l = eps.size() / 2;
  detail::require_cap(l <= cap, "s_epsilon: l exceeds cap");
  std::vector<Permutation> sl;
  for_each_permutation(l, [&](const Permutation& p) { sl.push_back(p); });
  for (const auto& alpha : sl)
    for (const auto& beta : sl) visit(from_alpha_beta(alpha, beta, eps), alpha, beta);
}

inline std::vector<Permutation> s_epsilon(const EpsilonVector& eps, int cap = kDefaultEpsilonCap) {
  std::vector<Permutation> out;
  for_each_s_epsilon(eps, [&](const Permutation& pi, const Permutation&, const Permutation&) { out.push_back(pi); }, cap);
  return out;
}

/// NC^(eps)(m) = S^(eps)_m intersected with NC(m).
inline std::vector<Permutation> enumerate_nc_eps(const EpsilonVector& eps, int cap = kDefaultEpsilonCap) {
  std::vector<Permutation> out;
  for_each_s_epsilon(
      eps,
      [&](const Permutation& pi, const Permutation&, const Permutation&) {
        if (is_noncrossing(pi)) out.push_back(pi);
      },
      cap);
  return out;
}

/// S^(eps)_NC(m, n) = S^(eps)_{m+n} intersected with S_NC(m, n).
inline std::vector<Permutation> enumerate_snc_eps(int m, int n, const EpsilonVector& eps,
                                                  int cap = kDefaultEpsilonCap) {
  detail::require(eps.size() == m + n, "enumerate_snc_eps: epsilon length differs from m + n");
  std::vector<Permutation> out;
  for_each_s_epsilon(
      eps,
      [&](const Permutation& pi, const Permutation&, const Permutation&) {
        if (is_annular_noncrossing(pi, m, n)) out.push_back(pi);
      },
      cap);
  return out;
}

inline std::int64_t catalan(int n) {
  std::int64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

}  // namespace sofree
