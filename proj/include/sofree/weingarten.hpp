#pragma once

// The unitary Weingarten function Wg(N, pi) as an exact rational function of
// N, its 1/N expansion, the leading coefficients mu and mu2, and relative
// cumulants C_{pi,A}.
//
// Wg(N, .) is the convolution inverse of sigma -> N^{#(sigma)} on S_n:
//
//     sum_{tau in S_n} Wg(sigma tau^{-1}) N^{#(tau rho^{-1})} = delta_{sigma, rho}.
//
// Both sides are class functions, so the system is solved on conjugacy
// classes (one unknown per cycle type) by fraction-free elimination over Z[N].

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "sofree/errors.hpp"
#include "sofree/partition.hpp"
#include "sofree/permutation.hpp"
#include "sofree/polynomial.hpp"

namespace sofree {

/// Default cap on n for Weingarten tables. Raising it is cheap up to n = 8
/// (about 1.5 s for the n = 8 table); each class sweeps all n! permutations,
/// so n >= 9 gets slow.
inline constexpr int kDefaultWeingartenCap = 5;

using CycleType = std::vector<int>;

/// Integer partitions of n in reverse lexicographic order, largest first.
inline std::vector<CycleType> integer_partitions(int n) {
  std::vector<CycleType> out;
  CycleType current;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  recurse(recurse, n, n);
  return out;
}

/// A permutation with the given cycle type, cycles on consecutive intervals.
inline Permutation permutation_of_type(const CycleType& type) {
  return gamma(std::span<const int>(type));
}

namespace detail {

using PolyMatrix = std::vector<std::vector<PolynomialZ>>;

// Fraction-free (Bareiss) elimination of [A | b] to upper-triangular form,
// followed by back-substitution over rational functions.
inline std::vector<RationalFunctionN> bareiss_solve(PolyMatrix a, std::vector<PolynomialZ> b) {
  const std::size_t n = a.size();
  PolynomialZ previous{1};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && a[pivot][k].is_zero()) ++pivot;
      if (pivot == n) throw ArithmeticError("singular Gram matrix over Z[N]");
      std::swap(a[k], a[pivot]);
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(previous);
      b[i] = (a[k][k] * b[i] - a[i][k] * b[k]).exact_div(previous);
      a[i][k] = PolynomialZ{};
    }
    previous = a[k][k];
  }
  if (a[n - 1][n - 1].is_zero()) throw ArithmeticError("singular Gram matrix over Z[N]");
  std::vector<RationalFunctionN> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    RationalFunctionN acc(b[ii]);
    for (std::size_t j = ii + 1; j < n; ++j) acc -= RationalFunctionN(a[ii][j]) * x[j];
    x[ii] = acc / RationalFunctionN(a[ii][ii]);
  }
  return x;
}

}  // namespace detail

/// Wg(N, .) on all of S_n, keyed by cycle type.
inline std::map<CycleType, RationalFunctionN> compute_weingarten_classes(int n) {
  detail::require(n >= 1, "weingarten: n must be positive");
  const auto types = integer_partitions(n);
  std::map<CycleType, std::size_t> index;
  for (std::size_t t = 0; t < types.size(); ++t) index.emplace(types[t], t);

  // Row for class lambda (representative sigma):
  //   sum_tau Wg(class(sigma tau^{-1})) N^{#(tau)} = delta_{lambda, id}.
  const std::size_t k = types.size();
  detail::PolyMatrix gram(k, std::vector<PolynomialZ>(k));
  std::vector<std::vector<long>> counts;
  for (std::size_t row = 0; row < k; ++row) {
    const Permutation sigma = permutation_of_type(types[row]);
    // counts[col][c] = #{tau : class(sigma tau^{-1}) = col, #(tau) = c}
    std::vector<std::vector<long>> tally(k, std::vector<long>(static_cast<std::size_t>(n) + 1, 0));
    for_each_permutation(n, [&](const Permutation& tau) {
      const auto cls = index.at(compose(sigma, tau.inverse()).cycle_type());
      ++tally[cls][static_cast<std::size_t>(tau.num_cycles())];
    });
    for (std::size_t col = 0; col < k; ++col) {
      std::vector<mpz_class> coeffs(static_cast<std::size_t>(n) + 1);
      for (int c = 0; c <= n; ++c) coeffs[static_cast<std::size_t>(c)] = tally[col][static_cast<std::size_t>(c)];
      gram[row][col] = PolynomialZ(std::move(coeffs));
    }
  }
  std::vector<PolynomialZ> rhs(k);
  rhs[index.at(CycleType(static_cast<std::size_t>(n), 1))] = PolynomialZ{1};

  const auto solution = detail::bareiss_solve(std::move(gram), std::move(rhs));
  std::map<CycleType, RationalFunctionN> out;
  for (std::size_t t = 0; t < k; ++t) out.emplace(types[t], solution[t]);
  return out;
}

/// Read-mostly cache of Weingarten tables, one per n. Thread-safe.
class WeingartenCache {
 public:
  explicit WeingartenCache(int cap = kDefaultWeingartenCap) : cap_(cap) {}

  int cap() const { return cap_.load(); }
  void set_cap(int cap) {
    detail::require(cap >= 1, "weingarten cap must be positive");
    cap_.store(cap);
  }

  const RationalFunctionN& get(const CycleType& type) {
    int n = 0;
    for (int part : type) n += part;
    detail::require_cap(n <= cap(), "weingarten: n=" + std::to_string(n) + " exceeds cap " +
                                        std::to_string(cap()));
    {
      std::shared_lock lock(mutex_);
      if (auto it = tables_.find(n); it != tables_.end()) return it->second.at(type);
    }
    auto table = compute_weingarten_classes(n);
    std::unique_lock lock(mutex_);
    auto [it, inserted] = tables_.emplace(n, std::move(table));
    return it->second.at(type);
  }

 private:
  std::atomic<int> cap_;
  std::shared_mutex mutex_;
  std::map<int, std::map<CycleType, RationalFunctionN>> tables_;
};

inline WeingartenCache& weingarten_cache() {
  static WeingartenCache cache;
  return cache;
}

inline RationalFunctionN weingarten(const Permutation& p) {
  detail::require(p.size() >= 1, "weingarten: empty permutation");
  return weingarten_cache().get(p.cycle_type());
}

inline RationalFunctionN weingarten(int n, const Permutation& p) {
  detail::require(p.size() == n, "weingarten: permutation size differs from n");
  return weingarten(p);
}

/// Exact value at an integer N; requires N >= n so that the rational function
/// coincides with the Haar integral.
inline mpq_class weingarten_at(const Permutation& p, long n_value) {
  detail::require(n_value >= p.size(), "weingarten: N must be at least n");
  return weingarten(p).evaluate(mpq_class(n_value));
}

/// mu(p) for a single k-cycle via the series of Wg(k-cycle).
inline mpz_class mu_cycle(int k) {
  const Permutation cycle = gamma({k});
  const auto s = series(weingarten(cycle), 0);
  const long expected = cycle.length() + k;
  if (s.offset != expected) throw ArithmeticError("weingarten series offset mismatch");
  detail::require(s.coeffs[0].get_den() == 1, "mu is not an integer");
  return s.coeffs[0].get_num();
}

/// mu(p): leading coefficient of Wg(p) at N^{-(|p| + n)}, multiplicative over
/// cycles. Each cycle length must be within the Weingarten cap.
inline mpz_class mu(const Permutation& p) {
  mpz_class out = 1;
  for (int len : p.cycle_type()) out *= mu_cycle(len);
  return out;
}

/// mu2(p1, p2): coefficient of N^{-(|p1| + |p2| + m + n + 2)} in
/// Wg(p1 x p2) - Wg(p1) Wg(p2).
inline mpq_class mu2(const Permutation& p1, const Permutation& p2) {
  const RationalFunctionN difference =
      weingarten(direct_sum(p1, p2)) - weingarten(p1) * weingarten(p2);
  const long exponent = p1.length() + p2.length() + p1.size() + p2.size() + 2;
  const auto s = series(difference, 2);
  if (!s.is_zero && s.offset < exponent)
    throw ArithmeticError("mu2: difference series starts below the expected order");
  return s.at_exponent(exponent);
}

/// Wg_A(p) = prod over blocks V of A of Wg(p restricted to V).
inline RationalFunctionN weingarten_product(const Permutation& p, const SetPartition& a) {
  RationalFunctionN out = RationalFunctionN::constant(1);
  for (const auto& block : a.blocks()) out *= weingarten(restrict_to(p, block));
  return out;
}

/// Relative cumulant C_{p,A} = sum_{C in [p, A]} moeb(C, A) Wg_C(p), where p
/// is identified with its cycle partition.
inline RationalFunctionN relative_cumulant(const Permutation& p, const SetPartition& a) {
  detail::require(is_pi_invariant(a, p), "relative_cumulant: A is not p-invariant");
  RationalFunctionN out;
  for_each_in_interval(SetPartition::from_cycles(p), a, [&](const SetPartition& c) {
    const std::int64_t m = mobius_interval(c, a);
    out += RationalFunctionN::constant(static_cast<long>(m)) * weingarten_product(p, c);
  });
  return out;
}

}  // namespace sofree
