#include <gtest/gtest.h>

#include <gmpxx.h>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "sofree/partition.hpp"

using namespace sofree;

namespace {

// All partitions of [n] from every labelling function, deduplicated.
std::set<SetPartition> partitions_by_labellings(int n) {
  std::set<SetPartition> out;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  while (true) {
    out.insert(SetPartition::from_labels(labels));
    int i = 0;
    while (i < n && ++labels[static_cast<std::size_t>(i)] == n) labels[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return out;
}

// Join as the transitive closure of "same block in A or in B".
SetPartition closure_join(const SetPartition& a, const SetPartition& b) {
  const int n = a.size();
  std::vector<std::vector<char>> rel(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      rel[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          a.block_of(i) == a.block_of(j) || b.block_of(i) == b.block_of(j);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
            rel[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
          rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int first = i;
    for (int j = 0; j < n; ++j)
      if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
        first = j;
        break;
      }
    labels[static_cast<std::size_t>(i)] = first;
  }
  return SetPartition::from_labels(labels);
}

SetPartition random_partition(int n, std::mt19937_64& rng) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (auto& l : labels) l = pick(rng);
  return SetPartition::from_labels(labels);
}

// Moebius function by the defining recursion over the explicit interval.
std::int64_t recursive_mobius(const SetPartition& c, const SetPartition& a, const std::vector<SetPartition>& all) {
  if (c == a) return 1;
  std::int64_t sum = 0;
  for (const auto& d : all)
    if (c.refines(d) && d.refines(a) && !(d == a)) sum += recursive_mobius(c, d, all);
  return -sum;
}

}  // namespace

TEST(SetPartition, Canonicalization) {
  const SetPartition a(4, {{4, 3}, {2, 1}});
  EXPECT_EQ(a.blocks(), (std::vector<std::vector<int>>{{1, 2}, {3, 4}}));
  EXPECT_EQ(a.norm(), 2);
  EXPECT_EQ(a.to_string(), "{{1,2},{3,4}}");
  EXPECT_THROW(SetPartition(3, {{1, 2}}), InvalidArgument);
  EXPECT_THROW(SetPartition(3, {{1, 2}, {2, 3}}), InvalidArgument);
  EXPECT_THROW(SetPartition(3, {{1, 2}, {}, {3}}), InvalidArgument);
}

TEST(SetPartition, JoinExamples) {
  EXPECT_EQ(join(SetPartition::discrete(4), SetPartition(4, {{1, 2}, {3}, {4}})), SetPartition(4, {{1, 2}, {3}, {4}}));
  EXPECT_EQ(join(SetPartition(4, {{1, 2}, {3, 4}}), SetPartition(4, {{2, 3}, {1}, {4}})), SetPartition::one(4));
  EXPECT_THROW(join(SetPartition::one(2), SetPartition::one(3)), InvalidArgument);
}

TEST(SetPartition, JoinMatchesClosureOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const auto a = random_partition(n, rng);
    const auto b = random_partition(n, rng);
    const auto j = join(a, b);
    ASSERT_EQ(j, closure_join(a, b));
    EXPECT_EQ(j, join(b, a));
    EXPECT_EQ(join(a, a), a);
    EXPECT_TRUE(a.refines(j) && b.refines(j));
  }
}

TEST(SetPartition, PiInvariance) {
  const auto p = Permutation::from_cycles(4, {{1, 3}, {2, 4}});
  EXPECT_TRUE(is_pi_invariant(SetPartition::from_cycles(p), p));
  EXPECT_TRUE(is_pi_invariant(SetPartition::one(4), p));
  EXPECT_FALSE(is_pi_invariant(SetPartition::discrete(2), Permutation::from_cycles(2, {{1, 2}})));
  EXPECT_EQ(augmented_norm(SetPartition::one(4), p).value, 2 * 3 - 2);
  EXPECT_THROW(augmented_norm(SetPartition::discrete(4), p), InvalidArgument);
}

TEST(SetPartition, MobiusToTop) {
  EXPECT_EQ(mobius_to_top(SetPartition::one(5)), 1);
  EXPECT_EQ(mobius_to_top(SetPartition(3, {{1, 2}, {3}})), -1);
  EXPECT_EQ(mobius_to_top(SetPartition::discrete(4)), -6);
}

TEST(SetPartition, EnumerationMatchesBruteForce) {
  const std::vector<int> bell{1, 1, 2, 5, 15, 52, 203};
  for (int n = 1; n <= 6; ++n) {
    const auto list = enumerate_partitions(n);
    EXPECT_EQ(static_cast<int>(list.size()), bell[static_cast<std::size_t>(n)]);
    const std::set<SetPartition> unique(list.begin(), list.end());
    EXPECT_EQ(unique, partitions_by_labellings(n));
  }
  EXPECT_THROW(enumerate_partitions(13), CapExceeded);
}

TEST(SetPartition, PiInvariantEnumeration) {
  EXPECT_EQ(enumerate_pi_invariant(Permutation::identity(4)).size(), 15u);
  const auto single = enumerate_pi_invariant(Permutation::from_cycles(3, {{1, 2, 3}}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.front(), SetPartition::one(3));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = Permutation::random(6, rng);
    std::set<SetPartition> expected;
    for (const auto& a : enumerate_partitions(6))
      if (is_pi_invariant(a, p)) expected.insert(a);
    const auto got = enumerate_pi_invariant(p);
    EXPECT_EQ(std::set<SetPartition>(got.begin(), got.end()), expected);
    EXPECT_EQ(got.size(), expected.size());
  }
}

TEST(SetPartition, IntervalEnumeration) {
  const SetPartition lower(5, {{1, 2}, {3}, {4}, {5}});
  const SetPartition upper(5, {{1, 2, 3}, {4, 5}});
  std::set<SetPartition> got;
  for_each_in_interval(lower, upper, [&](const SetPartition& c) { got.insert(c); });
  std::set<SetPartition> expected;
  for (const auto& d : enumerate_partitions(5))
    if (lower.refines(d) && d.refines(upper)) expected.insert(d);
  EXPECT_EQ(got, expected);
}

TEST(SetPartition, MobiusIntervalMatchesRecursion) {
  for (int n = 1; n <= 5; ++n) {
    const auto all = enumerate_partitions(n);
    for (const auto& c : all)
      for (const auto& a : all) {
        if (!c.refines(a)) continue;
        if (n <= 4) {
          ASSERT_EQ(mobius_interval(c, a), recursive_mobius(c, a, all)) << c.to_string() << a.to_string();
        }
        if (c == a) continue;
        // Defining relation: sum over [C, A] of moeb(C, D) vanishes.
        std::int64_t sum = 0;
        for (const auto& d : all)
          if (c.refines(d) && d.refines(a)) sum += mobius_interval(c, d);
        ASSERT_EQ(sum, 0);
      }
    EXPECT_EQ(mobius_interval(SetPartition::discrete(n), SetPartition::one(n)),
              mobius_to_top(SetPartition::discrete(n)));
  }
  EXPECT_THROW(mobius_interval(SetPartition::one(3), SetPartition::discrete(3)), InvalidArgument);
}

TEST(SetPartition, MobiusInversionProperty) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 4; ++n) {
    const auto all = enumerate_partitions(n);
    std::map<SetPartition, long> f, g;
    for (const auto& a : all) f[a] = static_cast<long>(rng() % 21) - 10;
    for (const auto& a : all)
      for (const auto& c : all)
        if (c.refines(a)) g[a] += f[c];
    for (const auto& a : all) {
      long back = 0;
      for (const auto& c : all)
        if (c.refines(a)) back += mobius_interval(c, a) * g[c];
      EXPECT_EQ(back, f[a]);
    }
  }
}

TEST(SetPartition, TriangleInequalities) {
  for (int n = 1; n <= 5; ++n) {
    const auto all = enumerate_partitions(n);
    for (const auto& a : all)
      for (const auto& b : all) ASSERT_LE(join(a, b).norm(), a.norm() + b.norm());
  }
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto a = random_partition(n, rng);
    const auto b = random_partition(n, rng);
    ASSERT_LE(join(a, b).norm(), a.norm() + b.norm());
    if (n > 8) continue;
    const auto pi = Permutation::random(n, rng);
    const auto sigma = Permutation::random(n, rng);
    const auto ai = random_pi_invariant(pi, rng);
    const auto bi = random_pi_invariant(sigma, rng);
    ASSERT_TRUE(is_pi_invariant(ai, pi));
    const auto ab = join(ai, bi);
    ASSERT_LE(augmented_norm(ab, compose(pi, sigma)).value,
              augmented_norm(ai, pi).value + augmented_norm(bi, sigma).value);
  }
}

TEST(Cumulants, LowOrders) {
  const std::vector<mpq_class> mean{mpq_class(3), mpq_class(-2)};
  const mpq_class joint(7);
  auto oracle = [&](const std::vector<int>& idx) -> mpq_class {
    if (idx.size() == 1) return mean[static_cast<std::size_t>(idx[0])];
    return joint;
  };
  EXPECT_EQ(cumulants_from_moments<mpq_class>(oracle, 1), mpq_class(3));
  EXPECT_EQ(cumulants_from_moments<mpq_class>(oracle, 2), joint - mean[0] * mean[1]);
  EXPECT_THROW(cumulants_from_moments<mpq_class>(oracle, 7), CapExceeded);
}

namespace {

// A finite probability space with random rational values: the exact moment
// oracle behind the cumulant identities below.
struct FiniteSpace {
  std::vector<mpq_class> weights;
  std::vector<std::vector<mpq_class>> values;  // values[variable][outcome]

  static FiniteSpace random(int variables, int outcomes, std::mt19937_64& rng) {
    FiniteSpace s;
    mpq_class total = 0;
    for (int o = 0; o < outcomes; ++o) {
      s.weights.emplace_back(static_cast<long>(1 + rng() % 5));
      total += s.weights.back();
    }
    for (auto& w : s.weights) w /= total;
    s.values.assign(static_cast<std::size_t>(variables), {});
    for (auto& v : s.values)
      for (int o = 0; o < outcomes; ++o) v.emplace_back(static_cast<long>(rng() % 7) - 3);
    return s;
  }

  mpq_class moment(const std::vector<int>& vars) const {
    mpq_class out = 0;
    for (std::size_t o = 0; o < weights.size(); ++o) {
      mpq_class prod = weights[o];
      for (int v : vars) prod *= values[static_cast<std::size_t>(v)][o];
      out += prod;
    }
    return out;
  }

  mpq_class cumulant(const std::vector<int>& vars) const {
    return cumulants_from_moments<mpq_class>(
        [&](const std::vector<int>& idx) {
          std::vector<int> sub;
          for (int i : idx) sub.push_back(vars[static_cast<std::size_t>(i)]);
          return moment(sub);
        },
        static_cast<int>(vars.size()));
  }
};

}  // namespace

TEST(Cumulants, IndependentBlockVanishes) {
  std::mt19937_64 rng(2);
  // Variables 0, 1 live on the first factor, variable 2 on the second.
  for (int trial = 0; trial < 20; ++trial) {
    const auto s1 = FiniteSpace::random(2, 4, rng);
    const auto s2 = FiniteSpace::random(1, 3, rng);
    auto oracle = [&](const std::vector<int>& idx) {
      std::vector<int> left;
      bool has_right = false;
      for (int i : idx) {
        if (i == 2) has_right = true;
        else left.push_back(i);
      }
      const mpq_class l = left.empty() ? mpq_class(1) : s1.moment(left);
      return has_right ? l * s2.moment({0}) : l;
    };
    EXPECT_EQ(cumulants_from_moments<mpq_class>(oracle, 3), 0);
  }
}

TEST(Cumulants, ProductOfVariablesFormula) {
  // k2(a_1 ... a_m, b_1 ... b_n) = sum over tau with tau v 1_{m,n} = 1 of k_tau.
  std::mt19937_64 rng(6);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const auto s = FiniteSpace::random(m + n, 5, rng);
      std::vector<int> a, b;
      for (int i = 0; i < m; ++i) a.push_back(i);
      for (int i = m; i < m + n; ++i) b.push_back(i);
      // Direct: the two products as two random variables.
      FiniteSpace prod;
      prod.weights = s.weights;
      prod.values.assign(2, std::vector<mpq_class>(s.weights.size(), 1));
      for (std::size_t o = 0; o < s.weights.size(); ++o) {
        for (int i : a) prod.values[0][o] *= s.values[static_cast<std::size_t>(i)][o];
        for (int i : b) prod.values[1][o] *= s.values[static_cast<std::size_t>(i)][o];
      }
      const mpq_class direct = prod.cumulant({0, 1});

      std::vector<int> lengths_labels(static_cast<std::size_t>(m + n));
      for (int i = 0; i < m + n; ++i) lengths_labels[static_cast<std::size_t>(i)] = i < m ? 0 : 1;
      const SetPartition sides = SetPartition::from_labels(lengths_labels);
      mpq_class expanded = 0;
      for_each_partition(m + n, [&](const SetPartition& tau) {
        if (!(join(tau, sides) == SetPartition::one(m + n))) return;
        mpq_class term = 1;
        for (const auto& block : tau.blocks()) {
          std::vector<int> vars;
          for (int i : block) vars.push_back(i - 1);
          term *= s.cumulant(vars);
        }
        expanded += term;
      });
      EXPECT_EQ(direct, expanded) << "m=" << m << " n=" << n;
    }
}
