#pragma once

// Products of traces of words D_1 U^{eps_1} D_2 U^{eps_2} ... in a Haar
// unitary U and deterministic exact matrices D, and their exact expectations.
//
// Position convention: position i carries D_i followed by U^{eps_i}; the
// positions of the k trace groups are consecutive, so gamma is
// gamma(group_lengths).

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sofree/errors.hpp"
#include "sofree/exact_matrix.hpp"
#include "sofree/noncrossing.hpp"
#include "sofree/partition.hpp"
#include "sofree/permutation.hpp"
#include "sofree/weingarten.hpp"

namespace sofree {

/// One factor D U^{eps}. `d` indexes the caller's matrix list; empty means
/// the identity matrix.
struct TraceLetter {
  std::optional<std::size_t> d;
  int eps = 1;

  friend bool operator==(const TraceLetter&, const TraceLetter&) = default;
};

class TraceWordSpec {
 public:
  TraceWordSpec() = default;
  explicit TraceWordSpec(std::vector<std::vector<TraceLetter>> groups) {
    for (auto& g : groups) {
      detail::require(!g.empty(), "trace word group is empty");
      for (const auto& letter : g)
        detail::require(letter.eps == 1 || letter.eps == -1, "trace letter exponent must be +1 or -1");
      group_lengths_.push_back(static_cast<int>(g.size()));
      letters_.insert(letters_.end(), g.begin(), g.end());
    }
  }

  /// Single trace of U^{eps_1} U^{eps_2} ... with identity D's, from tokens
  /// such as "U,U*" or "U U* U".
  static TraceWordSpec from_unit_word(const std::string& text) {
    std::vector<TraceLetter> letters;
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      if (token == "U") letters.push_back({std::nullopt, 1});
      else if (token == "U*") letters.push_back({std::nullopt, -1});
      else throw InvalidArgument("unknown letter '" + token + "' (expected U or U*)");
      token.clear();
    };
    for (char c : text) {
      if (c == ',' || c == ' ') flush();
      else token.push_back(c);
    }
    flush();
    return TraceWordSpec({letters});
  }

  /// Tr(U^r) with identity D's.
  static TraceWordSpec power(int r) {
    detail::require(r != 0, "power: exponent must be nonzero");
    const int sign = r > 0 ? 1 : -1;
    return TraceWordSpec({std::vector<TraceLetter>(static_cast<std::size_t>(r * sign), {std::nullopt, sign})});
  }

  /// Groups of all specs, in order.
  static TraceWordSpec concat(std::span<const TraceWordSpec> specs) {
    TraceWordSpec out;
    for (const auto& s : specs) {
      out.group_lengths_.insert(out.group_lengths_.end(), s.group_lengths_.begin(), s.group_lengths_.end());
      out.letters_.insert(out.letters_.end(), s.letters_.begin(), s.letters_.end());
    }
    return out;
  }

  const std::vector<int>& group_lengths() const { return group_lengths_; }
  const std::vector<TraceLetter>& letters() const { return letters_; }
  int num_groups() const { return static_cast<int>(group_lengths_.size()); }
  int total_length() const { return static_cast<int>(letters_.size()); }

  EpsilonVector epsilon() const {
    std::vector<int> signs;
    for (const auto& l : letters_) signs.push_back(l.eps);
    return EpsilonVector(std::move(signs));
  }
  bool balanced() const { return epsilon().balanced(); }
  Permutation gamma_permutation() const { return gamma(std::span<const int>(group_lengths_)); }

  friend bool operator==(const TraceWordSpec&, const TraceWordSpec&) = default;

 private:
  std::vector<int> group_lengths_;
  std::vector<TraceLetter> letters_;
};

namespace detail {

template <class Matrix>
auto trace_of_product(std::span<const Matrix* const> factors, int dim) {
  using Scalar = std::decay_t<decltype(factors[0]->trace())>;
  const Matrix* first = nullptr;
  std::optional<Matrix> product;
  for (const Matrix* f : factors) {
    if (f == nullptr) continue;
    if (first == nullptr) {
      first = f;
    } else {
      if (!product) product = *first;
      Matrix next = (*product) * (*f);
      product = std::move(next);
    }
  }
  if (first == nullptr) return Scalar(dim);
  return product ? Scalar(product->trace()) : Scalar(first->trace());
}

}  // namespace detail

/// Tr_p(D_1, ..., D_n) = prod over cycles (i_1 ... i_r) of Tr(D_{i_1} ... D_{i_r}).
/// A null pointer stands for the identity of dimension `dim`.
template <class Matrix>
auto trace_pi(const Permutation& p, std::span<const Matrix* const> d, int dim) {
  detail::require(static_cast<int>(d.size()) == p.size(), "trace_pi: need one matrix per position");
  for (const Matrix* m : d)
    if (m != nullptr)
      detail::require(m->rows() == dim && m->cols() == dim, "trace_pi: matrix dimension mismatch");
  using Scalar = decltype(detail::trace_of_product(d, dim));
  Scalar out(1);
  std::vector<const Matrix*> factors;
  for (const auto& cycle : p.cycles()) {
    factors.clear();
    for (int i : cycle) factors.push_back(d[static_cast<std::size_t>(i - 1)]);
    out *= detail::trace_of_product(std::span<const Matrix* const>(factors), dim);
  }
  return out;
}

template <class Matrix>
auto trace_pi(const Permutation& p, std::span<const Matrix> d) {
  detail::require(!d.empty(), "trace_pi: no matrices");
  std::vector<const Matrix*> ptrs;
  for (const auto& m : d) ptrs.push_back(&m);
  return trace_pi(p, std::span<const Matrix* const>(ptrs), static_cast<int>(d.front().rows()));
}

namespace detail {

inline std::vector<const ExactMatrix*> resolve_letters(const TraceWordSpec& spec,
                                                       std::span<const ExactMatrix> matrices, long n_value) {
  std::vector<const ExactMatrix*> out;
  for (const auto& letter : spec.letters()) {
    if (!letter.d) {
      out.push_back(nullptr);
      continue;
    }
    require(*letter.d < matrices.size(), "trace word refers to a missing matrix");
    const ExactMatrix& m = matrices[*letter.d];
    require(m.rows() == n_value, "matrix dimension differs from N");
    out.push_back(&m);
  }
  return out;
}

// Tr_p on resolved letters with a per-call cache keyed by the cycle word.
class CycleTraceCache {
 public:
  CycleTraceCache(std::vector<const ExactMatrix*> letters, int dim) : letters_(std::move(letters)), dim_(dim) {}

  mpq_class trace_pi(const Permutation& p) {
    mpq_class out = 1;
    for (auto cycle : p.cycles()) {
      auto it = cache_.find(cycle);
      if (it == cache_.end()) {
        std::vector<const ExactMatrix*> factors;
        for (int i : cycle) factors.push_back(letters_[static_cast<std::size_t>(i - 1)]);
        it = cache_.emplace(cycle, detail::trace_of_product(std::span<const ExactMatrix* const>(factors), dim_))
                 .first;
      }
      out *= it->second;
      if (out == 0) break;
    }
    return out;
  }

 private:
  std::vector<const ExactMatrix*> letters_;
  int dim_;
  std::map<std::vector<int>, mpq_class> cache_;
};

}  // namespace detail

/// E(prod of traces) over Haar U(N), exact, for deterministic D:
///
///     sum_{pi in S^(eps)_{2l}} Wg(N, pi~) Tr_{gamma pi^{-1}}(D_1, ..., D_{2l}).
///
/// Zero when eps is unbalanced. Requires N >= l.
inline mpq_class exact_mixed_moment(const TraceWordSpec& spec, std::span<const ExactMatrix> matrices,
                                    long n_value, int cap = kDefaultEpsilonCap) {
  if (!spec.balanced()) return 0;
  const int l = spec.total_length() / 2;
  detail::require(n_value >= l, "exact_mixed_moment: N must be at least l = " + std::to_string(l));
  detail::require_cap(l <= cap, "exact_mixed_moment: l exceeds cap");
  const EpsilonVector eps = spec.epsilon();
  const Permutation g = spec.gamma_permutation();
  detail::CycleTraceCache traces(detail::resolve_letters(spec, matrices, n_value), static_cast<int>(n_value));
  std::map<CycleType, mpq_class> wg_at_n;
  mpq_class total = 0;
  for_each_s_epsilon(
      eps,
      [&](const Permutation& pi, const Permutation& alpha, const Permutation& beta) {
        const CycleType type = compose(beta, alpha.inverse()).cycle_type();
        auto it = wg_at_n.find(type);
        if (it == wg_at_n.end())
          it = wg_at_n.emplace(type, weingarten_cache().get(type).evaluate(mpq_class(n_value))).first;
        const mpq_class tr = traces.trace_pi(compose(g, pi.inverse()));
        if (tr != 0) total += it->second * tr;
      },
      cap);
  total.canonicalize();
  return total;
}

/// Independent brute force: expands every trace into explicit entry sums and
/// applies the entrywise Haar integration formula
///
///     E(U_{i'_1 j'_1} ... U_{i'_n j'_n} conj(U_{i_1 j_1}) ... conj(U_{i_n j_n}))
///       = sum_{alpha, beta in S_n} prod_k delta(i_k, i'_{alpha(k)}) delta(j_k, j'_{beta(k)}) Wg(beta alpha^{-1})
///
/// to every monomial. Exponential cost: N <= 3 and total length <= 6 by default.
inline mpq_class entrywise_moment_oracle(const TraceWordSpec& spec, std::span<const ExactMatrix> matrices,
                                         long n_value, long max_n = 3, int max_length = 6) {
  const int len = spec.total_length();
  detail::require_cap(n_value <= max_n && len <= max_length, "entrywise oracle: cost cap exceeded");
  int plus = 0;
  for (const auto& letter : spec.letters()) plus += letter.eps == 1 ? 1 : 0;
  if (2 * plus != len) return 0;
  const int l = plus;
  detail::require(n_value >= l, "entrywise oracle: N must be at least l");
  const auto letters = detail::resolve_letters(spec, matrices, n_value);

  // next[k]: position following k cyclically within its trace group.
  std::vector<int> next(static_cast<std::size_t>(len));
  {
    int start = 0;
    for (int m : spec.group_lengths()) {
      for (int k = 0; k < m; ++k) next[static_cast<std::size_t>(start + k)] = start + (k + 1) % m;
      start += m;
    }
  }

  std::vector<Permutation> sl;
  for_each_permutation(l, [&](const Permutation& p) { sl.push_back(p); });
  std::vector<std::vector<mpq_class>> wg(sl.size(), std::vector<mpq_class>(sl.size()));
  for (std::size_t a = 0; a < sl.size(); ++a)
    for (std::size_t b = 0; b < sl.size(); ++b) wg[a][b] = weingarten_at(compose(sl[b], sl[a].inverse()), n_value);

  // Trace group: sum_{a, b} prod_k D_k[a_k, b_k] (U^{eps_k})[b_k, a_{next(k)}].
  const int num_indices = 2 * len;
  std::vector<int> idx(static_cast<std::size_t>(num_indices), 0);
  auto a_of = [&](int k) { return idx[static_cast<std::size_t>(k)]; };
  auto b_of = [&](int k) { return idx[static_cast<std::size_t>(len + k)]; };

  std::vector<int> ui_row, ui_col, ci_row, ci_col;  // U entries and conjugated entries
  mpq_class total = 0;
  while (true) {
    mpq_class coeff = 1;
    for (int k = 0; k < len && coeff != 0; ++k) {
      const ExactMatrix* d = letters[static_cast<std::size_t>(k)];
      if (d == nullptr) {
        if (a_of(k) != b_of(k)) coeff = 0;
      } else {
        coeff *= (*d)(a_of(k), b_of(k));
      }
    }
    if (coeff != 0) {
      ui_row.clear(); ui_col.clear(); ci_row.clear(); ci_col.clear();
      for (int k = 0; k < len; ++k) {
        const int row = b_of(k);
        const int col = a_of(next[static_cast<std::size_t>(k)]);
        if (spec.letters()[static_cast<std::size_t>(k)].eps == 1) {
          ui_row.push_back(row);
          ui_col.push_back(col);
        } else {
          // (U*)_{row, col} = conj(U_{col, row})
          ci_row.push_back(col);
          ci_col.push_back(row);
        }
      }
      mpq_class weight = 0;
      for (std::size_t a = 0; a < sl.size(); ++a) {
        bool rows_match = true;
        for (int k = 0; k < l && rows_match; ++k)
          rows_match = ci_row[static_cast<std::size_t>(k)] == ui_row[static_cast<std::size_t>(sl[a].at0(k))];
        if (!rows_match) continue;
        for (std::size_t b = 0; b < sl.size(); ++b) {
          bool cols_match = true;
          for (int k = 0; k < l && cols_match; ++k)
            cols_match = ci_col[static_cast<std::size_t>(k)] == ui_col[static_cast<std::size_t>(sl[b].at0(k))];
          if (cols_match) weight += wg[a][b];
        }
      }
      if (weight != 0) total += coeff * weight;
    }
    int pos = 0;
    while (pos < num_indices && ++idx[static_cast<std::size_t>(pos)] == n_value) idx[static_cast<std::size_t>(pos++)] = 0;
    if (pos == num_indices) break;
  }
  total.canonicalize();
  return total;
}

/// Joint cumulant k_r of the r observables (each a product of traces) by
/// Moebius inversion over P(r), every moment evaluated exactly.
inline mpq_class exact_cumulant(std::span<const TraceWordSpec> specs, std::span<const ExactMatrix> matrices,
                                long n_value, int max_r = 4) {
  const int r = static_cast<int>(specs.size());
  detail::require_cap(r <= max_r, "exact_cumulant: r exceeds cap");
  std::map<std::vector<int>, mpq_class> moments;
  auto moment = [&](const std::vector<int>& block) {
    auto it = moments.find(block);
    if (it != moments.end()) return it->second;
    std::vector<TraceWordSpec> parts;
    for (int i : block) parts.push_back(specs[static_cast<std::size_t>(i)]);
    const mpq_class value = exact_mixed_moment(TraceWordSpec::concat(parts), matrices, n_value);
    moments.emplace(block, value);
    return value;
  };
  mpq_class k = cumulants_from_moments<mpq_class>(moment, r, max_r);
  k.canonicalize();
  return k;
}

/// k_r through relative Weingarten cumulants: for deterministic D the only
/// surviving B is the cycle partition of gamma pi^{-1}, leaving
///
///     sum_{pi in S^(eps)} sum_{A pi-inv., A v cycles(gamma pi^{-1}) = 1} C_{pi~, A~} Tr_{gamma pi^{-1}}(D).
///
/// Each spec must be a single trace. Used to cross-check exact_cumulant.
inline mpq_class cumulant_via_relative_cumulants(std::span<const TraceWordSpec> specs,
                                                 std::span<const ExactMatrix> matrices, long n_value) {
  for (const auto& s : specs) detail::require(s.num_groups() == 1, "relative-cumulant route needs single traces");
  const TraceWordSpec merged = TraceWordSpec::concat(specs);
  if (!merged.balanced()) return 0;
  const int l = merged.total_length() / 2;
  detail::require(n_value >= l, "N must be at least l");
  const EpsilonVector eps = merged.epsilon();
  const auto positives = eps.positives();
  const Permutation g = merged.gamma_permutation();
  const SetPartition top = SetPartition::one(merged.total_length());
  detail::CycleTraceCache traces(detail::resolve_letters(merged, matrices, n_value), static_cast<int>(n_value));
  mpq_class total = 0;
  for_each_s_epsilon(eps, [&](const Permutation& pi, const Permutation&, const Permutation&) {
    const Permutation complement = compose(g, pi.inverse());
    const SetPartition b = SetPartition::from_cycles(complement);
    const mpq_class tr = traces.trace_pi(complement);
    if (tr == 0) return;
    const Permutation pt = tilde(pi, eps);
    for_each_pi_invariant(pi, [&](const SetPartition& a) {
      if (!(join(a, b) == top)) return;
      std::vector<int> labels;
      for (int p : positives) labels.push_back(a.block_of(p));
      const SetPartition a_tilde = SetPartition::from_labels(labels);
      total += relative_cumulant(pt, a_tilde).evaluate(mpq_class(n_value)) * tr;
    });
  });
  total.canonicalize();
  return total;
}

}  // namespace sofree
