#pragma once

// Limits of covariances of traces: second order probability spaces given by
// phi1/phi2 oracles, the multiplicative and derivation extensions of those
// oracles to permutations, the limiting k2 of two trace words in a Haar
// unitary and deterministic letters, and the Haar-unitary special cases.

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sofree/errors.hpp"
#include "sofree/noncrossing.hpp"
#include "sofree/permutation.hpp"
#include "sofree/trace_word.hpp"
#include "sofree/weingarten.hpp"

namespace sofree {

/// Abstract letters are indices into the caller's letter alphabet. A word
/// never contains the unit; callers drop unit letters before evaluation.
using LetterWord = std::vector<std::size_t>;

/// A second order non-commutative probability space, presented through its
/// trace functionals on cyclic words. Both oracles must be tracial and safe
/// for concurrent calls. phi1 of the empty word is 1 and phi2 vanishes when
/// either word is empty; evaluate_phi1/evaluate_phi2 enforce this.
struct SecondOrderSpace {
  std::function<mpq_class(const LetterWord&)> phi1;
  std::function<mpq_class(const LetterWord&, const LetterWord&)> phi2;
};

inline mpq_class evaluate_phi1(const SecondOrderSpace& space, const LetterWord& w) {
  if (w.empty()) return 1;
  mpq_class v = space.phi1(w);
  v.canonicalize();
  return v;
}

inline mpq_class evaluate_phi2(const SecondOrderSpace& space, const LetterWord& a, const LetterWord& b) {
  if (a.empty() || b.empty()) return 0;
  mpq_class v = space.phi2(a, b);
  v.canonicalize();
  return v;
}

/// Lexicographically least rotation; the canonical key of a cyclic word.
template <class T>
std::vector<T> canonical_rotation(const std::vector<T>& w) {
  std::vector<T> best = w;
  std::vector<T> r = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

/// Every letter is the unit: phi1 = 1, phi2 = 0.
inline SecondOrderSpace unit_space() {
  return {[](const LetterWord&) { return mpq_class(1); },
          [](const LetterWord&, const LetterWord&) { return mpq_class(0); }};
}

/// Letters are constant diagonal matrices whose diagonal repeats a fixed
/// pattern of length P. phi1 is the normalized trace (exact when P divides N)
/// and phi2 = 0 since the letters do not fluctuate.
class DiagonalPatternSpace {
 public:
  explicit DiagonalPatternSpace(std::vector<std::vector<mpq_class>> patterns) : patterns_(std::move(patterns)) {
    detail::require(!patterns_.empty(), "diagonal space needs at least one letter");
    period_ = patterns_.front().size();
    detail::require(period_ > 0, "diagonal pattern is empty");
    for (const auto& p : patterns_) detail::require(p.size() == period_, "diagonal patterns must share one period");
  }

  std::size_t period() const { return period_; }
  std::size_t num_letters() const { return patterns_.size(); }
  const std::vector<mpq_class>& pattern(std::size_t letter) const { return patterns_.at(letter); }

  mpq_class phi1(const LetterWord& w) const {
    mpq_class sum = 0;
    for (std::size_t i = 0; i < period_; ++i) {
      mpq_class prod = 1;
      for (std::size_t letter : w) prod *= patterns_.at(letter)[i];
      sum += prod;
    }
    return sum / mpq_class(static_cast<long>(period_));
  }

  /// The N x N matrix realising a letter; N must be a multiple of the period.
  ExactMatrix matrix(std::size_t letter, long n_value) const {
    detail::require(n_value > 0 && n_value % static_cast<long>(period_) == 0,
                    "N must be a multiple of the diagonal pattern period");
    std::vector<mpq_class> diag(static_cast<std::size_t>(n_value));
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = patterns_.at(letter)[i % period_];
    return ExactMatrix::diagonal(diag);
  }

  SecondOrderSpace space() const {
    auto self = *this;
    return {[self](const LetterWord& w) { return self.phi1(w); },
            [](const LetterWord&, const LetterWord&) { return mpq_class(0); }};
  }

 private:
  std::vector<std::vector<mpq_class>> patterns_;
  std::size_t period_ = 0;
};

/// ds(r, s) = |r| if r = -s, else 0: the limiting covariance of Tr(U^r) and
/// Tr(U^s) for a Haar unitary U.
inline long ds_covariance(long r, long s) {
  detail::require(r != 0 && s != 0, "ds_covariance: exponents must be nonzero");
  return r == -s ? std::labs(r) : 0;
}

/// The limit distribution of a single Haar unitary: letter `i` stands for
/// u^{exponents[i]}. phi1(u^k) = [k = 0], phi2(u^r, u^s) = ds(r, s).
inline SecondOrderSpace haar_unitary_space(std::vector<long> exponents) {
  auto total = [exponents](const LetterWord& w) {
    long k = 0;
    for (std::size_t letter : w) k += exponents.at(letter);
    return k;
  };
  return {[total](const LetterWord& w) { return mpq_class(total(w) == 0 ? 1 : 0); },
          [total](const LetterWord& a, const LetterWord& b) {
            const long r = total(a);
            const long s = total(b);
            if (r == 0 || s == 0) return mpq_class(0);
            return mpq_class(ds_covariance(r, s));
          }};
}

/// phi1/phi2 from finite tables keyed by canonical rotations. A word missing
/// from a table is an error rather than an implicit zero.
class TableSpace {
 public:
  void set_phi1(const LetterWord& w, mpq_class v) { phi1_[canonical_rotation(w)] = std::move(v); }
  void set_phi2(const LetterWord& a, const LetterWord& b, mpq_class v) {
    phi2_[{canonical_rotation(a), canonical_rotation(b)}] = std::move(v);
  }

  mpq_class phi1(const LetterWord& w) const {
    auto it = phi1_.find(canonical_rotation(w));
    if (it == phi1_.end()) throw InvalidArgument("phi1 table has no entry for word " + describe(w));
    return it->second;
  }
  mpq_class phi2(const LetterWord& a, const LetterWord& b) const {
    auto it = phi2_.find({canonical_rotation(a), canonical_rotation(b)});
    if (it == phi2_.end())
      throw InvalidArgument("phi2 table has no entry for words " + describe(a) + ", " + describe(b));
    return it->second;
  }

  SecondOrderSpace space() const {
    auto self = std::make_shared<TableSpace>(*this);
    return {[self](const LetterWord& w) { return self->phi1(w); },
            [self](const LetterWord& a, const LetterWord& b) { return self->phi2(a, b); }};
  }

 private:
  static std::string describe(const LetterWord& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + "]";
  }
  std::map<LetterWord, mpq_class> phi1_;
  std::map<std::pair<LetterWord, LetterWord>, mpq_class> phi2_;
};

// Letters of a permutation argument: position i carries letters[i - 1],
// empty meaning the unit.
using LetterSlots = std::vector<std::optional<std::size_t>>;

namespace detail {

inline LetterWord cycle_word(const std::vector<int>& cycle, const LetterSlots& letters, int offset) {
  LetterWord w;
  for (int i : cycle) {
    const auto& slot = letters.at(static_cast<std::size_t>(offset + i - 1));
    if (slot) w.push_back(*slot);
  }
  return w;
}

inline std::vector<LetterWord> cycle_words(const Permutation& p, const LetterSlots& letters, int offset) {
  std::vector<LetterWord> out;
  for (const auto& c : p.cycles()) out.push_back(cycle_word(c, letters, offset));
  return out;
}

inline mpq_class phi1_product(const SecondOrderSpace& space, const std::vector<LetterWord>& words,
                              std::size_t skip = static_cast<std::size_t>(-1)) {
  mpq_class out = 1;
  for (std::size_t i = 0; i < words.size() && out != 0; ++i)
    if (i != skip) out *= evaluate_phi1(space, words[i]);
  return out;
}

}  // namespace detail

/// phi1 extended multiplicatively: product over cycles of p of phi1 on the
/// cycle's word. `letters` has p.size() entries.
inline mpq_class phi1_extension(const Permutation& p, const LetterSlots& letters, const SecondOrderSpace& space) {
  detail::require(static_cast<int>(letters.size()) == p.size(), "phi1_extension: one letter per position");
  return detail::phi1_product(space, detail::cycle_words(p, letters, 0));
}

enum class DerivationOrder { closed_form, left_first, right_first };

namespace detail {

inline mpq_class phi2_recursive(const SecondOrderSpace& space, std::vector<LetterWord> left,
                                std::vector<LetterWord> right, DerivationOrder order) {
  const bool split_left = left.size() > 1 && (order == DerivationOrder::left_first || right.size() == 1);
  if (split_left) {
    // phi2(c x rest, b) = phi2(c, b) phi1(rest) + phi2(rest, b) phi1(c)
    const LetterWord c = left.front();
    std::vector<LetterWord> rest(left.begin() + 1, left.end());
    return phi2_recursive(space, {c}, right, order) * phi1_product(space, rest) +
           phi2_recursive(space, rest, right, order) * evaluate_phi1(space, c);
  }
  if (right.size() > 1) {
    const LetterWord c = right.front();
    std::vector<LetterWord> rest(right.begin() + 1, right.end());
    return phi2_recursive(space, left, {c}, order) * phi1_product(space, rest) +
           phi2_recursive(space, left, rest, order) * evaluate_phi1(space, c);
  }
  return evaluate_phi2(space, left.front(), right.front());
}

}  // namespace detail

/// phi2 extended by the derivation rule in each argument. p1 acts on
/// letters[0, m), p2 on letters[m, m + n). The closed form sums over one
/// distinguished cycle per side; the recursive orders expand one side first.
inline mpq_class phi2_extension(const Permutation& p1, const Permutation& p2, const LetterSlots& letters,
                                const SecondOrderSpace& space,
                                DerivationOrder order = DerivationOrder::closed_form) {
  detail::require(static_cast<int>(letters.size()) == p1.size() + p2.size(),
                  "phi2_extension: letters must cover both index ranges exactly");
  detail::require(p1.size() > 0 && p2.size() > 0, "phi2_extension: empty argument");
  const auto left = detail::cycle_words(p1, letters, 0);
  const auto right = detail::cycle_words(p2, letters, p1.size());
  if (order != DerivationOrder::closed_form) return detail::phi2_recursive(space, left, right, order);
  mpq_class total = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    const mpq_class rest_left = detail::phi1_product(space, left, i);
    if (rest_left == 0) continue;
    for (std::size_t j = 0; j < right.size(); ++j) {
      const mpq_class rest_right = detail::phi1_product(space, right, j);
      if (rest_right == 0) continue;
      total += evaluate_phi2(space, left[i], right[j]) * rest_left * rest_right;
    }
  }
  return total;
}

/// lim k2(Tr(d_1 U^{e_1} ... d_m U^{e_m}), Tr(d_{m+1} U^{e_{m+1}} ... d_{m+n} U^{e_{m+n}}))
/// for d's with a second order limit distribution and U Haar unitary:
///
///     sum_{pi in S^(eps)_NC(m, n)} mu(pi~) phi1(gamma_{m,n} pi^{-1})[d]
///   + sum_{pi1 in NC^(eps1)(m), pi2 in NC^(eps2)(n)}
///         mu2(pi1~, pi2~) phi1(gamma_m pi1^{-1} x gamma_n pi2^{-1})[d]
///       + mu(pi1~ x pi2~) phi2(gamma_m pi1^{-1}, gamma_n pi2^{-1})[d].
///
/// Each spec must be a single trace; letter d indices select space letters.
inline mpq_class limit_k2(const TraceWordSpec& left, const TraceWordSpec& right, const SecondOrderSpace& space,
                          int cap = kDefaultEpsilonCap) {
  detail::require(left.num_groups() == 1 && right.num_groups() == 1, "limit_k2: each side must be a single trace");
  const int m = left.total_length();
  const int n = right.total_length();
  const TraceWordSpec both = TraceWordSpec::concat(std::vector<TraceWordSpec>{left, right});
  const EpsilonVector eps = both.epsilon();
  if (!eps.balanced()) return 0;

  LetterSlots letters;
  for (const auto& l : both.letters()) letters.push_back(l.d);

  mpq_class total = 0;
  const Permutation g = gamma({m, n});
  for (const auto& pi : enumerate_snc_eps(m, n, eps, cap)) {
    const mpz_class weight = mu(tilde(pi, eps));
    total += weight * phi1_extension(compose(g, pi.inverse()), letters, space);
  }

  const EpsilonVector eps1 = eps.slice(1, m);
  const EpsilonVector eps2 = eps.slice(m + 1, m + n);
  const auto nc1 = enumerate_nc_eps(eps1, cap);
  const auto nc2 = enumerate_nc_eps(eps2, cap);
  const Permutation g1 = gamma({m});
  const Permutation g2 = gamma({n});
  for (const auto& pi1 : nc1) {
    const Permutation t1 = tilde(pi1, eps1);
    const Permutation k1 = compose(g1, pi1.inverse());
    for (const auto& pi2 : nc2) {
      const Permutation t2 = tilde(pi2, eps2);
      const Permutation k2 = compose(g2, pi2.inverse());
      const mpq_class second = mu2(t1, t2);
      if (second != 0) total += second * phi1_extension(direct_sum(k1, k2), letters, space);
      total += mpq_class(mu(t1) * mu(t2)) * phi2_extension(k1, k2, letters, space);
    }
  }
  total.canonicalize();
  return total;
}

/// A cyclic word U_{i(1)}^{k(1)} ... U_{i(n)}^{k(n)} in independent Haar
/// unitaries, cyclically reduced.
class ReducedWord {
 public:
  struct Letter {
    int id;
    int power;
    friend bool operator==(const Letter&, const Letter&) = default;
  };

  ReducedWord() = default;
  explicit ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
    detail::require(!letters_.empty(), "reduced word is empty");
    for (const auto& l : letters_) detail::require(l.power != 0, "reduced word exponent must be nonzero");
    const std::size_t n = letters_.size();
    if (n >= 2)
      for (std::size_t r = 0; r < n; ++r)
        detail::require(letters_[r].id != letters_[(r + 1) % n].id,
                        "word is not cyclically reduced: adjacent letters share a matrix");
  }

  /// Parses "U1 U2^-1 U1^2" style text.
  static ReducedWord parse(const std::string& text) {
    std::vector<Letter> letters;
    std::size_t i = 0;
    while (i < text.size()) {
      if (text[i] == ' ' || text[i] == ',') {
        ++i;
        continue;
      }
      detail::require(text[i] == 'U', "reduced word: expected 'U' in '" + text + "'");
      ++i;
      std::size_t used = 0;
      const int id = std::stoi(text.substr(i), &used);
      i += used;
      int power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        power = std::stoi(text.substr(i), &used);
        i += used;
      }
      letters.push_back({id, power});
    }
    return ReducedWord(std::move(letters));
  }

  std::size_t size() const { return letters_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }

  /// The word of the adjoint: reversed order, negated exponents.
  ReducedWord inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l.power = -l.power;
    return ReducedWord(std::move(out));
  }

  std::string to_string() const {
    std::string s;
    for (const auto& l : letters_) {
      if (!s.empty()) s += ' ';
      s += "U" + std::to_string(l.id);
      if (l.power != 1) s += "^" + std::to_string(l.power);
    }
    return s;
  }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// lim k2(Tr w1, Tr w2) for independent Haar unitaries. For n = length >= 2
/// this counts the rotations r with i(s) = j(s + r) and k(s) = -l(s + r) for
/// all s, where w2 = U_{j(n)}^{l(n)} ... U_{j(1)}^{l(1)}. Words of length one
/// reduce to a single unitary and give ds(k, l) when the ids agree.
inline long reduced_word_covariance(const ReducedWord& w1, const ReducedWord& w2) {
  const std::size_t n = w1.size();
  if (n != w2.size()) return 0;
  const auto& a = w1.letters();
  if (n == 1) {
    const auto& b = w2.letters().front();
    return a.front().id == b.id ? ds_covariance(a.front().power, b.power) : 0;
  }
  // j(1..n) reads w2 right to left.
  const std::vector<ReducedWord::Letter> b(w2.letters().rbegin(), w2.letters().rend());
  long count = 0;
  for (std::size_t r = 0; r < n; ++r) {
    bool match = true;
    for (std::size_t s = 0; s < n && match; ++s) {
      const auto& bl = b[(s + r) % n];
      match = a[s].id == bl.id && a[s].power == -bl.power;
    }
    count += match ? 1 : 0;
  }
  return count;
}

/// phi2(a_1 ... a_n, b_m ... b_1) for centered elements alternating between
/// free subalgebras, as forced by second order freeness:
///
///     [n = m] sum_{k=0}^{n-1} prod_{i=1}^{n} phi1(a_i b_{i+k})      (indices mod n).
///
/// `algebra_of` tags each element; `phi1` evaluates words of elements. With
/// `check_centered`, every element must satisfy phi1 = 0.
template <class Element>
mpq_class second_order_free_covariance(const std::vector<Element>& a, const std::vector<Element>& b,
                                       const std::function<int(const Element&)>& algebra_of,
                                       const std::function<mpq_class(const std::vector<Element>&)>& phi1,
                                       bool check_centered = true) {
  detail::require(!a.empty() && !b.empty(), "second_order_free_covariance: empty word");
  auto check = [&](const std::vector<Element>& w) {
    if (w.size() >= 2)
      for (std::size_t i = 0; i < w.size(); ++i)
        detail::require(algebra_of(w[i]) != algebra_of(w[(i + 1) % w.size()]),
                        "second_order_free_covariance: word is not cyclically alternating");
    if (check_centered)
      for (const auto& e : w)
        detail::require(phi1({e}) == 0, "second_order_free_covariance: element is not centered");
  };
  check(a);
  check(b);
  const std::size_t n = a.size();
  if (n != b.size()) return 0;
  if (n == 1) {
    detail::require(algebra_of(a.front()) != algebra_of(b.front()),
                    "second_order_free_covariance: single elements from one algebra are not determined");
    return 0;
  }
  mpq_class total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mpq_class prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= phi1({a[i], b[(i + k) % n]});
    total += prod;
  }
  return total;
}

}  // namespace sofree
