#pragma once

// Alternating words in a Haar unitary and centered diagonal letters, shared by
// the second order tests and the acceptance suite.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sofree/second_order.hpp"
#include "sofree/trace_word.hpp"

namespace sofree::testing {

// U^value when `unitary`, else diagonal letter number `value`.
struct FreeElement {
  bool unitary = true;
  long value = 1;
};

inline FreeElement u(long power) { return {true, power}; }
inline FreeElement d(long letter) { return {false, letter}; }

// Trace of the product of `word`, each U^k spelled as |k| letters. A trailing
// diagonal letter is rotated to the front so every U is preceded by its D.
inline TraceWordSpec spec_of(std::vector<FreeElement> word) {
  if (!word.back().unitary) std::rotate(word.rbegin(), word.rbegin() + 1, word.rend());
  std::vector<TraceLetter> letters;
  std::optional<std::size_t> pending;
  for (const auto& e : word) {
    if (!e.unitary) {
      detail::require(!pending, "spec_of: two diagonal letters in a row");
      pending = static_cast<std::size_t>(e.value);
      continue;
    }
    detail::require(e.value != 0, "spec_of: zero power");
    const int sign = e.value > 0 ? 1 : -1;
    for (long k = 0; k < e.value * sign; ++k) {
      letters.push_back({pending, sign});
      pending.reset();
    }
  }
  detail::require(!pending, "spec_of: word has no unitary letter");
  return TraceWordSpec({letters});
}

// The product b_n ... b_1 as a word.
inline std::vector<FreeElement> reversed(std::vector<FreeElement> b) { return {b.rbegin(), b.rend()}; }

// phi1 on words of one or two elements: Haar moments on U, the diagonal
// space on D, and factorisation across the two algebras.
inline mpq_class pair_phi1(const std::vector<FreeElement>& w, const DiagonalPatternSpace& diag) {
  detail::require(w.size() == 1 || w.size() == 2, "pair_phi1: words of length one or two only");
  if (w.size() == 2 && w[0].unitary != w[1].unitary) return pair_phi1({w[0]}, diag) * pair_phi1({w[1]}, diag);
  if (w[0].unitary) {
    long total = 0;
    for (const auto& e : w) total += e.value;
    return total == 0 ? 1 : 0;
  }
  LetterWord letters;
  for (const auto& e : w) letters.push_back(static_cast<std::size_t>(e.value));
  return diag.phi1(letters);
}

inline mpq_class free_covariance(const std::vector<FreeElement>& a, const std::vector<FreeElement>& b,
                                 const DiagonalPatternSpace& diag) {
  return second_order_free_covariance<FreeElement>(
      a, b, [](const FreeElement& e) { return e.unitary ? 0 : 1; },
      [&](const std::vector<FreeElement>& w) { return pair_phi1(w, diag); });
}

// Centered period-4 diagonal letters.
inline DiagonalPatternSpace centered_diagonals() {
  return DiagonalPatternSpace({{1, -1, 0, 0}, {2, 0, -1, -1}, {1, 1, -1, -1}, {0, 1, 0, -1}});
}

struct AlternatingCase {
  std::string name;
  std::vector<FreeElement> a;  // a_1 ... a_n
  std::vector<FreeElement> b;  // b_1 ... b_n; the second trace is of b_n ... b_1
};

// Alternating centered cases with n = m in {2, 4, 6} elements.
inline std::vector<AlternatingCase> alternating_suite() {
  return {
      {"B U | C U*", {d(0), u(1)}, {d(1), u(-1)}},
      {"B U | B U*", {d(2), u(1)}, {d(2), u(-1)}},
      {"B U^2 | C U^-2", {d(0), u(2)}, {d(3), u(-2)}},
      {"B U | C U", {d(0), u(1)}, {d(1), u(1)}},
      {"B U^2 | C U^-1", {d(1), u(2)}, {d(2), u(-1)}},
      {"B U | C U^-2", {d(2), u(1)}, {d(0), u(-2)}},
      {"B1 U B2 U* | C1 U C2 U*", {d(0), u(1), d(1), u(-1)}, {d(2), u(1), d(3), u(-1)}},
      {"B1 U B2 U* | C1 U* C2 U", {d(0), u(1), d(1), u(-1)}, {d(2), u(-1), d(3), u(1)}},
      {"B1 U B2 U | C1 U* C2 U*", {d(1), u(1), d(2), u(1)}, {d(0), u(-1), d(3), u(-1)}},
      {"B1 U B1 U* | B1 U* B1 U", {d(2), u(1), d(2), u(-1)}, {d(2), u(-1), d(2), u(1)}},
      {"B1 U B2 U^-1 | C1 U C2 U", {d(0), u(1), d(1), u(-1)}, {d(2), u(1), d(3), u(1)}},
      {"B1 U B2 U B3 U | C U*^3", {d(0), u(1), d(1), u(1), d(2), u(1)}, {d(3), u(-1), d(1), u(-1), d(0), u(-1)}},
      {"B1 U B2 U* B3 U | C U* C U C U*", {d(0), u(1), d(1), u(-1), d(2), u(1)},
       {d(2), u(-1), d(0), u(1), d(1), u(-1)}},
      {"B1 U B2 U* | B2 U B1 U*", {d(0), u(1), d(1), u(-1)}, {d(1), u(1), d(0), u(-1)}},
      {"B1 U B2 U B3 U | B1 U* B2 U* B3 U*", {d(0), u(1), d(1), u(1), d(2), u(1)},
       {d(0), u(-1), d(1), u(-1), d(2), u(-1)}},
      {"B1 U B2 U^2 | C1 U^-2 C2 U^-1", {d(1), u(1), d(3), u(2)}, {d(3), u(-2), d(1), u(-1)}},
      {"B1 U B2 U^2 | C1 U^-1 C2 U^-2", {d(1), u(1), d(3), u(2)}, {d(3), u(-1), d(1), u(-2)}},
      {"B1 U^2 B2 U^-2 | C1 U^2 C2 U^-2", {d(0), u(2), d(1), u(-2)}, {d(2), u(2), d(3), u(-2)}},
  };
}

}  // namespace sofree::testing
