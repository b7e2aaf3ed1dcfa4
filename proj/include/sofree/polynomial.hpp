#pragma once

// Exact univariate arithmetic in the formal symbol N: integer polynomials,
// reduced rational functions, and expansions in powers of 1/N.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sofree/errors.hpp"

namespace sofree {

/// Polynomial in N with arbitrary-precision integer coefficients, ascending
/// degree, never carrying a trailing zero coefficient.
class PolynomialZ {
 public:
  PolynomialZ() = default;
  PolynomialZ(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }
  explicit PolynomialZ(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static PolynomialZ constant(const mpz_class& c) { return PolynomialZ(std::vector<mpz_class>{c}); }

  /// c * N^k.
  static PolynomialZ monomial(const mpz_class& c, int k) {
    std::vector<mpz_class> v(static_cast<std::size_t>(k) + 1, 0);
    v.back() = c;
    return PolynomialZ(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(int k) const {
    return (k >= 0 && k <= degree()) ? coeffs_[static_cast<std::size_t>(k)] : mpz_class(0);
  }
  const mpz_class& leading() const { return coeffs_.back(); }

  /// gcd of the coefficients, non-negative.
  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
  }

  /// Primitive part with positive leading coefficient.
  PolynomialZ primitive_part() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (leading() < 0) g = -g;
    return divided_by(g);
  }

  PolynomialZ divided_by(const mpz_class& d) const {
    std::vector<mpz_class> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), d.get_mpz_t());
    }
    return PolynomialZ(std::move(out));
  }

  mpq_class evaluate(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + mpq_class(*it);
    return acc;
  }

  PolynomialZ operator-() const {
    auto out = coeffs_;
    for (auto& c : out) c = -c;
    return PolynomialZ(std::move(out));
  }

  friend PolynomialZ operator+(const PolynomialZ& a, const PolynomialZ& b) {
    std::vector<mpz_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return PolynomialZ(std::move(out));
  }
  friend PolynomialZ operator-(const PolynomialZ& a, const PolynomialZ& b) { return a + (-b); }
  friend PolynomialZ operator*(const PolynomialZ& a, const PolynomialZ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolynomialZ(std::move(out));
  }
  PolynomialZ& operator+=(const PolynomialZ& o) { return *this = *this + o; }
  PolynomialZ& operator-=(const PolynomialZ& o) { return *this = *this - o; }
  PolynomialZ& operator*=(const PolynomialZ& o) { return *this = *this * o; }

  friend bool operator==(const PolynomialZ& a, const PolynomialZ& b) { return a.coeffs_ == b.coeffs_; }

  /// Exact division; throws ArithmeticError when `divisor` does not divide.
  PolynomialZ exact_div(const PolynomialZ& divisor) const {
    if (divisor.is_zero()) throw ArithmeticError("polynomial division by zero");
    auto rem = coeffs_;
    const int dd = divisor.degree();
    const int dq = degree() - dd;
    if (is_zero()) return {};
    if (dq < 0) throw ArithmeticError("inexact polynomial division");
    std::vector<mpz_class> quot(static_cast<std::size_t>(dq) + 1, 0);
    for (int k = dq; k >= 0; --k) {
      mpz_class& top = rem[static_cast<std::size_t>(k + dd)];
      if (top == 0) continue;
      if (!mpz_divisible_p(top.get_mpz_t(), divisor.leading().get_mpz_t()))
        throw ArithmeticError("inexact polynomial division");
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), divisor.leading().get_mpz_t());
      quot[static_cast<std::size_t>(k)] = q;
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    for (const auto& c : rem)
      if (c != 0) throw ArithmeticError("inexact polynomial division");
    return PolynomialZ(std::move(quot));
  }

  /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
  PolynomialZ pseudo_remainder(const PolynomialZ& b) const {
    PolynomialZ r = *this;
    const int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
      const int shift = r.degree() - db;
      r = PolynomialZ::constant(b.leading()) * r -
          PolynomialZ::monomial(r.leading(), shift) * b;
    }
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const mpz_class& c = coeffs_[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      mpz_class mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (k == 0 || mag != 1) os << mag.get_str();
      if (k >= 1) os << (k == 0 || mag != 1 ? "*N" : "N");
      if (k >= 2) os << '^' << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<mpz_class> coeffs_;
};

/// gcd in Z[N], primitive with positive leading coefficient (times the
/// integer content gcd).
inline PolynomialZ gcd(const PolynomialZ& a, const PolynomialZ& b) {
  if (a.is_zero()) return b.is_zero() ? PolynomialZ{} : b.primitive_part() * PolynomialZ::constant(b.content());
  if (b.is_zero()) return a.primitive_part() * PolynomialZ::constant(a.content());
  mpz_class content_gcd;
  mpz_gcd(content_gcd.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
  PolynomialZ x = a.primitive_part();
  PolynomialZ y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    PolynomialZ r = x.pseudo_remainder(y);
    x = std::move(y);
    y = r.primitive_part();
  }
  return x.primitive_part() * PolynomialZ::constant(content_gcd);
}

/// numerator / denominator in canonical form: coprime in Z[N], jointly
/// primitive integer coefficients, denominator with positive leading
/// coefficient. Equality is structural.
class RationalFunctionN {
 public:
  RationalFunctionN() : num_(), den_{1} {}
  RationalFunctionN(PolynomialZ num, PolynomialZ den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
    canonicalize();
  }
  explicit RationalFunctionN(PolynomialZ num) : RationalFunctionN(std::move(num), PolynomialZ{1}) {}
  static RationalFunctionN constant(long c) { return RationalFunctionN(PolynomialZ{c}); }

  const PolynomialZ& numerator() const { return num_; }
  const PolynomialZ& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Throws InvalidArgument at a pole.
  mpq_class evaluate(const mpq_class& n) const {
    const mpq_class d = den_.evaluate(n);
    detail::require(d != 0, "rational function evaluated at a pole");
    mpq_class out = num_.evaluate(n) / d;
    out.canonicalize();
    return out;
  }

  friend RationalFunctionN operator+(const RationalFunctionN& a, const RationalFunctionN& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunctionN operator-(const RationalFunctionN& a, const RationalFunctionN& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunctionN operator*(const RationalFunctionN& a, const RationalFunctionN& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunctionN operator/(const RationalFunctionN& a, const RationalFunctionN& b) {
    if (b.is_zero()) throw ArithmeticError("rational function division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RationalFunctionN operator-() const { return {-num_, den_}; }
  RationalFunctionN& operator+=(const RationalFunctionN& o) { return *this = *this + o; }
  RationalFunctionN& operator-=(const RationalFunctionN& o) { return *this = *this - o; }
  RationalFunctionN& operator*=(const RationalFunctionN& o) { return *this = *this * o; }

  friend bool operator==(const RationalFunctionN& a, const RationalFunctionN& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// "num / den" with explicit integer coefficients.
  std::string to_string() const {
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      den_ = PolynomialZ{1};
      return;
    }
    const PolynomialZ g = gcd(num_, den_).primitive_part();
    if (g.degree() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), num_.content().get_mpz_t(), den_.content().get_mpz_t());
    if (den_.leading() < 0) c = -c;
    if (c != 1) {
      num_ = num_.divided_by(c);
      den_ = den_.divided_by(c);
    }
  }

  PolynomialZ num_;
  PolynomialZ den_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalFunctionN& f) { return os << f.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const PolynomialZ& p) { return os << p.to_string(); }

/// f(N) = sum_{j >= 0} coeffs[j] * N^{-(offset + j)}.
struct OneOverNSeries {
  long offset = 0;
  std::vector<mpq_class> coeffs;
  bool is_zero = false;

  /// Coefficient of N^{-exponent}; zero outside the computed window below the
  /// offset. Throws when the exponent lies beyond the computed order.
  mpq_class at_exponent(long exponent) const {
    if (is_zero || exponent < offset) return 0;
    const long j = exponent - offset;
    detail::require(j < static_cast<long>(coeffs.size()), "series: exponent beyond computed order");
    return coeffs[static_cast<std::size_t>(j)];
  }
};

/// Expansion at N = infinity through coefficient index `order` (inclusive),
/// by substituting x = 1/N and dividing power series.
inline OneOverNSeries series(const RationalFunctionN& f, int order) {
  detail::require(order >= 0, "series: negative order");
  OneOverNSeries out;
  if (f.is_zero()) {
    out.is_zero = true;
    out.coeffs.assign(static_cast<std::size_t>(order) + 1, 0);
    return out;
  }
  const PolynomialZ& p = f.numerator();
  const PolynomialZ& q = f.denominator();
  out.offset = q.degree() - p.degree();
  // p(N) = N^{deg p} * phat(x), q likewise; phat_i = p_{deg p - i}.
  auto reversed = [](const PolynomialZ& poly, int i) { return mpq_class(poly.coeff(poly.degree() - i)); };
  const mpq_class q0 = reversed(q, 0);
  out.coeffs.resize(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j) {
    mpq_class acc = reversed(p, j);
    for (int i = 1; i <= j; ++i) acc -= reversed(q, i) * out.coeffs[static_cast<std::size_t>(j - i)];
    acc /= q0;
    acc.canonicalize();
    out.coeffs[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

inline std::string to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

/// Parses "p/q", "p", or a decimal integer.
inline mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw InvalidArgument("malformed rational: " + text);
  detail::require(q.get_den() != 0, "rational with zero denominator: " + text);
  q.canonicalize();
  return q;
}

}  // namespace sofree
