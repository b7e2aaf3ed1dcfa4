#pragma once

// Haar unitary and GUE sampling, batched cumulant estimators with error bars,
// and the desk-scale experiments on trace fluctuations.
//
// Reproducibility: samples are split into a fixed number of batches and batch
// b draws from its own generator seeded with (seed, b), so results do not
// depend on the number of worker threads.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sofree/errors.hpp"
#include "sofree/permutation.hpp"
#include "sofree/second_order.hpp"
#include "sofree/trace_word.hpp"
#include "sofree/weingarten.hpp"

namespace sofree::mc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

inline constexpr int kNumBatches = 20;

struct RngConfig {
  std::uint64_t seed = 0;

  static constexpr const char* algorithm = "mt19937_64 seeded by seed_seq(seed_lo, seed_hi, stream)";

  Rng stream(std::uint64_t id) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
    return Rng(seq);
  }
};

/// N x N matrix of i.i.d. standard complex Gaussians, E|z|^2 = 1.
inline ComplexMatrix sample_ginibre(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  return z;
}

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) moved
/// into Q, so that the factorization is unique and Q is exactly Haar.
inline ComplexMatrix sample_haar_unitary(int n, Rng& rng) {
  detail::require(n >= 1, "sample_haar_unitary: N must be positive");
  Eigen::HouseholderQR<ComplexMatrix> qr(sample_ginibre(n, rng));
  ComplexMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= a > 0 ? d / a : Complex(1.0);
  }
  return q;
}

/// GUE with E|a_ij|^2 = 1/N off the diagonal and real diagonal of variance
/// 1/N; the spectrum approaches the semicircle on [-2, 2].
inline ComplexMatrix sample_gue(int n, Rng& rng) {
  detail::require(n >= 1, "sample_gue: N must be positive");
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = Complex(s * normal(rng), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex z(s * std::sqrt(0.5) * normal(rng), s * std::sqrt(0.5) * normal(rng));
      a(i, j) = z;
      a(j, i) = std::conj(z);
    }
  }
  return a;
}

/// Tr(X Y) without forming the product.
inline Complex trace_of_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x.array() * y.transpose().array()).sum();
}

/// X^k for k >= 0 (k = 0 gives the identity).
inline ComplexMatrix matrix_power(const ComplexMatrix& x, int k) {
  ComplexMatrix out = ComplexMatrix::Identity(x.rows(), x.cols());
  ComplexMatrix base = x;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

/// U^k for a unitary U; negative k uses the adjoint.
inline ComplexMatrix unitary_power(const ComplexMatrix& u, int k) {
  return k >= 0 ? matrix_power(u, k) : matrix_power(u.adjoint(), -k);
}

/// Product of traces of a TraceWordSpec with the given U and letters; empty
/// d means the identity.
inline Complex evaluate_trace_word(const TraceWordSpec& spec, const ComplexMatrix& u,
                                   const std::vector<ComplexMatrix>& d) {
  const ComplexMatrix u_star = u.adjoint();
  Complex out(1.0);
  std::size_t pos = 0;
  for (int m : spec.group_lengths()) {
    ComplexMatrix acc = ComplexMatrix::Identity(u.rows(), u.cols());
    for (int k = 0; k < m; ++k, ++pos) {
      const auto& letter = spec.letters()[pos];
      if (letter.d) acc = acc * d.at(*letter.d);
      acc = acc * (letter.eps == 1 ? u : u_star);
    }
    out *= acc.trace();
  }
  return out;
}

inline Complex evaluate_reduced_word(const ReducedWord& w, const std::map<int, ComplexMatrix>& unitaries) {
  const ComplexMatrix* first = &unitaries.at(w.letters().front().id);
  ComplexMatrix acc = ComplexMatrix::Identity(first->rows(), first->cols());
  for (const auto& l : w.letters()) acc = acc * unitary_power(unitaries.at(l.id), l.power);
  return acc.trace();
}

struct CumulantEstimate {
  Complex value;
  double std_error = 0.0;
  long sample_count = 0;
};

/// Observations split into kNumBatches batches; each batch is a
/// (samples x observables) matrix.
class SampleSet {
 public:
  SampleSet(std::vector<Eigen::MatrixXcd> batches, int num_observables)
      : batches_(std::move(batches)), num_observables_(num_observables) {}

  int num_observables() const { return num_observables_; }
  long sample_count() const {
    long n = 0;
    for (const auto& b : batches_) n += b.rows();
    return n;
  }
  const std::vector<Eigen::MatrixXcd>& batches() const { return batches_; }

  /// k1 of observable i.
  CumulantEstimate k1(int i) const {
    return estimate([&](const Eigen::MatrixXcd& x) { return x.col(i).mean(); });
  }

  /// Unbiased bilinear covariance (no complex conjugation).
  CumulantEstimate k2(int i, int j) const {
    return estimate([&](const Eigen::MatrixXcd& x) {
      const double n = static_cast<double>(x.rows());
      const auto a = x.col(i).array() - x.col(i).mean();
      const auto b = x.col(j).array() - x.col(j).mean();
      return (a * b).sum() / (n - 1.0);
    });
  }

  /// Third k-statistic n / ((n-1)(n-2)) sum of centered triple products.
  CumulantEstimate k3(int i, int j, int k) const {
    return estimate([&](const Eigen::MatrixXcd& x) {
      const double n = static_cast<double>(x.rows());
      const auto a = x.col(i).array() - x.col(i).mean();
      const auto b = x.col(j).array() - x.col(j).mean();
      const auto c = x.col(k).array() - x.col(k).mean();
      return (a * b * c).sum() * n / ((n - 1.0) * (n - 2.0));
    });
  }

  /// Pooled skewness and excess kurtosis of the real sequence f(observations).
  std::pair<double, double> shape(const std::function<double(const Eigen::RowVectorXcd&)>& f) const {
    std::vector<double> v;
    for (const auto& b : batches_)
      for (Eigen::Index r = 0; r < b.rows(); ++r) v.push_back(f(b.row(r)));
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : v) {
      const double d = x - mean;
      m2 += d * d;
      m3 += d * d * d;
      m4 += d * d * d * d;
    }
    const double n = static_cast<double>(v.size());
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 == 0) return {0.0, 0.0};
    return {m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
  }

 private:
  template <class Statistic>
  CumulantEstimate estimate(Statistic stat) const {
    Eigen::MatrixXcd pooled(sample_count(), num_observables_);
    Eigen::Index row = 0;
    for (const auto& b : batches_) {
      pooled.middleRows(row, b.rows()) = b;
      row += b.rows();
    }
    CumulantEstimate out;
    out.value = stat(pooled);
    out.sample_count = sample_count();
    std::vector<Complex> per_batch;
    for (const auto& b : batches_) per_batch.push_back(stat(b));
    Complex mean(0.0);
    for (const auto& v : per_batch) mean += v;
    mean /= static_cast<double>(per_batch.size());
    double var_re = 0, var_im = 0;
    for (const auto& v : per_batch) {
      var_re += std::pow(v.real() - mean.real(), 2);
      var_im += std::pow(v.imag() - mean.imag(), 2);
    }
    const double b = static_cast<double>(per_batch.size());
    var_re /= b - 1.0;
    var_im /= b - 1.0;
    out.std_error = std::sqrt((var_re + var_im) / b);
    return out;
  }

  std::vector<Eigen::MatrixXcd> batches_;
  int num_observables_;
};

inline int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Draws `samples` observation vectors. `observe(rng, out)` fills one row
/// (length num_observables) from a fresh sample.
inline SampleSet collect(const std::function<void(Rng&, Eigen::Ref<Eigen::RowVectorXcd>)>& observe,
                         int num_observables, long samples, const RngConfig& config, int threads = 0) {
  detail::require(samples >= 100, "monte carlo: need at least 100 samples");
  detail::require(num_observables >= 1, "monte carlo: no observables");
  if (threads <= 0) threads = default_threads();
  threads = std::min(threads, kNumBatches);
  std::vector<Eigen::MatrixXcd> batches(kNumBatches);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int b = next++; b < kNumBatches; b = next++) {
      const long rows = samples / kNumBatches + (b < samples % kNumBatches ? 1 : 0);
      Rng rng = config.stream(static_cast<std::uint64_t>(b));
      Eigen::MatrixXcd x(rows, num_observables);
      for (long r = 0; r < rows; ++r) {
        Eigen::RowVectorXcd row(num_observables);
        observe(rng, row);
        x.row(r) = row;
      }
      batches[static_cast<std::size_t>(b)] = std::move(x);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return SampleSet(std::move(batches), num_observables);
}

/// Observables of one random matrix from `sampler`.
struct CumulantTable {
  std::vector<CumulantEstimate> k1;
  std::vector<std::vector<CumulantEstimate>> k2;
  std::vector<std::pair<std::array<int, 3>, CumulantEstimate>> k3;
};

inline CumulantTable empirical_cumulants(const std::vector<std::function<Complex(const ComplexMatrix&)>>& observables,
                                         const std::function<ComplexMatrix(Rng&)>& sampler, long samples,
                                         const RngConfig& config, const std::vector<std::array<int, 3>>& triples = {},
                                         int threads = 0) {
  const int k = static_cast<int>(observables.size());
  const SampleSet set = collect(
      [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
        const ComplexMatrix x = sampler(rng);
        for (int i = 0; i < k; ++i) row(i) = observables[static_cast<std::size_t>(i)](x);
      },
      k, samples, config, threads);
  CumulantTable out;
  for (int i = 0; i < k; ++i) out.k1.push_back(set.k1(i));
  out.k2.assign(static_cast<std::size_t>(k), {});
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out.k2[static_cast<std::size_t>(i)].push_back(set.k2(i, j));
  for (const auto& t : triples) out.k3.emplace_back(t, set.k3(t[0], t[1], t[2]));
  return out;
}

struct ReportRow {
  std::string label;
  Complex estimate;
  double std_error = 0.0;
  double target = 0.0;
  double sigmas = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Diagnostic {
  std::string label;
  double value = 0.0;
  double threshold = 0.0;  // pass iff |value| < threshold; 0 means report only
  bool pass = true;
};

struct Report {
  std::string experiment;
  std::string notes;
  long N = 0;
  long samples = 0;
  RngConfig rng;
  std::vector<ReportRow> rows;
  std::vector<Diagnostic> diagnostics;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    for (const auto& d : diagnostics)
      if (!d.pass) return false;
    return true;
  }
};

/// Pass iff |estimate - target| <= max(n_sigma * std_error, floor).
inline ReportRow make_row(std::string label, const CumulantEstimate& e, double target, double n_sigma = 4.0,
                          double floor = 0.0) {
  ReportRow row;
  row.label = std::move(label);
  row.estimate = e.value;
  row.std_error = e.std_error;
  row.target = target;
  const double deviation = std::abs(e.value - Complex(target));
  row.sigmas = e.std_error > 0 ? deviation / e.std_error
                               : (deviation == 0 ? 0.0 : std::numeric_limits<double>::infinity());
  row.tolerance = std::max(n_sigma * e.std_error, floor);
  row.pass = deviation <= row.tolerance;
  return row;
}

/// k2(Tr U^r, Tr U^s) for all nonzero |r|, |s| <= max_power against ds(r, s).
inline Report experiment_ds(int max_power, int n, long samples, const RngConfig& config, int threads = 0) {
  detail::require(max_power >= 1, "experiment_ds: max_power must be positive");
  std::vector<int> powers;
  for (int r = -max_power; r <= max_power; ++r)
    if (r != 0) powers.push_back(r);
  const int k = static_cast<int>(powers.size());
  const SampleSet set = collect(
      [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
        const ComplexMatrix u = sample_haar_unitary(n, rng);
        ComplexMatrix p = u;
        for (int r = 1; r <= max_power; ++r) {
          const Complex t = p.trace();
          row(max_power + r - 1) = t;          // r
          row(max_power - r) = std::conj(t);   // -r
          if (r < max_power) p = p * u;
        }
      },
      k, samples, config, threads);
  Report rep{"ds", "k2(Tr U^r, Tr U^s) for Haar U against |r| [r = -s]; 4 sigma", n, samples, config, {}, {}};
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      const int r = powers[static_cast<std::size_t>(a)];
      const int s = powers[static_cast<std::size_t>(b)];
      rep.rows.push_back(make_row("k2(Tr U^" + std::to_string(r) + ", Tr U^" + std::to_string(s) + ")",
                                  set.k2(a, b), static_cast<double>(ds_covariance(r, s))));
    }
  return rep;
}

/// Trace observables of reduced words in independent Haar unitaries: every
/// k1 against 0, k2(Tr w_a, Tr w_b) against the covariance of (w_a, w_b) and
/// k2(Tr w_a, conj Tr w_b) against that of (w_a, w_b^{-1}). Skewness of the
/// real and imaginary parts must stay below 0.1 in magnitude.
inline Report experiment_reduced_words(const std::vector<ReducedWord>& words, int n, long samples,
                                       const RngConfig& config, int threads = 0) {
  detail::require(!words.empty(), "experiment_reduced_words: no words");
  std::set<int> ids;
  for (const auto& w : words)
    for (const auto& l : w.letters()) ids.insert(l.id);
  const int k = static_cast<int>(words.size());
  const SampleSet set = collect(
      [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
        std::map<int, ComplexMatrix> us;
        for (int id : ids) us.emplace(id, sample_haar_unitary(n, rng));
        for (int i = 0; i < k; ++i) row(i) = evaluate_reduced_word(words[static_cast<std::size_t>(i)], us);
      },
      k, samples, config, threads);
  Report rep{"words",
             "reduced words in independent Haar unitaries; k2 against rotation-matching counts; 4 sigma",
             n, samples, config, {}, {}};
  auto name = [&](int i) { return "Tr(" + words[static_cast<std::size_t>(i)].to_string() + ")"; };
  for (int a = 0; a < k; ++a) rep.rows.push_back(make_row("k1(" + name(a) + ")", set.k1(a), 0.0));
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      const auto& wa = words[static_cast<std::size_t>(a)];
      const auto& wb = words[static_cast<std::size_t>(b)];
      rep.rows.push_back(make_row("k2(" + name(a) + ", " + name(b) + ")", set.k2(a, b),
                                  static_cast<double>(reduced_word_covariance(wa, wb))));
      // k2(X, conj Y) from the bilinear k2 on conjugated columns.
      const CumulantEstimate herm = [&] {
        std::vector<Eigen::MatrixXcd> batches;
        for (const auto& bt : set.batches()) {
          Eigen::MatrixXcd two(bt.rows(), 2);
          two.col(0) = bt.col(a);
          two.col(1) = bt.col(b).conjugate();
          batches.push_back(std::move(two));
        }
        return SampleSet(std::move(batches), 2).k2(0, 1);
      }();
      rep.rows.push_back(make_row("k2(" + name(a) + ", conj " + name(b) + ")", herm,
                                  static_cast<double>(reduced_word_covariance(wa, wb.inverse()))));
    }
  for (int a = 0; a < k; ++a) {
    const auto [skew_re, kurt_re] = set.shape([a](const Eigen::RowVectorXcd& r) { return r(a).real(); });
    const auto [skew_im, kurt_im] = set.shape([a](const Eigen::RowVectorXcd& r) { return r(a).imag(); });
    rep.diagnostics.push_back({"skewness Re " + name(a), skew_re, 0.1, std::abs(skew_re) < 0.1});
    rep.diagnostics.push_back({"skewness Im " + name(a), skew_im, 0.1, std::abs(skew_im) < 0.1});
    rep.diagnostics.push_back({"excess kurtosis Re " + name(a), kurt_re, 0.0, true});
    rep.diagnostics.push_back({"excess kurtosis Im " + name(a), kurt_im, 0.0, true});
  }
  return rep;
}

/// Coefficients (ascending) of the Chebyshev polynomials used for GUE
/// fluctuations: T_0 = 2, T_1 = x, T_{n+1} = x T_n - T_{n-1}, so that
/// T_n(2 cos t) = 2 cos(n t).
inline std::vector<std::vector<double>> chebyshev_coefficients(int max_degree) {
  std::vector<std::vector<double>> t{{2.0}, {0.0, 1.0}};
  for (int n = 1; n < max_degree; ++n) {
    std::vector<double> next(static_cast<std::size_t>(n) + 2, 0.0);
    for (std::size_t i = 0; i < t[static_cast<std::size_t>(n)].size(); ++i)
      next[i + 1] += t[static_cast<std::size_t>(n)][i];
    for (std::size_t i = 0; i < t[static_cast<std::size_t>(n) - 1].size(); ++i)
      next[i] -= t[static_cast<std::size_t>(n) - 1][i];
    t.push_back(std::move(next));
  }
  t.resize(static_cast<std::size_t>(max_degree) + 1);
  return t;
}

/// Tr T_n(A) for n = 0..max_degree by the three-term recurrence on matrices.
inline std::vector<double> chebyshev_traces_recurrence(const ComplexMatrix& a, int max_degree) {
  const auto id = ComplexMatrix::Identity(a.rows(), a.cols());
  std::vector<double> out{2.0 * static_cast<double>(a.rows())};
  ComplexMatrix prev = 2.0 * id;
  ComplexMatrix cur = a;
  for (int n = 1; n <= max_degree; ++n) {
    out.push_back(cur.trace().real());
    ComplexMatrix next = a * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

/// Same traces through power sums Tr A^k, computed from A^j for j up to
/// ceil(max_degree / 2) and Tr(X Y) contractions.
inline std::vector<double> chebyshev_traces(const ComplexMatrix& a, int max_degree) {
  std::vector<ComplexMatrix> pw{ComplexMatrix::Identity(a.rows(), a.cols()), a};
  const int half = (max_degree + 1) / 2;
  for (int j = 2; j <= half; ++j) pw.push_back(pw.back() * a);
  std::vector<double> power_trace(static_cast<std::size_t>(max_degree) + 1);
  for (int k = 0; k <= max_degree; ++k) {
    const int i = std::min(k, half);
    power_trace[static_cast<std::size_t>(k)] =
        trace_of_product(pw[static_cast<std::size_t>(i)], pw[static_cast<std::size_t>(k - i)]).real();
  }
  const auto coeffs = chebyshev_coefficients(max_degree);
  std::vector<double> out;
  for (const auto& c : coeffs) {
    double s = 0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * power_trace[k];
    out.push_back(s);
  }
  return out;
}

/// Eigenvalue route, as an independent check of the two above.
inline std::vector<double> chebyshev_traces_eigen(const ComplexMatrix& a, int max_degree) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1, 0.0);
  for (double lambda : es.eigenvalues()) {
    const double t = std::acos(std::clamp(lambda / 2.0, -1.0, 1.0));
    if (std::abs(lambda) <= 2.0) {
      for (int n = 0; n <= max_degree; ++n) out[static_cast<std::size_t>(n)] += 2.0 * std::cos(n * t);
    } else {
      double p0 = 2.0, p1 = lambda;
      out[0] += p0;
      if (max_degree >= 1) out[1] += p1;
      for (int n = 2; n <= max_degree; ++n) {
        const double p2 = lambda * p1 - p0;
        out[static_cast<std::size_t>(n)] += p2;
        p0 = p1;
        p1 = p2;
      }
    }
  }
  return out;
}

/// Orthonormal polynomials Q_0..Q_d (ascending coefficients) for the moment
/// sequence m_0..m_{2d} by Gram-Schmidt on 1, x, x^2, ...
inline std::vector<std::vector<double>> orthonormal_polynomials(const std::vector<double>& moments, int degree) {
  detail::require(static_cast<int>(moments.size()) >= 2 * degree + 1, "orthonormal_polynomials: too few moments");
  auto inner = [&](const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) s += p[i] * q[j] * moments[i + j];
    return s;
  };
  std::vector<std::vector<double>> qs;
  for (int d = 0; d <= degree; ++d) {
    std::vector<double> p(static_cast<std::size_t>(d) + 1, 0.0);
    p[static_cast<std::size_t>(d)] = 1.0;
    for (const auto& q : qs) {
      const double c = inner(p, q);
      for (std::size_t i = 0; i < q.size(); ++i) p[i] -= c * q[i];
    }
    const double norm = std::sqrt(inner(p, p));
    detail::require(norm > 0, "orthonormal_polynomials: degenerate moments");
    for (double& c : p) c /= norm;
    qs.push_back(std::move(p));
  }
  return qs;
}

/// GUE trace fluctuations. Part 1: k2(Tr T_n(A), Tr T_m(A)) against n [n = m]
/// for 1 <= n <= m <= max_degree, tolerance max(4 sigma, 0.15). Part 2 (when
/// mixed_samples > 0): two independent GUEs A, B, orthonormal Q_1, Q_2 from a
/// pilot run's spectral moments, and k2 of Tr(Q_i(A) Q_j(B)) against
/// [i = k][j = l].
inline Report experiment_chebyshev(int max_degree, int n, long samples, const RngConfig& config, int threads = 0,
                                   long mixed_samples = 0, int mixed_n = 0) {
  detail::require(max_degree >= 1, "experiment_chebyshev: max_degree must be positive");
  const SampleSet set = collect(
      [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
        const auto t = chebyshev_traces(sample_gue(n, rng), max_degree);
        for (int d = 1; d <= max_degree; ++d) row(d - 1) = t[static_cast<std::size_t>(d)];
      },
      max_degree, samples, config, threads);
  Report rep{"chebyshev",
             "GUE normalized to the semicircle on [-2,2]; T_0 = 2, T_1 = x, T_{n+1} = x T_n - T_{n-1} "
             "(T_n(2 cos t) = 2 cos nt), calibrated so that k2(Tr T_n, Tr T_n) -> n. Only the Gaussian "
             "potential is tested; universality over general potentials is not reproduced.",
             n, samples, config, {}, {}};
  for (int a = 1; a <= max_degree; ++a)
    for (int b = a; b <= max_degree; ++b)
      rep.rows.push_back(make_row("k2(Tr T_" + std::to_string(a) + ", Tr T_" + std::to_string(b) + ")",
                                  set.k2(a - 1, b - 1), a == b ? a : 0.0, 4.0, 0.15));

  if (mixed_samples > 0) {
    const int mn = mixed_n > 0 ? mixed_n : n;
    // Pilot run for the spectral moments m_0..m_4 of tr(A^k).
    const RngConfig pilot_config{config.seed ^ 0x9e3779b97f4a7c15ull};
    const SampleSet pilot = collect(
        [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
          const ComplexMatrix a = sample_gue(mn, rng);
          const ComplexMatrix a2 = a * a;
          const double inv = 1.0 / mn;
          row(0) = a.trace() * inv;
          row(1) = a2.trace() * inv;
          row(2) = trace_of_product(a2, a) * inv;
          row(3) = trace_of_product(a2, a2) * inv;
        },
        4, std::max<long>(200, mixed_samples / 10), pilot_config, threads);
    std::vector<double> moments{1.0};
    for (int i = 0; i < 4; ++i) moments.push_back(pilot.k1(i).value.real());
    const auto q = orthonormal_polynomials(moments, 2);
    const RngConfig mixed_config{config.seed ^ 0xd1b54a32d192ed03ull};
    const SampleSet mixed = collect(
        [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
          const ComplexMatrix a = sample_gue(mn, rng);
          const ComplexMatrix b = sample_gue(mn, rng);
          const auto id = ComplexMatrix::Identity(mn, mn);
          std::array<ComplexMatrix, 3> pa{id, a, a * a};
          std::array<ComplexMatrix, 3> pb{id, b, b * b};
          auto eval = [&](const std::vector<double>& c, const std::array<ComplexMatrix, 3>& p) {
            ComplexMatrix out = ComplexMatrix::Zero(mn, mn);
            for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * p[k];
            return out;
          };
          const ComplexMatrix qa[2] = {eval(q[1], pa), eval(q[2], pa)};
          const ComplexMatrix qb[2] = {eval(q[1], pb), eval(q[2], pb)};
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) row(2 * i + j) = trace_of_product(qa[i], qb[j]);
        },
        4, mixed_samples, mixed_config, threads);
    for (int x = 0; x < 4; ++x)
      for (int y = x; y < 4; ++y) {
        const std::string lx = "Tr(Q_" + std::to_string(x / 2 + 1) + "(A) Q_" + std::to_string(x % 2 + 1) + "(B))";
        const std::string ly = "Tr(Q_" + std::to_string(y / 2 + 1) + "(A) Q_" + std::to_string(y % 2 + 1) + "(B))";
        rep.rows.push_back(make_row("k2(" + lx + ", " + ly + ")", mixed.k2(x, y), x == y ? 1.0 : 0.0, 4.0, 0.15));
      }
    rep.notes += " Mixed part: two independent GUEs of size " + std::to_string(mn) + ", " +
                 std::to_string(mixed_samples) + " samples, Q_n from pilot-run moments.";
  }
  return rep;
}

/// E(U_11 U_22 conj(U_{1 pi(1)}) conj(U_{2 pi(2)})) for both pi in S_2 against
/// Wg(N, pi), plus E|U_11|^2 against 1/N.
inline Report experiment_weingarten(int n, long samples, const RngConfig& config, int threads = 0) {
  detail::require(n >= 2, "experiment_weingarten: N must be at least 2");
  const SampleSet set = collect(
      [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
        const ComplexMatrix u = sample_haar_unitary(n, rng);
        const Complex u11 = u(0, 0), u22 = u(1, 1), u12 = u(0, 1), u21 = u(1, 0);
        row(0) = u11 * u22 * std::conj(u11) * std::conj(u22);
        row(1) = u11 * u22 * std::conj(u12) * std::conj(u21);
        row(2) = std::norm(u11);
      },
      3, samples, config, threads);
  Report rep{"weingarten", "entrywise Haar moments against exact Weingarten values; 4 sigma", n, samples, config,
             {}, {}};
  const Permutation id = Permutation::identity(2);
  const Permutation swap = Permutation::from_cycles(2, {{1, 2}});
  rep.rows.push_back(make_row("E(U11 U22 conj(U11) conj(U22))", set.k1(0), weingarten_at(id, n).get_d()));
  rep.rows.push_back(make_row("E(U11 U22 conj(U12) conj(U21))", set.k1(1), weingarten_at(swap, n).get_d()));
  rep.rows.push_back(make_row("E|U11|^2", set.k1(2), weingarten_at(Permutation::identity(1), n).get_d()));
  return rep;
}

}  // namespace sofree::mc
