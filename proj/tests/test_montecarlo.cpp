#include <gtest/gtest.h>

#include <cmath>

#include "sofree/montecarlo.hpp"

using namespace sofree;
using namespace sofree::mc;

namespace {

ComplexMatrix to_complex(const ExactMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

}  // namespace

TEST(Sampling, HaarIsUnitary) {
  Rng rng(1);
  for (int n : {1, 2, 7, 40}) {
    const auto u = sample_haar_unitary(n, rng);
    EXPECT_LT((u * u.adjoint() - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
  }
  EXPECT_THROW(sample_haar_unitary(0, rng), InvalidArgument);
}

TEST(Sampling, GueIsHermitianWithSemicircleMoments) {
  const int n = 10;
  const SampleSet set = collect(
      [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
        const auto a = sample_gue(n, rng);
        const ComplexMatrix a2 = a * a;
        row(0) = a2.trace() / double(n);
        row(1) = trace_of_product(a2, a2) / double(n);
        row(2) = (a - a.adjoint()).norm();
      },
      3, 4000, RngConfig{7}, 1);
  // E tr A^2 = 1, E tr A^4 = 2 + 1/N^2.
  EXPECT_TRUE(make_row("m2", set.k1(0), 1.0).pass);
  EXPECT_TRUE(make_row("m4", set.k1(1), 2.0 + 1.0 / (n * n)).pass);
  EXPECT_EQ(set.k1(2).value, Complex(0.0));
}

TEST(Matrices, TraceHelpers) {
  Rng rng(2);
  const auto x = sample_ginibre(5, rng);
  const auto y = sample_ginibre(5, rng);
  EXPECT_LT(std::abs(trace_of_product(x, y) - (x * y).trace()), 1e-12);
  EXPECT_LT((matrix_power(x, 5) - x * x * x * x * x).norm(), 1e-9);
  EXPECT_LT((matrix_power(x, 0) - ComplexMatrix::Identity(5, 5)).norm(), 1e-15);
  const auto u = sample_haar_unitary(5, rng);
  EXPECT_LT((unitary_power(u, -2) - u.adjoint() * u.adjoint()).norm(), 1e-12);
  // Tr(X U X U*) Tr(U): each position is a letter followed by U or U*.
  const TraceWordSpec spec({{{0, 1}, {0, -1}}, {{std::nullopt, 1}}});
  const std::vector<ComplexMatrix> d{x};
  EXPECT_LT(std::abs(evaluate_trace_word(spec, u, d) - (x * u * x * u.adjoint()).trace() * u.trace()), 1e-10);
  const std::map<int, ComplexMatrix> us{{1, u}, {2, y}};
  EXPECT_LT(std::abs(evaluate_reduced_word(ReducedWord::parse("U1 U2^2"), us) - (u * y * y).trace()), 1e-10);
}

TEST(Estimators, ConstantObservableHasNoSpread) {
  const SampleSet set = collect([](Rng&, Eigen::Ref<Eigen::RowVectorXcd> row) { row(0) = Complex(3.0, -1.0); }, 1,
                                500, RngConfig{1}, 1);
  EXPECT_EQ(set.sample_count(), 500);
  EXPECT_EQ(set.k1(0).value, Complex(3.0, -1.0));
  EXPECT_EQ(set.k1(0).std_error, 0.0);
  EXPECT_NEAR(std::abs(set.k2(0, 0).value), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(set.k3(0, 0, 0).value), 0.0, 1e-12);
  EXPECT_THROW(collect([](Rng&, Eigen::Ref<Eigen::RowVectorXcd>) {}, 1, 99, RngConfig{1}, 1), InvalidArgument);
}

TEST(Estimators, GaussianCumulants) {
  // X standard normal, Y = X^2: k2(X, X) = 1, k3(X, X, X) = 0, k3(Y, Y, Y) = 8.
  const SampleSet set = collect(
      [](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
        std::normal_distribution<double> z;
        const double x = z(rng);
        row(0) = x;
        row(1) = x * x;
      },
      2, 40000, RngConfig{11}, 1);
  EXPECT_TRUE(make_row("k2", set.k2(0, 0), 1.0).pass);
  EXPECT_TRUE(make_row("k2xy", set.k2(0, 1), 0.0).pass);
  EXPECT_TRUE(make_row("k3", set.k3(0, 0, 0), 0.0).pass);
  EXPECT_TRUE(make_row("k3y", set.k3(1, 1, 1), 8.0).pass);
  const auto [skew, kurt] = set.shape([](const Eigen::RowVectorXcd& r) { return r(0).real(); });
  EXPECT_LT(std::abs(skew), 0.05);
  EXPECT_LT(std::abs(kurt), 0.1);
}

TEST(Estimators, ReproducibleAcrossThreadCounts) {
  auto run = [](int threads, std::uint64_t seed) {
    return collect(
        [](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) { row(0) = sample_haar_unitary(3, rng).trace(); }, 1, 400,
        RngConfig{seed}, threads);
  };
  const auto a = run(1, 5);
  const auto b = run(3, 5);
  const auto c = run(1, 6);
  EXPECT_EQ(a.k2(0, 0).value, b.k2(0, 0).value);
  EXPECT_EQ(a.k2(0, 0).std_error, b.k2(0, 0).std_error);
  EXPECT_NE(a.k2(0, 0).value, c.k2(0, 0).value);
}

TEST(Estimators, StandardErrorShrinksLikeRootN) {
  auto se = [](long samples) {
    return collect(
               [](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
                 std::normal_distribution<double> z;
                 row(0) = z(rng);
               },
               1, samples, RngConfig{3}, 1)
        .k1(0)
        .std_error;
  };
  const double ratio = se(32000) / se(8000);
  EXPECT_GT(ratio, 0.3);
  EXPECT_LT(ratio, 0.75);
}

TEST(Estimators, MakeRowTolerance) {
  const CumulantEstimate e{Complex(1.1, 0.0), 0.05, 100};
  EXPECT_FALSE(make_row("x", e, 1.0, 1.0).pass);
  EXPECT_TRUE(make_row("x", e, 1.0, 4.0).pass);
  EXPECT_TRUE(make_row("x", e, 1.0, 1.0, 0.15).pass);
  EXPECT_DOUBLE_EQ(make_row("x", e, 1.0, 4.0).tolerance, 0.2);
}

TEST(ExactVsEmpirical, SmallN) {
  // Exact moments at N = 3 against 10^5 Haar samples.
  const long n = 3;
  ExactMatrix a(3), b(3);
  const int av[3][3] = {{1, 2, 0}, {0, -1, 1}, {2, 0, 1}};
  const int bv[3][3] = {{0, 1, 1}, {1, 2, 0}, {-1, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a(i, j) = av[i][j];
      b(i, j) = bv[i][j];
    }
  const std::vector<ExactMatrix> exact{a, b};
  const std::vector<ComplexMatrix> numeric{to_complex(a), to_complex(b)};
  const std::optional<std::size_t> I;
  const std::vector<TraceWordSpec> specs{
      TraceWordSpec({{{0, 1}, {1, -1}}}),
      TraceWordSpec({{{0, 1}}, {{1, -1}}}),
      TraceWordSpec({{{0, 1}, {1, 1}, {0, -1}, {I, -1}}}),
      TraceWordSpec({{{0, 1}, {1, -1}}, {{0, 1}, {I, -1}}}),
      TraceWordSpec({{{I, 1}, {I, 1}}, {{I, -1}}, {{I, -1}}}),
      TraceWordSpec({{{0, 1}, {1, 1}, {0, 1}}, {{1, -1}, {0, -1}, {I, -1}}}),
  };
  const int k = static_cast<int>(specs.size());
  const SampleSet set = collect(
      [&](Rng& rng, Eigen::Ref<Eigen::RowVectorXcd> row) {
        const auto u = sample_haar_unitary(static_cast<int>(n), rng);
        for (int i = 0; i < k; ++i) row(i) = evaluate_trace_word(specs[static_cast<std::size_t>(i)], u, numeric);
      },
      k, 100000, RngConfig{17}, 1);
  for (int i = 0; i < k; ++i) {
    const double target = exact_mixed_moment(specs[static_cast<std::size_t>(i)], exact, n).get_d();
    const auto row = make_row("spec " + std::to_string(i), set.k1(i), target);
    EXPECT_TRUE(row.pass) << row.label << ": " << row.estimate << " vs " << target << " se " << row.std_error;
  }
}

TEST(Chebyshev, Coefficients) {
  const auto t = chebyshev_coefficients(4);
  EXPECT_EQ(t[0], (std::vector<double>{2}));
  EXPECT_EQ(t[1], (std::vector<double>{0, 1}));
  EXPECT_EQ(t[2], (std::vector<double>{-2, 0, 1}));
  EXPECT_EQ(t[3], (std::vector<double>{0, -3, 0, 1}));
  EXPECT_EQ(t[4], (std::vector<double>{2, 0, -4, 0, 1}));
  EXPECT_EQ(chebyshev_coefficients(1).size(), 2u);
}

TEST(Chebyshev, ThreeRoutesAgree) {
  Rng rng(4);
  for (int n : {5, 30}) {
    const auto a = sample_gue(n, rng);
    const auto r = chebyshev_traces_recurrence(a, 7);
    const auto p = chebyshev_traces(a, 7);
    const auto e = chebyshev_traces_eigen(a, 7);
    ASSERT_EQ(r.size(), 8u);
    for (std::size_t d = 0; d < r.size(); ++d) {
      EXPECT_NEAR(r[d], p[d], 1e-8 * (1 + std::abs(r[d])));
      EXPECT_NEAR(r[d], e[d], 1e-8 * (1 + std::abs(r[d])));
    }
    EXPECT_DOUBLE_EQ(r[0], 2.0 * n);
  }
}

TEST(Chebyshev, OrthonormalPolynomialsOfSemicircle) {
  const auto q = orthonormal_polynomials({1, 0, 1, 0, 2}, 2);
  EXPECT_NEAR(q[0][0], 1.0, 1e-12);
  EXPECT_NEAR(q[1][1], 1.0, 1e-12);
  EXPECT_NEAR(q[1][0], 0.0, 1e-12);
  EXPECT_NEAR(q[2][0], -1.0, 1e-12);
  EXPECT_NEAR(q[2][2], 1.0, 1e-12);
  EXPECT_THROW(orthonormal_polynomials({1, 0}, 2), InvalidArgument);
}

TEST(Experiments, SmallRunsPass) {
  const auto ds = experiment_ds(2, 12, 4000, RngConfig{1}, 1);
  EXPECT_EQ(ds.rows.size(), 10u);
  EXPECT_TRUE(ds.all_pass());
  const auto w = experiment_weingarten(4, 20000, RngConfig{2}, 1);
  EXPECT_TRUE(w.all_pass());
  EXPECT_DOUBLE_EQ(w.rows[0].target, 1.0 / 15);  // Wg(id) on S_2 is 1/(N^2 - 1)
  const auto words = experiment_reduced_words({ReducedWord::parse("U1"), ReducedWord::parse("U1 U2^-1")}, 6, 4000,
                                              RngConfig{3}, 1);
  EXPECT_TRUE(words.all_pass());
  EXPECT_FALSE(words.diagnostics.empty());
  const auto cheb = experiment_chebyshev(3, 20, 2000, RngConfig{4}, 1, 1000, 10);
  EXPECT_TRUE(cheb.all_pass());
  EXPECT_NE(cheb.notes.find("Gaussian"), std::string::npos);
}
