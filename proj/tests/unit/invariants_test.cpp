#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "melin/error.hpp"
#include "melin/invariants.hpp"
#include "melin/quantization.hpp"
#include "unit/test_support.hpp"

namespace melin {
namespace {

QuadraticData make(int dim, const Eigen::MatrixXd& h, double s = 0.0) { return {dim, h, s}; }

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2, 2);
  h(0, 0) = a;
  h(1, 1) = b;
  return h;
}

// For H > 0 the eigenvalues of F are similar to those of H^{1/2} (-J) H^{1/2},
// a real antisymmetric matrix; i times it is Hermitian.
double trace_plus_oracle(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXd root = es.operatorSqrt();
  const Eigen::MatrixXd anti = -root * symplectic_form(n / 2) * root;
  const Eigen::MatrixXcd herm = Complex(0.0, 1.0) * anti.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(herm);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < hs.eigenvalues().size(); ++i) sum += std::max(0.0, hs.eigenvalues()(i));
  return sum;
}

Eigen::MatrixXd random_pd(std::mt19937_64& rng, int n, double shift = 0.1) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::MatrixXd h = a * a.transpose() + shift * Eigen::MatrixXd::Identity(n, n);
  return (0.5 * (h + h.transpose())).eval();
}

TEST(SymplecticForm, BlockStructure) {
  const Eigen::MatrixXd j = symplectic_form(2);
  EXPECT_EQ(j(0, 2), -1.0);
  EXPECT_EQ(j(2, 0), 1.0);
  EXPECT_EQ(j * j, -Eigen::MatrixXd::Identity(4, 4));
}

TEST(FundamentalMatrix, OscillatorAndDefiningIdentity) {
  const Eigen::MatrixXd f = fundamental_matrix(make(1, diag2(2.0, 2.0)));
  Eigen::MatrixXd expect(2, 2);
  expect << 0, 2, -2, 0;
  EXPECT_LT((f - expect).cwiseAbs().maxCoeff(), 1e-15);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const Eigen::MatrixXd h = random_pd(rng, 4);
  const Eigen::MatrixXd fh = fundamental_matrix(make(2, h));
  const Eigen::MatrixXd j = symplectic_form(2);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd t(4), s(4);
    for (int i = 0; i < 4; ++i) {
      t(i) = g(rng);
      s(i) = g(rng);
    }
    const double lhs = t.dot(h * s);
    const double rhs = t.dot(j * (fh * s));
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(TracePlus, ClosedForms) {
  EXPECT_NEAR(trace_plus(make(1, diag2(2.0, 2.0))), 2.0, 1e-14);
  EXPECT_EQ(trace_plus(make(1, Eigen::MatrixXd::Zero(2, 2))), 0.0);
  // y^2 alone: F nilpotent
  EXPECT_NEAR(trace_plus(make(1, diag2(2.0, 0.0))), 0.0, 1e-14);
  for (auto [a, b, c] : std::vector<std::array<double, 3>>{{1, 0, 1}, {2, 1, 1}, {1.5, -0.7, 2}, {3, 0.2, 0.5}}) {
    Eigen::MatrixXd h(2, 2);
    h << 2 * a, 2 * b, 2 * b, 2 * c;
    EXPECT_NEAR(trace_plus(make(1, h)), 2 * std::sqrt(a * c - b * b), 1e-12);
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
  h.diagonal() << 2, 8, 2, 2;
  // two decoupled oscillators with frequencies 2 and 4
  EXPECT_NEAR(trace_plus(make(2, h)), 6.0, 1e-12);
}

TEST(TracePlus, MatchesIndependentOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 1 + trial % 2;
    const Eigen::MatrixXd h = random_pd(rng, 2 * dim);
    EXPECT_NEAR(trace_plus(make(dim, h)), trace_plus_oracle(h), 1e-9 * h.norm());
  }
}

TEST(TracePlus, RejectsBadInput) {
  EXPECT_THROW(trace_plus(make(1, diag2(1.0, -1.0))), HypothesisViolation);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  EXPECT_THROW(trace_plus(make(1, asym)), InvalidInput);
  EXPECT_THROW(trace_plus(make(2, diag2(1.0, 1.0))), InvalidInput);
}

TEST(MelinQuantity, Examples) {
  EXPECT_NEAR(melin_quantity(make(1, diag2(2.0, 2.0), -1.0)), 0.0, 1e-14);
  EXPECT_NEAR(melin_quantity(make(1, diag2(2.0, 2.0), 0.5)), 1.5, 1e-14);
  EXPECT_NEAR(melin_quantity(make(1, diag2(2.0, 0.0), 0.25)), 0.25, 1e-14);
}

TEST(TracePlus, PositivelyHomogeneous) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd h = random_pd(rng, 4);
    const double t = 0.1 + trial;
    EXPECT_NEAR(trace_plus(make(2, t * h)), t * trace_plus(make(2, h)), 1e-12 * t * h.norm());
  }
}

TEST(TracePlus, SymplecticInvariance) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 1 + trial % 2;
    const int n = 2 * dim;
    const Eigen::MatrixXd h = random_pd(rng, n, trial % 3 == 0 ? 0.0 : 0.2);
    Eigen::MatrixXd sym(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sym(i, j) = 0.3 * g(rng);
    sym = (0.5 * (sym + sym.transpose())).eval();
    const Eigen::MatrixXd s = (symplectic_form(dim) * sym).exp();
    // S is symplectic: S^T J S = J
    EXPECT_LT((s.transpose() * symplectic_form(dim) * s - symplectic_form(dim)).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::MatrixXd conj = s.transpose() * h * s;
    conj = (0.5 * (conj + conj.transpose())).eval();
    const double base = trace_plus(make(dim, h));
    EXPECT_NEAR(trace_plus(make(dim, conj)), base, 1e-8 * std::max(1.0, base));
  }
}

TEST(MelinQuantity, GroundStateOfQuadraticOperator) {
  // lambda_min(Op(Q0 + s)) at hbar = 1 equals s + tr+ / 2
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int trial = 0; trial < 6; ++trial) {
    const double a = 1.0 + 0.2 * trial, b = u(rng), c = 1.5;
    const double s = u(rng);
    PolynomialSymbol q(1);
    q.add_term(MultiIndex({2, 0}), a);
    q.add_term(MultiIndex({1, 1}), 2 * b);
    q.add_term(MultiIndex({0, 2}), c);
    q.add_term(MultiIndex({0, 0}), s);
    Eigen::MatrixXd h(2, 2);
    h << 2 * a, 2 * b, 2 * b, 2 * c;
    EXPECT_NEAR(lowest_eigenvalue(weyl_quantize(q, 1.0, 64)), melin_quantity(make(1, h, s)), 1e-6);
  }
}

TEST(Metric, Examples) {
  const MetricReport origin = metric_report({{0.0, 0.0}, 1.0, 4.0});
  EXPECT_DOUBLE_EQ(origin.d_a, 1.0);
  EXPECT_DOUBLE_EQ(origin.h_a, 1.0);
  const MetricReport far = metric_report({{3.0, 4.0}, 1.0, 4.0});
  EXPECT_DOUBLE_EQ(far.d_a, 6.0);
  EXPECT_DOUBLE_EQ(far.h_a, 0.25);
  const MetricReport near = metric_report({{3.0, 4.0}, 1.0, 100.0});
  EXPECT_DOUBLE_EQ(near.h_a, 1.0 / 36.0);
  EXPECT_DOUBLE_EQ(metric_compat({0.0, 0.0}, 2.0, 3.0, 1000.0), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(metric_compat({0.0, 0.0}, 2.0, 3.0, 4.0), 0.25);
  EXPECT_DOUBLE_EQ(metric_norm({3.0, 4.0}, {1.0, 1.0}, 1.0), 2.0 / 36.0);
  EXPECT_THROW(metric_report({{0.0, 0.0}, 0.5, 4.0}), InvalidInput);
  EXPECT_THROW(metric_report({{0.0, 0.0}, 1.0, 0.5}), InvalidInput);
}

TEST(Metric, SlowlyVarying) {
  // g_X(X - Y) <= 1/4 keeps d_a(Y) within a factor of 2 of d_a(X)
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = 1.0 + 5 * u(rng);
    std::vector<double> x(4), step(4);
    for (auto& v : x) v = 10 * g(rng);
    double norm = 0.0;
    for (auto& v : step) {
      v = g(rng);
      norm += v * v;
    }
    const double dx = metric_report({x, a, 1.0}).d_a;
    const double scale = u(rng) * 0.5 * dx / std::sqrt(norm);
    std::vector<double> y(4);
    for (std::size_t i = 0; i < 4; ++i) {
      step[i] *= scale;
      y[i] = x[i] + step[i];
    }
    ASSERT_LE(metric_norm(x, step, a), 0.25 + 1e-12);
    const double dy = metric_report({y, a, 1.0}).d_a;
    EXPECT_LE(dy / dx, 2.0);
    EXPECT_GE(dy / dx, 0.5);
  }
}

}  // namespace
}  // namespace melin
