#include <gtest/gtest.h>

#include <random>

#include "melin/error.hpp"
#include "melin/kernels.hpp"
#include "unit/test_support.hpp"

namespace melin::kernels {
namespace {

using melin::testing::max_abs_diff;
using melin::testing::random_hermitian;

TEST(CoordinateMatrix, PositionIsTridiagonal) {
  CoordinateAction op{1, 6, 0, Coordinate::Position, 1.0};
  const Eigen::MatrixXcd x = coordinate_matrix(op);
  for (int n = 0; n + 1 < 6; ++n) {
    EXPECT_DOUBLE_EQ(x(n, n + 1).real(), std::sqrt((n + 1) / 2.0));
    EXPECT_DOUBLE_EQ(x(n + 1, n).real(), std::sqrt((n + 1) / 2.0));
  }
  EXPECT_EQ(x(0, 0), Complex(0.0));
  EXPECT_EQ(x(0, 2), Complex(0.0));
}

TEST(CoordinateMatrix, CanonicalCommutatorAwayFromTheEdge) {
  const double hbar = 0.3;
  const int levels = 8;
  const auto x = coordinate_matrix({1, levels, 0, Coordinate::Position, hbar});
  const auto p = coordinate_matrix({1, levels, 0, Coordinate::Momentum, hbar});
  const Eigen::MatrixXcd comm = x * p - p * x;
  for (int n = 0; n + 1 < levels; ++n) EXPECT_NEAR(std::abs(comm(n, n) - Complex(0.0, hbar)), 0.0, 1e-15);
}

class JordanKernel : public ::testing::TestWithParam<std::tuple<int, int, Coordinate>> {};

TEST_P(JordanKernel, SerialAndParallelMatchDenseReference) {
  const auto [dim, mode, kind] = GetParam();
  std::mt19937_64 rng(static_cast<unsigned>(17 + dim * 7 + mode));
  CoordinateAction op{dim, dim == 1 ? 13 : 5, mode, kind, 0.7};
  const Eigen::MatrixXcd in = random_hermitian(rng, op.basis_size());
  const Eigen::MatrixXcd reference = jordan_step_dense(op, in);
  Eigen::MatrixXcd s, p;
  serial::jordan_step(op, in, s);
  parallel::jordan_step(op, in, p);
  EXPECT_LT(max_abs_diff(s, reference), 1e-13);
  EXPECT_EQ(max_abs_diff(s, p), 0.0);
  // Jordan product of Hermitian matrices stays Hermitian
  EXPECT_EQ(max_abs_diff(s, s.adjoint()), 0.0);
}

INSTANTIATE_TEST_SUITE_P(Modes, JordanKernel,
                         ::testing::Values(std::make_tuple(1, 0, Coordinate::Position),
                                           std::make_tuple(1, 0, Coordinate::Momentum),
                                           std::make_tuple(2, 0, Coordinate::Position),
                                           std::make_tuple(2, 1, Coordinate::Position),
                                           std::make_tuple(2, 0, Coordinate::Momentum),
                                           std::make_tuple(2, 1, Coordinate::Momentum)));

TEST(JordanKernel, RejectsWrongSizes) {
  CoordinateAction op{1, 4, 0, Coordinate::Position, 1.0};
  Eigen::MatrixXcd out;
  EXPECT_THROW(serial::jordan_step(op, Eigen::MatrixXcd::Identity(5, 5), out), DimensionMismatch);
  op.mode = 1;
  EXPECT_THROW(parallel::jordan_step(op, Eigen::MatrixXcd::Identity(4, 4), out), InvalidInput);
}

}  // namespace
}  // namespace melin::kernels
