#include <random>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "melin/kernels.hpp"
#include "melin/quantization.hpp"
#include "melin/verifier.hpp"

namespace {

using melin::kernels::Coordinate;
using melin::kernels::CoordinateAction;

Eigen::MatrixXcd random_matrix(Eigen::Index n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return a + a.adjoint();
}

CoordinateAction action(const benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  return {dim, static_cast<int>(state.range(1)), dim - 1, Coordinate::Momentum, 1.0};
}

void BM_JordanSerial(benchmark::State& state) {
  const auto op = action(state);
  const Eigen::MatrixXcd in = random_matrix(op.basis_size());
  Eigen::MatrixXcd out;
  for (auto _ : state) {
    melin::kernels::serial::jordan_step(op, in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_JordanParallel(benchmark::State& state) {
  const auto op = action(state);
  const Eigen::MatrixXcd in = random_matrix(op.basis_size());
  Eigen::MatrixXcd out;
  omp_set_num_threads(static_cast<int>(state.range(2)));
  for (auto _ : state) {
    melin::kernels::parallel::jordan_step(op, in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_JordanDense(benchmark::State& state) {
  const auto op = action(state);
  const Eigen::MatrixXcd in = random_matrix(op.basis_size());
  for (auto _ : state) benchmark::DoNotOptimize(melin::kernels::jordan_step_dense(op, in).data());
}

void BM_QuantizeQuartic(benchmark::State& state) {
  melin::PolynomialSymbol h = melin::PolynomialSymbol::monomial(melin::MultiIndex({2, 0})) +
                              melin::PolynomialSymbol::monomial(melin::MultiIndex({0, 2}));
  const melin::PolynomialSymbol quartic = h * h + melin::PolynomialSymbol::monomial(melin::MultiIndex({6, 0}));
  melin::QuantizeOptions options;
  options.backend = state.range(1) ? melin::KernelBackend::Parallel : melin::KernelBackend::Serial;
  for (auto _ : state)
    benchmark::DoNotOptimize(melin::weyl_quantize(quartic, 1.0, static_cast<int>(state.range(0)), options).entries.data());
}

void BM_PhaseGrid(benchmark::State& state) {
  melin::PhaseGrid grid;
  grid.alpha = {1, 2, 3};
  grid.beta = {-0.9, 0.9, 3};
  grid.gamma = {1, 2, 3};
  grid.s = {-1, 1, 3};
  grid.truncation = 48;
  grid.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(melin::melin_phase_diagram(grid).max_error);
}

}  // namespace

BENCHMARK(BM_JordanSerial)->Args({1, 256})->Args({2, 24});
BENCHMARK(BM_JordanParallel)->Args({1, 256, 1})->Args({1, 256, 4})->Args({2, 24, 1})->Args({2, 24, 4});
BENCHMARK(BM_JordanDense)->Args({1, 256})->Args({2, 24});
BENCHMARK(BM_QuantizeQuartic)->Args({64, 0})->Args({64, 1})->Args({128, 0})->Args({128, 1});
BENCHMARK(BM_PhaseGrid)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK_MAIN();
