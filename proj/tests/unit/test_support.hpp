#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "melin/graded.hpp"
#include "melin/polynomial.hpp"

namespace melin::testing {

inline PolynomialSymbol y_(int dim = 1, int s = 0) { return PolynomialSymbol::position(dim, s); }
inline PolynomialSymbol eta_(int dim = 1, int s = 0) { return PolynomialSymbol::momentum(dim, s); }
inline PolynomialSymbol one_(int dim = 1) { return PolynomialSymbol::constant(dim, 1.0); }

/// y^2 + eta^2 summed over modes.
inline PolynomialSymbol oscillator(int dim = 1) {
  PolynomialSymbol h(dim);
  for (int s = 0; s < dim; ++s) h += y_(dim, s) * y_(dim, s) + eta_(dim, s) * eta_(dim, s);
  return h;
}

inline PolynomialSymbol mono(std::vector<int> powers, Complex c = 1.0) {
  return PolynomialSymbol::monomial(MultiIndex(std::move(powers)), c);
}

/// Every monomial of total degree <= max_degree gets a uniform coefficient
/// in [-1, 1] with probability `density`.
inline PolynomialSymbol random_polynomial(std::mt19937_64& rng, int dim, int max_degree, bool real = true,
                                          double density = 0.7, int min_degree = 0) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::bernoulli_distribution keep(density);
  PolynomialSymbol p(dim);
  std::vector<int> powers(2 * static_cast<std::size_t>(dim), 0);
  while (true) {
    int deg = 0;
    for (int v : powers) deg += v;
    if (deg <= max_degree && deg >= min_degree && keep(rng)) {
      p.add_term(MultiIndex(powers), real ? Complex(coeff(rng), 0.0) : Complex(coeff(rng), coeff(rng)));
    }
    std::size_t digit = 0;
    while (digit < powers.size() && powers[digit] == max_degree) powers[digit++] = 0;
    if (digit == powers.size()) break;
    ++powers[digit];
  }
  return p;
}

/// Random homogeneous polynomial of exactly degree `degree`.
inline PolynomialSymbol random_homogeneous(std::mt19937_64& rng, int dim, int degree, bool real = true) {
  return random_polynomial(rng, dim, degree, real, 0.8, degree).homogeneous_part(degree);
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return a + a.adjoint();
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Dense ladder-built position and momentum matrices with `levels` states,
/// independent of the banded kernels.
struct DenseCoordinates {
  Eigen::MatrixXcd y;
  Eigen::MatrixXcd eta;
};

inline DenseCoordinates dense_coordinates_1d(int levels, double hbar) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd ad = a.adjoint();
  const double c = std::sqrt(hbar / 2.0);
  return {c * (a + ad), Complex(0.0, c) * (ad - a)};
}

}  // namespace melin::testing
