#pragma once

#include <Eigen/Dense>

namespace melin::kernels {

enum class Coordinate { Position, Momentum };

/// One coordinate operator (y_s or eta_s at a given hbar) acting on the
/// tensor Fock basis of `dim` modes with `levels` states per mode.
/// Basis index is n_1 + levels * n_2 + ... (mode 1 fastest).
///
///   y_s   = sqrt(hbar/2) (a_s + a_s^dagger)
///   eta_s = i sqrt(hbar/2) (a_s^dagger - a_s)
struct CoordinateAction {
  int dim = 1;
  int levels = 2;
  int mode = 0;
  Coordinate kind = Coordinate::Position;
  double hbar = 1.0;

  Eigen::Index basis_size() const;
  Eigen::Index stride() const;
};

/// Dense matrix of the coordinate operator, truncated to `levels` per mode.
Eigen::MatrixXcd coordinate_matrix(const CoordinateAction& op);

/// Jordan product out = (X in + in X) / 2 written as a dense product.
/// Reference for the banded kernels; O(n^3).
Eigen::MatrixXcd jordan_step_dense(const CoordinateAction& op, const Eigen::MatrixXcd& in);

namespace serial {
/// Banded Jordan product, plain loops. O(n^2).
void jordan_step(const CoordinateAction& op, const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out);
}  // namespace serial

namespace parallel {
/// Banded Jordan product, columns distributed over OpenMP threads.
void jordan_step(const CoordinateAction& op, const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out);
}  // namespace parallel

}  // namespace melin::kernels
