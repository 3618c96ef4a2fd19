#include "melin/kernels.hpp"

#include <cmath>
#include <complex>

#include "melin/error.hpp"

namespace melin::kernels {
namespace {

using Complex = std::complex<double>;

// Matrix elements of X between level n and its neighbours in the acted-on mode.
struct Band {
  double scale;  // sqrt(hbar/2)
  Coordinate kind;

  // <n|X|n+1>
  Complex up(int n) const {
    const double v = scale * std::sqrt(static_cast<double>(n + 1));
    return kind == Coordinate::Position ? Complex(v, 0.0) : Complex(0.0, -v);
  }
  // <n+1|X|n>
  Complex down(int n) const {
    const double v = scale * std::sqrt(static_cast<double>(n + 1));
    return kind == Coordinate::Position ? Complex(v, 0.0) : Complex(0.0, v);
  }
};

void validate(const CoordinateAction& op, const Eigen::MatrixXcd& in) {
  if (op.dim < 1 || op.levels < 1 || op.mode < 0 || op.mode >= op.dim) {
    throw InvalidInput("coordinate action: invalid dimension, levels or mode");
  }
  const Eigen::Index n = op.basis_size();
  if (in.rows() != n || in.cols() != n) throw DimensionMismatch("jordan_step: matrix size does not match basis");
}

// out(:, j) = (X in(:, j) + in X(:, j)) / 2 for one column j.
inline void jordan_column(const CoordinateAction& op, const Band& band, Eigen::Index stride, const Eigen::MatrixXcd& in,
                          Eigen::MatrixXcd& out, Eigen::Index j) {
  const Eigen::Index n = in.rows();
  const int levels = op.levels;
  const int nj = static_cast<int>((j / stride) % levels);

  // in * X: X(:, j) is non-zero at rows j +- stride.
  Complex right_up{}, right_down{};
  const bool has_up = nj + 1 < levels;
  const bool has_down = nj > 0;
  if (has_up) right_up = band.down(nj);      // X(j+stride, j) = <nj+1|X|nj>
  if (has_down) right_down = band.up(nj - 1);  // X(j-stride, j) = <nj-1|X|nj>

  const Complex* in_j = in.col(j).data();
  const Complex* in_up = has_up ? in.col(j + stride).data() : nullptr;
  const Complex* in_down = has_down ? in.col(j - stride).data() : nullptr;
  Complex* out_j = out.col(j).data();

  for (Eigen::Index i = 0; i < n; ++i) {
    const int ni = static_cast<int>((i / stride) % levels);
    Complex left{};
    if (ni + 1 < levels) left += band.up(ni) * in_j[i + stride];
    if (ni > 0) left += band.down(ni - 1) * in_j[i - stride];
    Complex right{};
    if (has_up) right += in_up[i] * right_up;
    if (has_down) right += in_down[i] * right_down;
    out_j[i] = 0.5 * (left + right);
  }
}

}  // namespace

Eigen::Index CoordinateAction::basis_size() const {
  Eigen::Index n = 1;
  for (int s = 0; s < dim; ++s) n *= levels;
  return n;
}

Eigen::Index CoordinateAction::stride() const {
  Eigen::Index st = 1;
  for (int s = 0; s < mode; ++s) st *= levels;
  return st;
}

Eigen::MatrixXcd coordinate_matrix(const CoordinateAction& op) {
  const Eigen::Index n = op.basis_size();
  const Eigen::Index stride = op.stride();
  const Band band{std::sqrt(op.hbar / 2.0), op.kind};
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int ni = static_cast<int>((i / stride) % op.levels);
    if (ni + 1 < op.levels) {
      x(i, i + stride) = band.up(ni);
      x(i + stride, i) = band.down(ni);
    }
  }
  return x;
}

Eigen::MatrixXcd jordan_step_dense(const CoordinateAction& op, const Eigen::MatrixXcd& in) {
  validate(op, in);
  const Eigen::MatrixXcd x = coordinate_matrix(op);
  return 0.5 * (x * in + in * x);
}

namespace serial {

void jordan_step(const CoordinateAction& op, const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out) {
  validate(op, in);
  out.resize(in.rows(), in.cols());
  const Band band{std::sqrt(op.hbar / 2.0), op.kind};
  const Eigen::Index stride = op.stride();
  for (Eigen::Index j = 0; j < in.cols(); ++j) jordan_column(op, band, stride, in, out, j);
}

}  // namespace serial

namespace parallel {

void jordan_step(const CoordinateAction& op, const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out) {
  validate(op, in);
  out.resize(in.rows(), in.cols());
  const Band band{std::sqrt(op.hbar / 2.0), op.kind};
  const Eigen::Index stride = op.stride();
  const Eigen::Index cols = in.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j) jordan_column(op, band, stride, in, out, j);
}

}  // namespace parallel

}  // namespace melin::kernels
