#pragma once

#include <vector>

#include <Eigen/Dense>

#include "melin/graded.hpp"
#include "melin/polynomial.hpp"

namespace melin {

/// Weyl-quantized symbol in the truncated tensor Hermite basis.
///
/// `entries` is the leading truncation^dim block of the infinite matrix;
/// every entry is exact (up to round-off) because the computation was done
/// `pad` levels larger per mode and then restricted.
struct OperatorMatrix {
  int dim = 1;
  int truncation = 0;
  double hbar = 1.0;
  int pad = 0;
  Eigen::MatrixXcd entries;

  Eigen::Index size() const { return entries.rows(); }
  /// max |M - M^*|.
  double hermiticity_defect() const;
  /// Leading block with `n` levels per mode (n <= truncation).
  OperatorMatrix leading_block(int n) const;
};

/// Lowering/raising operators on `levels` Fock states: lower(n-1, n) = sqrt(n).
struct Ladder {
  Eigen::MatrixXd lower;
  Eigen::MatrixXd raise;
};
Ladder ladder(int levels);

/// Which coordinate factor the Jordan recursion strips first.
enum class PeelOrder { PositionFirst, MomentumFirst };
enum class KernelBackend { Parallel, Serial };

struct QuantizeOptions {
  PeelOrder peel = PeelOrder::PositionFirst;
  KernelBackend backend = KernelBackend::Parallel;
  int extra_pad = 0;
};

/// Restricts a matrix on `padded_levels` per mode to its leading `levels`
/// per mode block.
Eigen::MatrixXcd restrict_block(const Eigen::MatrixXcd& padded, int dim, int padded_levels, int levels);

/// Weyl quantization with [y, eta] = i hbar. Monomials are built by
///   Op(v q) = (Op(v) Op(q) + Op(q) Op(v)) / 2,   v a coordinate,
/// which is exact since (v # q + q # v) / 2 = v q.
OperatorMatrix weyl_quantize(const PolynomialSymbol& p, double hbar, int truncation, const QuantizeOptions& options = {});

/// sum_{|alpha| <= k} (L^alpha)^* L^alpha with L_s = D_s + i y_s at hbar = 1.
OperatorMatrix number_operator(int k, int dim, int truncation);

/// Closed form of the number operator diagonal:
/// prod_s 2^{alpha_s} (n_s + 1) ... (n_s + alpha_s), summed over |alpha| <= k.
Eigen::VectorXd number_operator_diagonal(int k, int dim, int truncation);

/// Ascending eigenvalues; throws NotHermitian if max|M - M^*| exceeds
/// 1e-10 * max(1, max|M|).
Eigen::VectorXd hermitian_eigenvalues(const OperatorMatrix& m);
double lowest_eigenvalue(const OperatorMatrix& m);

struct TruncationSweep {
  std::vector<int> truncations;
  std::vector<double> values;
  /// |lambda(N_last) - lambda(N_prev)|, 0 for a single truncation.
  double last_gap = 0.0;
};

/// Lowest eigenvalue at each truncation. The exact blocks are nested
/// compressions, so values must not increase; an increase beyond 1e-10
/// raises MonotonicityViolation.
TruncationSweep truncation_sweep(const PolynomialSymbol& p, double hbar, const std::vector<int>& truncations);

/// Relative max-norm mismatch between the Lambda-quantization of p and the
/// unit quantization of its dilated symbol.
double conjugation_residual(const GradedSymbol& p, double lambda, int truncation);

double max_abs(const Eigen::MatrixXcd& m);

}  // namespace melin
