#pragma once

#include <vector>

#include <Eigen/Dense>

namespace melin {

/// Hessian of the principal symbol at a characteristic point, variables
/// ordered (y_1..y_d, eta_1..eta_d), and the subprincipal value there.
struct QuadraticData {
  int dim = 1;
  Eigen::MatrixXd hessian;
  double subprincipal = 0.0;

  /// Throws InvalidInput unless the Hessian is 2d x 2d and exactly symmetric.
  void validate() const;
};

/// Standard symplectic matrix J = [[0, -I], [I, 0]], so
/// sigma(t, s) = t^T J s = <eta, y'> - <y, eta'>.
Eigen::MatrixXd symplectic_form(int dim);

/// Hamilton map F = J^{-1} H, characterised by t^T H t' = sigma(t, F t').
Eigen::MatrixXd fundamental_matrix(const QuadraticData& q);

/// Sum of the positive lambda_j over the eigenvalue pairs +-i lambda_j of F.
/// Throws HypothesisViolation when H is not positive semidefinite
/// (min eig < -1e-9 |H|) or F has eigenvalues with |Re| > 1e-8 |H|.
double trace_plus(const QuadraticData& q);

/// subprincipal + trace_plus / 2.
double melin_quantity(const QuadraticData& q);

struct MetricPoint {
  std::vector<double> x;  ///< point in R^{2d}
  double a = 1.0;
  double lambda = 1.0;
};

struct MetricReport {
  double d_a = 0.0;  ///< |X| + a
  double h_a = 0.0;  ///< max(d_a^-2, 1/Lambda)
};

/// Throws InvalidInput when a < 1 or Lambda < 1.
MetricReport metric_report(const MetricPoint& p);

/// max((d_a d_b)^{-1}, 1/Lambda) for composing S(m, g_a) with S(m', g_b) at X.
double metric_compat(const std::vector<double>& x, double a, double b, double lambda);

/// g_{a,X}(Y) = |Y|^2 / d_a(X)^2.
double metric_norm(const std::vector<double>& x, const std::vector<double>& y, double a);

}  // namespace melin
