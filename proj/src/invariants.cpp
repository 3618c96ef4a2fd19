#include "melin/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "melin/error.hpp"

namespace melin {
namespace {

double euclidean_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

void QuadraticData::validate() const {
  if (dim < 1) throw InvalidInput("quadratic data: dimension must be positive");
  if (hessian.rows() != 2 * dim || hessian.cols() != 2 * dim) {
    throw InvalidInput("quadratic data: Hessian must be 2d x 2d");
  }
  if (!hessian.allFinite()) throw InvalidInput("quadratic data: Hessian has non-finite entries");
  if ((hessian - hessian.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw InvalidInput("quadratic data: Hessian is not symmetric");
  }
}

Eigen::MatrixXd symplectic_form(int dim) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
  j.topRightCorner(dim, dim) = -Eigen::MatrixXd::Identity(dim, dim);
  j.bottomLeftCorner(dim, dim) = Eigen::MatrixXd::Identity(dim, dim);
  return j;
}

Eigen::MatrixXd fundamental_matrix(const QuadraticData& q) {
  q.validate();
  // J^{-1} = -J
  return -symplectic_form(q.dim) * q.hessian;
}

double trace_plus(const QuadraticData& q) {
  const Eigen::MatrixXd f = fundamental_matrix(q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hsolver(q.hessian, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd heig = hsolver.eigenvalues();
  const double scale = heig.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (heig(0) < -1e-9 * scale) {
    std::ostringstream os;
    os << "Hessian is not positive semidefinite (smallest eigenvalue " << heig(0)
       << "): the principal symbol must be non-negative";
    throw HypothesisViolation(os.str());
  }

  Eigen::EigenSolver<Eigen::MatrixXd> fsolver(f, false);
  if (fsolver.info() != Eigen::Success) throw Error("eigen-decomposition of the fundamental matrix failed");
  double sum = 0.0;
  for (const auto& ev : fsolver.eigenvalues()) {
    if (std::abs(ev.real()) > 1e-8 * scale) {
      std::ostringstream os;
      os << "fundamental matrix has eigenvalue " << ev.real() << (ev.imag() < 0 ? "" : "+") << ev.imag()
         << "i off the imaginary axis";
      throw HypothesisViolation(os.str());
    }
    if (ev.imag() > 0.0) sum += ev.imag();
  }
  return sum;
}

double melin_quantity(const QuadraticData& q) { return q.subprincipal + 0.5 * trace_plus(q); }

MetricReport metric_report(const MetricPoint& p) {
  if (!(p.a >= 1.0)) throw InvalidInput("metric_report: a must be >= 1");
  if (!(p.lambda >= 1.0)) throw InvalidInput("metric_report: Lambda must be >= 1");
  MetricReport r;
  r.d_a = euclidean_norm(p.x) + p.a;
  r.h_a = std::max(1.0 / (r.d_a * r.d_a), 1.0 / p.lambda);
  return r;
}

double metric_compat(const std::vector<double>& x, double a, double b, double lambda) {
  const double da = metric_report({x, a, lambda}).d_a;
  const double db = metric_report({x, b, lambda}).d_a;
  return std::max(1.0 / (da * db), 1.0 / lambda);
}

double metric_norm(const std::vector<double>& x, const std::vector<double>& y, double a) {
  if (x.size() != y.size()) throw DimensionMismatch("metric_norm: point and vector differ in length");
  if (!(a >= 1.0)) throw InvalidInput("metric_norm: a must be >= 1");
  const double d = euclidean_norm(x) + a;
  const double ny = euclidean_norm(y);
  return ny * ny / (d * d);
}

}  // namespace melin
