#include "melin/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "melin/error.hpp"
#include "melin/kernels.hpp"

namespace melin {
namespace {

Eigen::Index basis_size(int dim, int levels) {
  Eigen::Index n = 1;
  for (int s = 0; s < dim; ++s) n *= levels;
  return n;
}

// Restricted-index map: position of each small-basis state inside the padded basis.
std::vector<Eigen::Index> block_indices(int dim, int padded_levels, int levels) {
  const Eigen::Index n = basis_size(dim, levels);
  std::vector<Eigen::Index> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index rest = i, big = 0, stride = 1;
    for (int s = 0; s < dim; ++s) {
      big += (rest % levels) * stride;
      rest /= levels;
      stride *= padded_levels;
    }
    out[static_cast<std::size_t>(i)] = big;
  }
  return out;
}

// Innermost-first list of coordinate variables whose product is the monomial.
std::vector<int> peel_sequence(const MultiIndex& idx, PeelOrder order) {
  const int d = idx.dim();
  std::vector<int> seq;
  auto push_kind = [&](bool momentum) {
    for (int s = 0; s < d; ++s) {
      const int var = momentum ? d + s : s;
      for (int e = 0; e < idx.powers[static_cast<std::size_t>(var)]; ++e) seq.push_back(var);
    }
  };
  // The outermost factor is peeled first, so it goes last here.
  const bool position_outer = order == PeelOrder::PositionFirst;
  push_kind(position_outer);
  push_kind(!position_outer);
  return seq;
}

}  // namespace

double OperatorMatrix::hermiticity_defect() const { return max_abs(entries - entries.adjoint()); }

OperatorMatrix OperatorMatrix::leading_block(int n) const {
  if (n < 1 || n > truncation) throw InvalidInput("leading_block: truncation out of range");
  OperatorMatrix out = *this;
  out.truncation = n;
  out.pad = pad + (truncation - n);
  out.entries = restrict_block(entries, dim, truncation, n);
  return out;
}

Ladder ladder(int levels) {
  if (levels < 2) throw InvalidInput("ladder: need at least 2 levels");
  Ladder l{Eigen::MatrixXd::Zero(levels, levels), Eigen::MatrixXd()};
  for (int n = 1; n < levels; ++n) l.lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  l.raise = l.lower.transpose();
  return l;
}

Eigen::MatrixXcd restrict_block(const Eigen::MatrixXcd& padded, int dim, int padded_levels, int levels) {
  if (levels > padded_levels) throw InvalidInput("restrict_block: block larger than source");
  if (padded.rows() != basis_size(dim, padded_levels)) throw DimensionMismatch("restrict_block: size mismatch");
  if (dim == 1) return padded.topLeftCorner(levels, levels);
  const auto idx = block_indices(dim, padded_levels, levels);
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = padded(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  return out;
}

OperatorMatrix weyl_quantize(const PolynomialSymbol& p, double hbar, int truncation, const QuantizeOptions& options) {
  if (truncation < 2) throw InvalidInput("weyl_quantize: truncation must be at least 2");
  if (!(hbar > 0.0)) throw InvalidInput("weyl_quantize: hbar must be positive");
  if (options.extra_pad < 0) throw InvalidInput("weyl_quantize: negative padding");
  const int dim = p.dim();
  const int pad = p.degree() + options.extra_pad;
  const int levels = truncation + pad;
  const Eigen::Index n = basis_size(dim, levels);

  std::vector<std::pair<std::vector<int>, Complex>> work;
  work.reserve(p.size());
  for (const auto& [idx, c] : p.terms()) work.emplace_back(peel_sequence(idx, options.peel), c);
  std::sort(work.begin(), work.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  // Depth-first walk of the trie of peel sequences; stack[i] holds the
  // operator of the first i factors of the current path.
  std::vector<int> path;
  std::vector<Eigen::MatrixXcd> stack;
  stack.push_back(Eigen::MatrixXcd::Identity(n, n));
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);

  for (const auto& [seq, coeff] : work) {
    std::size_t common = 0;
    while (common < path.size() && common < seq.size() && path[common] == seq[common]) ++common;
    path.resize(common);
    stack.resize(common + 1);
    for (std::size_t f = common; f < seq.size(); ++f) {
      const int var = seq[f];
      kernels::CoordinateAction op;
      op.dim = dim;
      op.levels = levels;
      op.mode = var % dim;
      op.kind = var < dim ? kernels::Coordinate::Position : kernels::Coordinate::Momentum;
      op.hbar = hbar;
      Eigen::MatrixXcd next;
      if (options.backend == KernelBackend::Parallel) {
        kernels::parallel::jordan_step(op, stack.back(), next);
      } else {
        kernels::serial::jordan_step(op, stack.back(), next);
      }
      stack.push_back(std::move(next));
      path.push_back(var);
    }
    acc += coeff * stack.back();
  }

  OperatorMatrix out;
  out.dim = dim;
  out.truncation = truncation;
  out.hbar = hbar;
  out.pad = pad;
  out.entries = restrict_block(acc, dim, levels, truncation);
  return out;
}

OperatorMatrix number_operator(int k, int dim, int truncation) {
  if (k < 0) throw InvalidInput("number_operator: k must be non-negative");
  if (dim < 1) throw InvalidInput("number_operator: dim must be positive");
  if (truncation < 1) throw InvalidInput("number_operator: truncation must be positive");
  const int levels = truncation + k;

  // Per-mode factors (L^a)^* L^a for a = 0..k, with L = i sqrt(2) a^dagger.
  std::vector<Eigen::MatrixXcd> factors;
  {
    const Eigen::MatrixXcd l = Complex(0.0, std::sqrt(2.0)) * ladder(std::max(levels, 2)).raise.cast<Complex>();
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(l.rows(), l.cols());
    for (int a = 0; a <= k; ++a) {
      const Eigen::MatrixXcd full = power.adjoint() * power;
      factors.push_back(full.topLeftCorner(truncation, truncation));
      power = l * power;
    }
  }

  const Eigen::Index n = basis_size(dim, truncation);
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(n, n);
  std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
  while (true) {
    int order = 0;
    for (int a : alpha) order += a;
    if (order <= k) {
      // Kronecker product with mode 1 fastest.
      Eigen::MatrixXcd term = factors[static_cast<std::size_t>(alpha[0])];
      for (int s = 1; s < dim; ++s) {
        const Eigen::MatrixXcd& f = factors[static_cast<std::size_t>(alpha[static_cast<std::size_t>(s)])];
        Eigen::MatrixXcd next(term.rows() * f.rows(), term.cols() * f.cols());
        for (Eigen::Index r = 0; r < f.rows(); ++r) {
          for (Eigen::Index c = 0; c < f.cols(); ++c) next.block(r * term.rows(), c * term.cols(), term.rows(), term.cols()) = f(r, c) * term;
        }
        term = std::move(next);
      }
      total += term;
    }
    std::size_t digit = 0;
    while (digit < alpha.size() && alpha[digit] == k) alpha[digit++] = 0;
    if (digit == alpha.size()) break;
    ++alpha[digit];
  }

  OperatorMatrix out;
  out.dim = dim;
  out.truncation = truncation;
  out.hbar = 1.0;
  out.pad = k;
  out.entries = std::move(total);
  return out;
}

Eigen::VectorXd number_operator_diagonal(int k, int dim, int truncation) {
  const Eigen::Index n = basis_size(dim, truncation);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<int> levels(static_cast<std::size_t>(dim));
    Eigen::Index rest = i;
    for (int s = 0; s < dim; ++s) {
      levels[static_cast<std::size_t>(s)] = static_cast<int>(rest % truncation);
      rest /= truncation;
    }
    std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
    while (true) {
      int order = 0;
      for (int a : alpha) order += a;
      if (order <= k) {
        double term = 1.0;
        for (int s = 0; s < dim; ++s) {
          const int a = alpha[static_cast<std::size_t>(s)];
          const int ns = levels[static_cast<std::size_t>(s)];
          for (int t = 1; t <= a; ++t) term *= 2.0 * (ns + t);
        }
        diag(i) += term;
      }
      std::size_t digit = 0;
      while (digit < alpha.size() && alpha[digit] == k) alpha[digit++] = 0;
      if (digit == alpha.size()) break;
      ++alpha[digit];
    }
  }
  return diag;
}

Eigen::VectorXd hermitian_eigenvalues(const OperatorMatrix& m) {
  if (m.entries.rows() == 0) throw InvalidInput("hermitian_eigenvalues: empty matrix");
  const double tol = 1e-10 * std::max(1.0, max_abs(m.entries));
  if (m.hermiticity_defect() > tol) throw NotHermitian("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  return solver.eigenvalues();
}

double lowest_eigenvalue(const OperatorMatrix& m) { return hermitian_eigenvalues(m)(0); }

TruncationSweep truncation_sweep(const PolynomialSymbol& p, double hbar, const std::vector<int>& truncations) {
  if (truncations.empty()) throw InvalidInput("truncation_sweep: no truncations");
  for (std::size_t i = 1; i < truncations.size(); ++i) {
    if (truncations[i] <= truncations[i - 1]) throw InvalidInput("truncation_sweep: truncations must increase strictly");
  }
  const OperatorMatrix full = weyl_quantize(p, hbar, truncations.back());
  TruncationSweep sweep;
  sweep.truncations = truncations;
  for (int n : truncations) {
    const double value = lowest_eigenvalue(n == full.truncation ? full : full.leading_block(n));
    if (!sweep.values.empty() && value > sweep.values.back() + 1e-10) {
      throw MonotonicityViolation("lowest eigenvalue increased from " + std::to_string(sweep.values.back()) + " to " +
                                  std::to_string(value) + " at truncation " + std::to_string(n));
    }
    sweep.values.push_back(value);
  }
  if (sweep.values.size() > 1) sweep.last_gap = std::abs(sweep.values.back() - sweep.values[sweep.values.size() - 2]);
  return sweep;
}

double conjugation_residual(const GradedSymbol& p, double lambda, int truncation) {
  if (!(lambda >= 1.0)) throw InvalidInput("conjugation_residual: Lambda must be >= 1");
  if (p.empty()) return 0.0;
  const OperatorMatrix direct = weyl_quantize(p.fold(lambda), 1.0 / lambda, truncation);
  const OperatorMatrix scaled = weyl_quantize(scale_symbol_folded(p, lambda), 1.0, truncation);
  const double norm = max_abs(direct.entries);
  const double diff = max_abs(direct.entries - scaled.entries);
  return norm > 0.0 ? diff / norm : diff;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace melin
