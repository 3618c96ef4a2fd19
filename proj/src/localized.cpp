#include "melin/localized.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "melin/error.hpp"
#include "melin/moyal.hpp"

namespace melin {

std::vector<int> default_localization_truncations(int dim) {
  return dim == 1 ? std::vector<int>{32, 64, 128} : std::vector<int>{8, 16, 32};
}

PolynomialSymbol localized_symbol(const GradedSymbol& p) {
  PolynomialSymbol out(p.dim());
  for (const auto& [j, poly] : p.levels()) {
    if (j > p.k()) continue;
    out += taylor_transverse(poly, 2 * p.k() - 2 * j, true).leading;
  }
  return out;
}

LocalizedOperator localize(const GradedSymbol& p, const std::vector<int>& truncations) {
  PolynomialSymbol symbol = localized_symbol(p);
  const std::vector<int> ns = truncations.empty() ? default_localization_truncations(p.dim()) : truncations;
  TruncationSweep sweep = truncation_sweep(symbol, 1.0, ns);
  OperatorMatrix matrix = weyl_quantize(symbol, 1.0, ns.back());
  const double lambda_min = sweep.values.back();
  return LocalizedOperator{p, p.k(), std::move(symbol), std::move(matrix), lambda_min, std::move(sweep)};
}

std::vector<std::vector<double>> sphere_samples(int dim) {
  std::vector<std::vector<double>> pts;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (dim == 1) {
    for (int i = 0; i < 360; ++i) {
      const double t = two_pi * i / 360.0;
      pts.push_back({std::cos(t), std::sin(t)});
    }
  } else if (dim == 2) {
    // (cos th cos f1, cos th sin f1, sin th cos f2, sin th sin f2), ordered (y1, y2, eta1, eta2)
    constexpr int n_theta = 26, n_phi = 20;
    for (int a = 0; a < n_theta; ++a) {
      const double th = 0.5 * std::numbers::pi * a / (n_theta - 1);
      for (int b = 0; b < n_phi; ++b) {
        const double f1 = two_pi * b / n_phi;
        for (int c = 0; c < n_phi; ++c) {
          const double f2 = two_pi * c / n_phi;
          pts.push_back({std::cos(th) * std::cos(f1), std::sin(th) * std::cos(f2), std::cos(th) * std::sin(f1),
                         std::sin(th) * std::sin(f2)});
        }
      }
    }
  } else {
    throw InvalidInput("sphere_samples: dimension must be 1 or 2");
  }
  return pts;
}

Diagnosis hypothesis_check(const GradedSymbol& p, const HypothesisOptions& options) {
  Diagnosis diag;
  for (const auto& [j, poly] : p.levels()) {
    if (j > p.k()) continue;
    LevelVanishing lv;
    lv.j = j;
    lv.required_degree = 2 * p.k() - 2 * j;
    lv.offending = taylor_transverse(poly, lv.required_degree, false).below;
    lv.ok = lv.offending.empty();
    diag.vanishing_ok = diag.vanishing_ok && lv.ok;
    diag.vanishing.push_back(std::move(lv));
  }

  EllipticityCheck& ell = diag.ellipticity;
  try {
    const PolynomialSymbol principal = p.level(0).homogeneous_part(2 * p.k());
    const auto pts = sphere_samples(p.dim());
    ell.samples = static_cast<int>(pts.size());
    ell.min_value = std::numeric_limits<double>::infinity();
    ell.max_value = -std::numeric_limits<double>::infinity();
    for (const auto& x : pts) {
      const double v = principal.evaluate(x).real();
      ell.min_value = std::min(ell.min_value, v);
      ell.max_value = std::max(ell.max_value, v);
    }
    ell.floor = options.ellipticity_eps * ell.max_value;
    ell.ok = principal.is_real() && ell.max_value > 0.0 && ell.min_value >= ell.floor && ell.min_value > 0.0;
    if (!principal.is_real()) ell.note = "principal part has complex coefficients";
    else if (!ell.ok) ell.note = "principal part is not transversally elliptic on the unit sphere";
  } catch (const std::exception& e) {
    ell.ok = false;
    ell.note = e.what();
  }

  PositivityCheck& pos = diag.positivity;
  if (!diag.vanishing_ok) {
    pos.note = "skipped: vanishing-order violation";
  } else {
    try {
      const LocalizedOperator loc = localize(p, options.truncations);
      pos.evaluated = true;
      pos.lambda_min = loc.lambda_min;
      pos.gap = loc.sweep.last_gap;
      pos.truncation = loc.sweep.truncations.back();
      const bool converged = pos.gap <= 1e-6 * std::max(1.0, std::abs(pos.lambda_min));
      pos.ok = converged && loc.lambda_min > 0.0;
      if (!converged) {
        pos.note = "lowest eigenvalue not converged in the truncation ladder";
      } else if (!pos.ok) {
        pos.note = "localized operator has no positive lower bound";
      }
    } catch (const std::exception& e) {
      pos.note = e.what();
    }
  }
  diag.overall = diag.vanishing_ok && ell.ok && pos.ok;
  return diag;
}

GradedSymbol graded_compose(const GradedSymbol& p, const GradedSymbol& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("graded_compose: dimension mismatch");
  GradedSymbol out(p.dim(), p.order() + q.order(), p.k() + q.k());
  for (const auto& [jp, a] : p.levels()) {
    for (const auto& [jq, b] : q.levels()) {
      const auto components = moyal_components(a, b);
      for (std::size_t r = 0; r < components.size(); ++r) {
        if (!components[r].empty()) out.add_level(jp + jq + static_cast<int>(r), components[r]);
      }
    }
  }
  return out;
}

double localization_product_check(const GradedSymbol& p, const GradedSymbol& q, double lambda, int truncation) {
  if (!(lambda >= 1.0)) throw InvalidInput("localization_product_check: Lambda must be >= 1");
  const GradedSymbol pq = graded_compose(p, q);

  const PolynomialSymbol folded = pq.fold(lambda);
  const PolynomialSymbol direct = moyal_star(p.fold(lambda), q.fold(lambda), 1.0 / lambda);
  double scale = 1.0;
  for (const auto& [idx, c] : direct.terms()) scale = std::max(scale, std::abs(c));
  if (max_coefficient_distance(folded, direct) > 1e-10 * scale) {
    throw Error("localization_product_check: graded composition disagrees with the folded star product");
  }

  const PolynomialSymbol lp = localized_symbol(p);
  const PolynomialSymbol lq = localized_symbol(q);
  const PolynomialSymbol lpq = localized_symbol(pq);
  const int wide = truncation + lp.degree() + lq.degree();
  const OperatorMatrix mp = weyl_quantize(lp, 1.0, wide);
  const OperatorMatrix mq = weyl_quantize(lq, 1.0, wide);
  const Eigen::MatrixXcd product = restrict_block(mp.entries * mq.entries, p.dim(), wide, truncation);
  const OperatorMatrix mpq = weyl_quantize(lpq, 1.0, truncation);
  return max_abs(mpq.entries - product);
}

QuadraticData quadratic_data(const GradedSymbol& p) {
  const int d = p.dim();
  const PolynomialSymbol quad = p.level(0).homogeneous_part(2);
  QuadraticData q;
  q.dim = d;
  q.hessian = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  for (int a = 0; a < 2 * d; ++a) {
    for (int b = 0; b < 2 * d; ++b) {
      q.hessian(a, b) = quad.derivative(a).derivative(b).coefficient(MultiIndex::zero(d)).real();
    }
  }
  q.subprincipal = p.level(1).homogeneous_part(0).coefficient(MultiIndex::zero(d)).real();
  return q;
}

}  // namespace melin
