#pragma once

#include <string>
#include <vector>

#include "melin/graded.hpp"
#include "melin/invariants.hpp"
#include "melin/polynomial.hpp"
#include "melin/quantization.hpp"

namespace melin {

/// Transverse model operator at a characteristic point: the sum over levels
/// j <= k of the degree-(2k - 2j) part of level j, quantized at hbar = 1.
struct LocalizedOperator {
  GradedSymbol source;
  int k = 0;
  PolynomialSymbol symbol;
  OperatorMatrix matrix;  ///< at the largest truncation of `sweep`
  double lambda_min = 0.0;
  TruncationSweep sweep;
};

/// {32, 64, 128} for d = 1, {8, 16, 32} for d = 2.
std::vector<int> default_localization_truncations(int dim);

/// Throws VanishingOrderViolation if some level j <= k has a term of degree
/// below 2k - 2j.
PolynomialSymbol localized_symbol(const GradedSymbol& p);

LocalizedOperator localize(const GradedSymbol& p, const std::vector<int>& truncations = {});

struct LevelVanishing {
  int j = 0;
  int required_degree = 0;
  bool ok = true;
  PolynomialSymbol offending{1};
};

struct EllipticityCheck {
  bool ok = false;
  int samples = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  double floor = 0.0;  ///< eps * max_value
  std::string note;
};

struct PositivityCheck {
  bool evaluated = false;
  bool ok = false;
  double lambda_min = 0.0;
  double gap = 0.0;
  int truncation = 0;
  std::string note;
};

struct Diagnosis {
  std::vector<LevelVanishing> vanishing;
  bool vanishing_ok = true;
  EllipticityCheck ellipticity;
  PositivityCheck positivity;
  bool overall = false;
};

struct HypothesisOptions {
  double ellipticity_eps = 1e-9;
  std::vector<int> truncations;  ///< empty: default_localization_truncations
};

/// Checks the vanishing orders, transverse ellipticity of the principal part
/// on the unit sphere, and positivity of the localized operator. Never throws.
Diagnosis hypothesis_check(const GradedSymbol& p, const HypothesisOptions& options = {});

/// Unit-sphere sample points in R^{2d}: 360 angles for d = 1, a
/// 26 x 20 x 20 Hopf-coordinate grid for d = 2.
std::vector<std::vector<double>> sphere_samples(int dim);

/// Graded Weyl composition. Star order r of levels (j_p, j_q) lands on level
/// j_p + j_q + r; orders add, k adds.
GradedSymbol graded_compose(const GradedSymbol& p, const GradedSymbol& q);

/// max |Op(loc(p # q)) - Op(loc p) Op(loc q)| on the exact truncation block.
/// Also confirms fold(p # q) = fold(p) #_{1/Lambda} fold(q) at the given
/// Lambda, raising Error if the grading bookkeeping disagrees.
double localization_product_check(const GradedSymbol& p, const GradedSymbol& q, double lambda, int truncation);

/// Hessian of the degree-2 part of level 0 and the constant of level 1.
QuadraticData quadratic_data(const GradedSymbol& p);

}  // namespace melin
