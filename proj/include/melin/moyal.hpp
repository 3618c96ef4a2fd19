#pragma once

#include <vector>

#include "melin/polynomial.hpp"

namespace melin {

/// Order-r pieces of the Weyl composition at hbar = 1:
///   component[r] = (1/r!) (i/2)^r B^r(a, b),
/// with B(a, b) = sum_s (d_{y_s} a d_{eta_s} b - d_{eta_s} a d_{y_s} b).
/// The list stops at r = min(deg a, deg b).
std::vector<PolynomialSymbol> moyal_components(const PolynomialSymbol& a, const PolynomialSymbol& b);

/// Exact Weyl composition a # b = sum_r hbar^r component[r].
/// Throws DimensionMismatch when a and b live in different dimensions.
PolynomialSymbol moyal_star(const PolynomialSymbol& a, const PolynomialSymbol& b, double hbar);

/// {a, b} = sum_s d_{y_s} a d_{eta_s} b - d_{eta_s} a d_{y_s} b.
PolynomialSymbol poisson_bracket(const PolynomialSymbol& a, const PolynomialSymbol& b);

/// The Weyl symbol whose quantization is the fully symmetrized product of
/// the coordinate operators named by `index`. For coordinate factors this is
/// the monomial itself with no remainder.
PolynomialSymbol symmetrize_monomial(const MultiIndex& index);

}  // namespace melin
