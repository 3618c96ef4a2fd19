#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "melin/polynomial.hpp"

namespace melin {

/// A half-integer stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_int(int v) { return HalfInteger(2 * v); }
  /// Throws InvalidInput unless 2*v is an integer.
  static HalfInteger from_double(double v);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }

  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }
  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Model operator p = sum_j Lambda^(m - j) q_j over grading levels j.
///
/// The vanishing-order requirement (level j starts at transverse degree
/// 2k - 2j) is not enforced here; `hypothesis_check` and `taylor_transverse`
/// in strict mode report it.
class GradedSymbol {
 public:
  GradedSymbol(int dim, HalfInteger order, int k);

  int dim() const { return dim_; }
  HalfInteger order() const { return order_; }
  int k() const { return k_; }
  const std::map<int, PolynomialSymbol>& levels() const { return levels_; }
  bool empty() const;

  /// Adds `poly` into level j (summing if the level exists).
  void add_level(int j, const PolynomialSymbol& poly);
  /// Level j, or the zero symbol when absent.
  PolynomialSymbol level(int j) const;

  /// The plain symbol sum_j Lambda^(m-j) q_j at a numeric Lambda.
  PolynomialSymbol fold(double lambda) const;
  bool is_real() const;

  GradedSymbol with_order(HalfInteger order) const;

 private:
  int dim_;
  HalfInteger order_;
  int k_;
  std::map<int, PolynomialSymbol> levels_;
};

/// Sum of coefficient * Lambda^e * monomial with e in (1/2)Z.
class HalfGradedPolynomial {
 public:
  using Key = std::pair<MultiIndex, HalfInteger>;

  explicit HalfGradedPolynomial(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::map<Key, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const MultiIndex& index, HalfInteger exponent, Complex c);
  Complex coefficient(const MultiIndex& index, HalfInteger exponent) const;

  PolynomialSymbol fold(double lambda) const;

 private:
  int dim_;
  std::map<Key, Complex> terms_;
};

struct TaylorSplit {
  PolynomialSymbol leading;    ///< terms of total degree exactly `order`
  PolynomialSymbol remainder;  ///< terms of degree > order
  PolynomialSymbol below;      ///< terms of degree < order (empty in strict mode)
};

/// Splits p by total degree around `order`. In strict mode any term below
/// `order` raises VanishingOrderViolation naming the offending monomials.
TaylorSplit taylor_transverse(const PolynomialSymbol& p, int order, bool strict = false);

/// Dilation y -> Lambda^{-1/2} y, eta -> Lambda^{-1/2} eta applied to the
/// graded symbol: a monomial of degree l at level j gets exponent m - j - l/2.
HalfGradedPolynomial scale_symbol(const GradedSymbol& p);

/// scale_symbol(p).fold(lambda).
PolynomialSymbol scale_symbol_folded(const GradedSymbol& p, double lambda);

}  // namespace melin
