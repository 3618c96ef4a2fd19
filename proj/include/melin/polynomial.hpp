#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace melin {

using Complex = std::complex<double>;

/// Exponents of a monomial y^alpha eta^beta in R^d x R^d.
/// Layout: first d entries are the y-powers, last d the eta-powers.
struct MultiIndex {
  std::vector<int> powers;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> p);
  MultiIndex(std::span<const int> y_powers, std::span<const int> eta_powers);

  static MultiIndex zero(int dim);

  int dim() const { return static_cast<int>(powers.size() / 2); }
  int y(int s) const { return powers[static_cast<std::size_t>(s)]; }
  int eta(int s) const { return powers[static_cast<std::size_t>(dim() + s)]; }
  int total_degree() const;

  MultiIndex operator+(const MultiIndex& other) const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;
};

/// Finite sum of complex-coefficient monomials in the transverse variables.
///
/// Zero coefficients are never stored, so two symbols compare equal exactly
/// when they have the same monomials with bitwise-equal coefficients.
class PolynomialSymbol {
 public:
  using TermMap = std::map<MultiIndex, Complex>;

  explicit PolynomialSymbol(int dim);

  static PolynomialSymbol constant(int dim, Complex c);
  static PolynomialSymbol monomial(const MultiIndex& index, Complex c = 1.0);
  /// The coordinate function y_s.
  static PolynomialSymbol position(int dim, int s);
  /// The coordinate function eta_s.
  static PolynomialSymbol momentum(int dim, int s);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Complex coefficient(const MultiIndex& index) const;
  void add_term(const MultiIndex& index, Complex c);

  /// Highest total degree; 0 for the zero symbol.
  int degree() const;
  /// Lowest total degree; 0 for the zero symbol.
  int min_degree() const;

  PolynomialSymbol homogeneous_part(int degree) const;
  PolynomialSymbol conj() const;
  bool is_real() const;

  /// Partial derivative of the given order with respect to variable `var`
  /// (0..d-1 are y, d..2d-1 are eta).
  PolynomialSymbol derivative(int var, int order = 1) const;

  Complex evaluate(std::span<const double> point) const;

  PolynomialSymbol& operator+=(const PolynomialSymbol& other);
  PolynomialSymbol& operator-=(const PolynomialSymbol& other);
  PolynomialSymbol& operator*=(Complex c);

  friend PolynomialSymbol operator+(PolynomialSymbol a, const PolynomialSymbol& b) { return a += b; }
  friend PolynomialSymbol operator-(PolynomialSymbol a, const PolynomialSymbol& b) { return a -= b; }
  friend PolynomialSymbol operator*(PolynomialSymbol a, Complex c) { return a *= c; }
  friend PolynomialSymbol operator*(Complex c, PolynomialSymbol a) { return a *= c; }
  /// Commutative (pointwise) product.
  friend PolynomialSymbol operator*(const PolynomialSymbol& a, const PolynomialSymbol& b);

  bool operator==(const PolynomialSymbol& other) const = default;

  /// Largest coefficient modulus of (a - b); used for approximate comparisons.
  friend double max_coefficient_distance(const PolynomialSymbol& a, const PolynomialSymbol& b);

  std::string to_string() const;

 private:
  void check_same_dim(const PolynomialSymbol& other) const;

  int dim_;
  TermMap terms_;
};

}  // namespace melin
