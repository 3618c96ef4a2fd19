#include "melin/graded.hpp"

#include <cmath>
#include <sstream>

#include "melin/error.hpp"

namespace melin {

HalfInteger HalfInteger::from_double(double v) {
  const double twice = 2.0 * v;
  if (!std::isfinite(twice) || std::round(twice) != twice) {
    throw InvalidInput("order must be a half-integer");
  }
  return HalfInteger(static_cast<int>(twice));
}

GradedSymbol::GradedSymbol(int dim, HalfInteger order, int k) : dim_(dim), order_(order), k_(k) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  if (k < 0) throw InvalidInput("k must be non-negative");
}

bool GradedSymbol::empty() const {
  for (const auto& [j, p] : levels_) {
    if (!p.empty()) return false;
  }
  return true;
}

void GradedSymbol::add_level(int j, const PolynomialSymbol& poly) {
  if (j < 0) throw InvalidInput("grading level must be non-negative");
  if (poly.dim() != dim_) throw DimensionMismatch("level dimension does not match graded symbol");
  auto [it, inserted] = levels_.try_emplace(j, poly);
  if (!inserted) it->second += poly;
}

PolynomialSymbol GradedSymbol::level(int j) const {
  auto it = levels_.find(j);
  return it == levels_.end() ? PolynomialSymbol(dim_) : it->second;
}

PolynomialSymbol GradedSymbol::fold(double lambda) const {
  PolynomialSymbol out(dim_);
  for (const auto& [j, p] : levels_) {
    out += p * Complex(std::pow(lambda, (order_ - HalfInteger::from_int(j)).value()));
  }
  return out;
}

bool GradedSymbol::is_real() const {
  for (const auto& [j, p] : levels_) {
    if (!p.is_real()) return false;
  }
  return true;
}

GradedSymbol GradedSymbol::with_order(HalfInteger order) const {
  GradedSymbol out = *this;
  out.order_ = order;
  return out;
}

void HalfGradedPolynomial::add_term(const MultiIndex& index, HalfInteger exponent, Complex c) {
  if (index.dim() != dim_) throw DimensionMismatch("monomial dimension does not match symbol");
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(Key{index, exponent}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

Complex HalfGradedPolynomial::coefficient(const MultiIndex& index, HalfInteger exponent) const {
  auto it = terms_.find(Key{index, exponent});
  return it == terms_.end() ? Complex{} : it->second;
}

PolynomialSymbol HalfGradedPolynomial::fold(double lambda) const {
  PolynomialSymbol out(dim_);
  for (const auto& [key, c] : terms_) out.add_term(key.first, c * std::pow(lambda, key.second.value()));
  return out;
}

TaylorSplit taylor_transverse(const PolynomialSymbol& p, int order, bool strict) {
  TaylorSplit split{PolynomialSymbol(p.dim()), PolynomialSymbol(p.dim()), PolynomialSymbol(p.dim())};
  for (const auto& [idx, c] : p.terms()) {
    const int deg = idx.total_degree();
    if (deg == order) {
      split.leading.add_term(idx, c);
    } else if (deg > order) {
      split.remainder.add_term(idx, c);
    } else {
      split.below.add_term(idx, c);
    }
  }
  if (strict && !split.below.empty()) {
    std::ostringstream os;
    os << "vanishing-order violation: terms of degree < " << order << ": " << split.below.to_string();
    throw VanishingOrderViolation(os.str());
  }
  return split;
}

HalfGradedPolynomial scale_symbol(const GradedSymbol& p) {
  HalfGradedPolynomial out(p.dim());
  for (const auto& [j, poly] : p.levels()) {
    for (const auto& [idx, c] : poly.terms()) {
      const HalfInteger e = p.order() - HalfInteger::from_int(j) - HalfInteger::from_twice(idx.total_degree());
      out.add_term(idx, e, c);
    }
  }
  return out;
}

PolynomialSymbol scale_symbol_folded(const GradedSymbol& p, double lambda) { return scale_symbol(p).fold(lambda); }

}  // namespace melin
