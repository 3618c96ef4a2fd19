#include "melin/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "melin/error.hpp"

namespace melin {

MultiIndex::MultiIndex(std::vector<int> p) : powers(std::move(p)) {
  if (powers.empty() || powers.size() % 2 != 0) {
    throw InvalidInput("multi-index must have even positive length 2d");
  }
  for (int v : powers) {
    if (v < 0) throw InvalidInput("multi-index powers must be non-negative");
  }
}

MultiIndex::MultiIndex(std::span<const int> y_powers, std::span<const int> eta_powers) {
  if (y_powers.size() != eta_powers.size()) {
    throw DimensionMismatch("y and eta powers must have the same length");
  }
  std::vector<int> p(y_powers.begin(), y_powers.end());
  p.insert(p.end(), eta_powers.begin(), eta_powers.end());
  *this = MultiIndex(std::move(p));
}

MultiIndex MultiIndex::zero(int dim) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  return MultiIndex(std::vector<int>(2 * static_cast<std::size_t>(dim), 0));
}

int MultiIndex::total_degree() const {
  int deg = 0;
  for (int v : powers) deg += v;
  return deg;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (powers.size() != other.powers.size()) throw DimensionMismatch("multi-index length mismatch");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < powers.size(); ++i) out.powers[i] += other.powers[i];
  return out;
}

PolynomialSymbol::PolynomialSymbol(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
}

PolynomialSymbol PolynomialSymbol::constant(int dim, Complex c) {
  PolynomialSymbol p(dim);
  p.add_term(MultiIndex::zero(dim), c);
  return p;
}

PolynomialSymbol PolynomialSymbol::monomial(const MultiIndex& index, Complex c) {
  PolynomialSymbol p(index.dim());
  p.add_term(index, c);
  return p;
}

PolynomialSymbol PolynomialSymbol::position(int dim, int s) {
  MultiIndex idx = MultiIndex::zero(dim);
  idx.powers.at(static_cast<std::size_t>(s)) = 1;
  return monomial(idx);
}

PolynomialSymbol PolynomialSymbol::momentum(int dim, int s) {
  MultiIndex idx = MultiIndex::zero(dim);
  idx.powers.at(static_cast<std::size_t>(dim + s)) = 1;
  return monomial(idx);
}

Complex PolynomialSymbol::coefficient(const MultiIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Complex{} : it->second;
}

void PolynomialSymbol::add_term(const MultiIndex& index, Complex c) {
  if (index.dim() != dim_) throw DimensionMismatch("monomial dimension does not match symbol");
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

int PolynomialSymbol::degree() const {
  int deg = 0;
  for (const auto& [idx, c] : terms_) deg = std::max(deg, idx.total_degree());
  return deg;
}

int PolynomialSymbol::min_degree() const {
  if (terms_.empty()) return 0;
  int deg = terms_.begin()->first.total_degree();
  for (const auto& [idx, c] : terms_) deg = std::min(deg, idx.total_degree());
  return deg;
}

PolynomialSymbol PolynomialSymbol::homogeneous_part(int degree) const {
  PolynomialSymbol out(dim_);
  for (const auto& [idx, c] : terms_) {
    if (idx.total_degree() == degree) out.terms_.emplace(idx, c);
  }
  return out;
}

PolynomialSymbol PolynomialSymbol::conj() const {
  PolynomialSymbol out(dim_);
  for (const auto& [idx, c] : terms_) out.terms_.emplace(idx, std::conj(c));
  return out;
}

bool PolynomialSymbol::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.imag() == 0.0; });
}

PolynomialSymbol PolynomialSymbol::derivative(int var, int order) const {
  if (var < 0 || var >= 2 * dim_) throw InvalidInput("derivative variable out of range");
  PolynomialSymbol out(dim_);
  if (order == 0) return *this;
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [idx, c] : terms_) {
    const int p = idx.powers[v];
    if (p < order) continue;
    double factor = 1.0;
    for (int i = 0; i < order; ++i) factor *= static_cast<double>(p - i);
    MultiIndex reduced = idx;
    reduced.powers[v] -= order;
    out.add_term(reduced, c * factor);
  }
  return out;
}

Complex PolynomialSymbol::evaluate(std::span<const double> point) const {
  if (point.size() != 2 * static_cast<std::size_t>(dim_)) throw DimensionMismatch("evaluation point has wrong length");
  Complex sum{};
  for (const auto& [idx, c] : terms_) {
    double m = 1.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (int e = 0; e < idx.powers[i]; ++e) m *= point[i];
    }
    sum += c * m;
  }
  return sum;
}

void PolynomialSymbol::check_same_dim(const PolynomialSymbol& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("symbols have different dimensions");
}

PolynomialSymbol& PolynomialSymbol::operator+=(const PolynomialSymbol& other) {
  check_same_dim(other);
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

PolynomialSymbol& PolynomialSymbol::operator-=(const PolynomialSymbol& other) {
  check_same_dim(other);
  for (const auto& [idx, c] : other.terms_) add_term(idx, -c);
  return *this;
}

PolynomialSymbol& PolynomialSymbol::operator*=(Complex c) {
  if (c == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second == Complex{} ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

PolynomialSymbol operator*(const PolynomialSymbol& a, const PolynomialSymbol& b) {
  a.check_same_dim(b);
  PolynomialSymbol out(a.dim());
  for (const auto& [ia, ca] : a.terms_) {
    for (const auto& [ib, cb] : b.terms_) out.add_term(ia + ib, ca * cb);
  }
  return out;
}

double max_coefficient_distance(const PolynomialSymbol& a, const PolynomialSymbol& b) {
  const PolynomialSymbol diff = a - b;
  double m = 0.0;
  for (const auto& [idx, c] : diff.terms()) m = std::max(m, std::abs(c));
  return m;
}

std::string PolynomialSymbol::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0) {
      os << c.real();
    } else {
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    for (int s = 0; s < dim_; ++s) {
      const std::string mode_suffix = dim_ > 1 ? std::to_string(s + 1) : "";
      if (idx.y(s) > 0) os << "*y" << mode_suffix << (idx.y(s) > 1 ? "^" + std::to_string(idx.y(s)) : "");
    }
    for (int s = 0; s < dim_; ++s) {
      const std::string mode_suffix = dim_ > 1 ? std::to_string(s + 1) : "";
      if (idx.eta(s) > 0) os << "*eta" << mode_suffix << (idx.eta(s) > 1 ? "^" + std::to_string(idx.eta(s)) : "");
    }
  }
  return os.str();
}

}  // namespace melin
