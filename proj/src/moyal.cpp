#include "melin/moyal.hpp"

#include <algorithm>
#include <cmath>

#include "melin/error.hpp"

namespace melin {
namespace {

double falling_factorial(int n, int k) {
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= static_cast<double>(n - i);
  return f;
}

double factorial(int n) { return falling_factorial(n, n); }

// (i/2)^r without going through complex exp/log.
Complex half_i_power(int r) {
  const double mag = std::ldexp(1.0, -r);
  switch (r % 4) {
    case 0: return {mag, 0.0};
    case 1: return {0.0, mag};
    case 2: return {-mag, 0.0};
    default: return {0.0, -mag};
  }
}

// Enumerates p, q in N^d with p_s <= p_cap_s and q_s <= q_cap_s.
template <typename Visit>
void for_each_pair(const std::vector<int>& p_cap, const std::vector<int>& q_cap, Visit&& visit) {
  const std::size_t d = p_cap.size();
  std::vector<int> p(d, 0), q(d, 0);
  while (true) {
    visit(p, q);
    // odometer over the 2d digits (p_0..p_{d-1}, q_0..q_{d-1})
    std::size_t digit = 0;
    while (digit < 2 * d) {
      int& v = digit < d ? p[digit] : q[digit - d];
      const int cap = digit < d ? p_cap[digit] : q_cap[digit - d];
      if (v < cap) {
        ++v;
        break;
      }
      v = 0;
      ++digit;
    }
    if (digit == 2 * d) return;
  }
}

// Contribution of monomials y^alpha eta^beta (a) and y^gamma eta^delta (b):
//   sum_{p,q} (i/2)^{|p|+|q|} (-1)^{|q|} / (p! q!) d_y^p d_eta^q a * d_y^q d_eta^p b
void accumulate_monomial_pair(const MultiIndex& ia, Complex ca, const MultiIndex& ib, Complex cb,
                              std::vector<PolynomialSymbol>& out) {
  const int d = ia.dim();
  std::vector<int> p_cap(static_cast<std::size_t>(d)), q_cap(static_cast<std::size_t>(d));
  for (int s = 0; s < d; ++s) {
    p_cap[static_cast<std::size_t>(s)] = std::min(ia.y(s), ib.eta(s));
    q_cap[static_cast<std::size_t>(s)] = std::min(ia.eta(s), ib.y(s));
  }
  for_each_pair(p_cap, q_cap, [&](const std::vector<int>& p, const std::vector<int>& q) {
    int order = 0, q_total = 0;
    double weight = 1.0;
    MultiIndex result = ia + ib;
    for (int s = 0; s < d; ++s) {
      const auto us = static_cast<std::size_t>(s);
      const int ps = p[us], qs = q[us];
      order += ps + qs;
      q_total += qs;
      weight *= falling_factorial(ia.y(s), ps) * falling_factorial(ia.eta(s), qs) *
                falling_factorial(ib.y(s), qs) * falling_factorial(ib.eta(s), ps);
      weight /= factorial(ps) * factorial(qs);
      result.powers[us] -= ps + qs;
      result.powers[static_cast<std::size_t>(d + s)] -= ps + qs;
    }
    Complex factor = half_i_power(order) * weight;
    if (q_total % 2 != 0) factor = -factor;
    out[static_cast<std::size_t>(order)].add_term(result, factor * ca * cb);
  });
}

}  // namespace

std::vector<PolynomialSymbol> moyal_components(const PolynomialSymbol& a, const PolynomialSymbol& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("moyal_star: symbols have different dimensions");
  const int max_order = std::min(a.degree(), b.degree());
  std::vector<PolynomialSymbol> out(static_cast<std::size_t>(max_order) + 1, PolynomialSymbol(a.dim()));
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) accumulate_monomial_pair(ia, ca, ib, cb, out);
  }
  return out;
}

PolynomialSymbol moyal_star(const PolynomialSymbol& a, const PolynomialSymbol& b, double hbar) {
  if (!(hbar >= 0.0)) throw InvalidInput("moyal_star: hbar must be non-negative");
  const auto components = moyal_components(a, b);
  PolynomialSymbol out(a.dim());
  double power = 1.0;
  for (const auto& c : components) {
    out += c * Complex(power);
    power *= hbar;
  }
  return out;
}

PolynomialSymbol poisson_bracket(const PolynomialSymbol& a, const PolynomialSymbol& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("poisson_bracket: symbols have different dimensions");
  const int d = a.dim();
  PolynomialSymbol out(d);
  for (int s = 0; s < d; ++s) {
    out += a.derivative(s) * b.derivative(d + s);
    out -= a.derivative(d + s) * b.derivative(s);
  }
  return out;
}

PolynomialSymbol symmetrize_monomial(const MultiIndex& index) { return PolynomialSymbol::monomial(index); }

}  // namespace melin
