#include "melin/symbol_io.hpp"

#include <optional>
#include <set>
#include <string>

#include "melin/error.hpp"

namespace melin {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const char* where) {
  if (!obj.is_object()) throw InvalidInput(std::string(where) + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw InvalidInput(std::string(where) + ": unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

int require_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return v.get<int>();
}

std::vector<int> int_array(const json& v, const char* what) {
  if (!v.is_array()) throw InvalidInput(std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    const int x = require_int(e, what);
    if (x < 0) throw InvalidInput(std::string(what) + " entries must be non-negative");
    out.push_back(x);
  }
  return out;
}

}  // namespace

PolynomialSymbol parse_terms(const json& terms, int dim) {
  if (!terms.is_array()) throw InvalidInput("terms must be an array");
  std::optional<PolynomialSymbol> out;
  if (dim > 0) out.emplace(dim);
  for (const auto& t : terms) {
    reject_unknown_keys(t, {"c", "y", "eta"}, "term");
    const json& c = require(t, "c", "term");
    Complex coeff;
    if (c.is_number()) {
      coeff = c.get<double>();
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      coeff = Complex(c[0].get<double>(), c[1].get<double>());
    } else {
      throw InvalidInput("term coefficient 'c' must be [re, im]");
    }
    const auto y = int_array(require(t, "y", "term"), "term 'y'");
    const auto eta = int_array(require(t, "eta", "term"), "term 'eta'");
    if (y.size() != eta.size() || y.empty()) throw InvalidInput("term 'y' and 'eta' must have equal non-zero length");
    if (!out) out.emplace(static_cast<int>(y.size()));
    if (static_cast<int>(y.size()) != out->dim()) throw InvalidInput("term dimension does not match 'd'");
    out->add_term(MultiIndex(y, eta), coeff);
  }
  if (!out) throw InvalidInput("cannot infer dimension from an empty terms array");
  return *out;
}

SymbolLiteral parse_symbol_literal(const json& j, bool normalize_order) {
  reject_unknown_keys(j, {"d", "m", "k", "levels"}, "symbol");
  const int d = require_int(require(j, "d", "symbol"), "'d'");
  if (d < 1 || d > 2) throw InvalidInput("'d' must be 1 or 2");
  const json& m = require(j, "m", "symbol");
  if (!m.is_number()) throw InvalidInput("'m' must be a number");
  const double declared = m.get<double>();
  const int k = require_int(require(j, "k", "symbol"), "'k'");
  if (k < 1) throw InvalidInput("'k' must be a positive integer");

  const HalfInteger order = normalize_order ? HalfInteger{} : HalfInteger::from_double(declared);
  GradedSymbol g(d, order, k);
  const json& levels = require(j, "levels", "symbol");
  if (!levels.is_array()) throw InvalidInput("'levels' must be an array");
  std::set<int> seen;
  for (const auto& level : levels) {
    reject_unknown_keys(level, {"j", "terms"}, "level");
    const int lj = require_int(require(level, "j", "level"), "level 'j'");
    if (lj < 0) throw InvalidInput("level 'j' must be non-negative");
    if (!seen.insert(lj).second) throw InvalidInput("duplicate level j = " + std::to_string(lj));
    g.add_level(lj, parse_terms(require(level, "terms", "level"), d));
  }
  return SymbolLiteral{std::move(g), declared};
}

json terms_to_json(const PolynomialSymbol& p) {
  json arr = json::array();
  const int d = p.dim();
  for (const auto& [idx, c] : p.terms()) {
    std::vector<int> y(idx.powers.begin(), idx.powers.begin() + d);
    std::vector<int> eta(idx.powers.begin() + d, idx.powers.end());
    arr.push_back({{"c", {c.real(), c.imag()}}, {"y", y}, {"eta", eta}});
  }
  return arr;
}

json symbol_to_json(const GradedSymbol& g) {
  json levels = json::array();
  for (const auto& [j, p] : g.levels()) levels.push_back({{"j", j}, {"terms", terms_to_json(p)}});
  return {{"d", g.dim()}, {"m", g.order().value()}, {"k", g.k()}, {"levels", levels}};
}

}  // namespace melin
