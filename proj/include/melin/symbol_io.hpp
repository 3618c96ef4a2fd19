#pragma once

#include <nlohmann/json.hpp>

#include "melin/graded.hpp"
#include "melin/polynomial.hpp"

namespace melin {

/// Graded symbol literal as read from JSON:
///   {"d": int, "m": number, "k": int,
///    "levels": [{"j": int, "terms": [{"c": [re, im], "y": [...], "eta": [...]}]}]}
struct SymbolLiteral {
  GradedSymbol symbol;
  double declared_order = 0.0;  ///< "m" as written in the file
};

/// Parses a literal. Unknown keys are rejected with InvalidInput.
/// With `normalize_order` the symbol's order is set to 0 whatever "m" says
/// (the Lambda^m prefactor is a global scalar); otherwise "m" must be a
/// half-integer.
SymbolLiteral parse_symbol_literal(const nlohmann::json& j, bool normalize_order = true);

/// Parses a "terms" array. The dimension is taken from the arrays when
/// `dim` is 0.
PolynomialSymbol parse_terms(const nlohmann::json& terms, int dim = 0);

nlohmann::json terms_to_json(const PolynomialSymbol& p);
nlohmann::json symbol_to_json(const GradedSymbol& g);

}  // namespace melin
