#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "melin/symbol_io.hpp"
#include "melin/verifier.hpp"

namespace melin::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kHypothesisFailure = 3,
  kVerificationFailure = 4,
};

struct SweepSection {
  std::vector<double> lambdas;
  std::vector<int> truncations;
};

/// Symbol literal plus optional experiment sections. Unknown keys anywhere
/// are rejected.
struct ModelFile {
  SymbolLiteral literal;
  std::optional<SweepSection> sweep;
  std::optional<PhaseGrid> phase;
};

ModelFile parse_model_file(const nlohmann::json& j);
ModelFile load_model_file(const std::string& path);

/// Parses "a b; c d" (rows separated by ';', entries by spaces or commas).
std::vector<std::vector<double>> parse_matrix_text(const std::string& text);

/// MELIN_LAB_WORKERS if set (must be a positive integer), else 1.
int default_workers();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace melin::cli
