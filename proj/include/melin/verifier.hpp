#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "melin/graded.hpp"

namespace melin {

struct ModelSpec {
  GradedSymbol symbol{1, HalfInteger{}, 1};
  std::vector<double> lambdas;
  /// Escalation ladder; doubling continues past the last entry up to max_truncation.
  std::vector<int> truncations{16, 32};
  int max_truncation = 256;
  double limit_tol = 0.05;
  double slope_tol = 0.05;
  int workers = 1;

  /// Throws InvalidInput when the lambdas are not >= 1 and increasing, or the
  /// truncation ladder is not strictly increasing.
  void validate() const;
};

struct SweepRow {
  double lambda = 0.0;
  int n_used = 0;
  double lambda_min = 0.0;
  double scaled = 0.0;     ///< Lambda^k lambda_min
  double reference = 0.0;  ///< lambda_min of the localized operator
  bool converged = false;
  double gap = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepReport {
  int k = 0;
  std::vector<SweepRow> rows;
  double reference = 0.0;
  double slope = 0.0;            ///< least-squares slope of log|lambda_min| against log Lambda
  double limit_deviation = 0.0;  ///< |scaled(Lambda_max) / reference - 1|
  double limit_tol = 0.05;
  double slope_tol = 0.05;
  bool hypotheses_ok = false;
  bool converged = false;
  bool verdict = false;

  bool operator==(const SweepReport&) const = default;
};

/// Lowest eigenvalue of the folded model at one Lambda with truncation
/// escalation until |gap| < 1e-8 |lambda_min| + 1e-12.
SweepRow sweep_row(const ModelSpec& spec, double lambda, double reference);

/// Runs every Lambda (rows in parallel, `spec.workers` threads), then fits
/// the slope. The verdict needs the hypotheses, a positive scaled value at
/// the largest Lambda, the limit within limit_tol and the slope within
/// slope_tol of -k.
SweepReport lambda_sweep(const ModelSpec& spec);

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct PhaseGrid {
  Range alpha, beta, gamma, s;
  int truncation = 64;
  int workers = 1;
};

struct PhaseRow {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, s = 0.0;
  double melin = 0.0;
  double lambda_min = 0.0;
  double error = 0.0;
};

struct PhaseTable {
  std::vector<PhaseRow> rows;
  std::vector<std::string> skipped;
  double max_error = 0.0;
  /// sign(lambda_min) == sign(melin) wherever |melin| > 1e-8
  bool sign_consistent = true;
};

/// For Q0 = alpha y^2 + 2 beta y eta + gamma eta^2 compares
/// lambda_min(Op(Q0 + s)) with s + tr+(F_Q0) / 2. Indefinite points are skipped.
PhaseTable melin_phase_diagram(const PhaseGrid& grid);

enum class ReportFormat { Csv, Json };

std::string format_csv(const SweepReport& report);
nlohmann::json report_to_json(const SweepReport& report);
SweepReport report_from_json(const nlohmann::json& j);
std::string format_phase_csv(const PhaseTable& table);
nlohmann::json phase_to_json(const PhaseTable& table);

/// Writes the report; CSV is byte-deterministic for a fixed report.
void emit_report(const SweepReport& report, ReportFormat format, const std::string& path);

/// 17 significant digits, "%.17g".
std::string format_double(double v);

}  // namespace melin
