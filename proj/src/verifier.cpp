#include "melin/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>

#include "melin/error.hpp"
#include "melin/invariants.hpp"
#include "melin/localized.hpp"
#include "melin/quantization.hpp"

namespace melin {
namespace {

// Runs body(i) for i in [0, n) on `workers` threads, rethrowing the first
// exception after the loop.
template <typename Body>
void parallel_rows(int n, int workers, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, workers))
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double json_double(const nlohmann::json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

}  // namespace

void ModelSpec::validate() const {
  if (lambdas.empty()) throw InvalidInput("model: sweep needs at least one Lambda");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 1.0)) throw InvalidInput("model: Lambda values must be >= 1");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) throw InvalidInput("model: Lambda values must increase");
  }
  if (truncations.empty()) throw InvalidInput("model: truncation ladder is empty");
  for (std::size_t i = 0; i < truncations.size(); ++i) {
    if (truncations[i] < 2) throw InvalidInput("model: truncations must be >= 2");
    if (i > 0 && truncations[i] <= truncations[i - 1]) throw InvalidInput("model: truncations must increase strictly");
  }
  if (max_truncation < truncations.back()) throw InvalidInput("model: max truncation below the ladder");
  if (workers < 1) throw InvalidInput("model: worker count must be positive");
}

SweepRow sweep_row(const ModelSpec& spec, double lambda, double reference) {
  const PolynomialSymbol folded = spec.symbol.fold(lambda);
  const double hbar = 1.0 / lambda;

  std::vector<int> ladder = spec.truncations;
  while (ladder.back() < spec.max_truncation) ladder.push_back(std::min(2 * ladder.back(), spec.max_truncation));

  SweepRow row;
  row.lambda = lambda;
  row.reference = reference;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double value = lowest_eigenvalue(weyl_quantize(folded, hbar, ladder[i]));
    if (i > 0 && value > previous + 1e-10) {
      throw MonotonicityViolation("sweep: lowest eigenvalue increased with truncation at Lambda = " +
                                  format_double(lambda));
    }
    row.n_used = ladder[i];
    row.lambda_min = value;
    if (i > 0) {
      row.gap = std::abs(value - previous);
      if (row.gap < 1e-8 * std::abs(value) + 1e-12) {
        row.converged = true;
        break;
      }
    }
    previous = value;
  }
  row.scaled = std::pow(lambda, spec.symbol.k()) * row.lambda_min;
  return row;
}

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || ys[i] == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(xs[i]);
    const double ly = std::log(std::abs(ys[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

SweepReport lambda_sweep(const ModelSpec& spec) {
  spec.validate();
  if (spec.symbol.order().twice() != 0) throw InvalidInput("lambda_sweep: model order must be normalized to 0");

  SweepReport report;
  report.k = spec.symbol.k();
  report.limit_tol = spec.limit_tol;
  report.slope_tol = spec.slope_tol;

  const Diagnosis diag = hypothesis_check(spec.symbol);
  report.hypotheses_ok = diag.overall;
  report.reference = diag.positivity.evaluated ? diag.positivity.lambda_min : std::numeric_limits<double>::quiet_NaN();

  report.rows.resize(spec.lambdas.size());
  parallel_rows(static_cast<int>(spec.lambdas.size()), spec.workers, [&](int i) {
    report.rows[static_cast<std::size_t>(i)] = sweep_row(spec, spec.lambdas[static_cast<std::size_t>(i)], report.reference);
  });

  std::vector<double> xs, ys;
  report.converged = true;
  for (const auto& r : report.rows) {
    xs.push_back(r.lambda);
    ys.push_back(r.lambda_min);
    report.converged = report.converged && r.converged;
  }
  report.slope = fit_loglog_slope(xs, ys);
  const double last = report.rows.back().scaled;
  report.limit_deviation = std::abs(last / report.reference - 1.0);
  report.verdict = report.hypotheses_ok && last > 0.0 && report.limit_deviation <= spec.limit_tol &&
                   std::abs(report.slope + report.k) <= spec.slope_tol;
  return report;
}

std::vector<double> Range::values() const {
  if (count < 1) throw InvalidInput("range: count must be positive");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return out;
}

PhaseTable melin_phase_diagram(const PhaseGrid& grid) {
  struct Point {
    double alpha, beta, gamma, s;
  };
  std::vector<Point> points;
  PhaseTable table;
  for (double a : grid.alpha.values()) {
    for (double b : grid.beta.values()) {
      for (double g : grid.gamma.values()) {
        if (!(a * g - b * b > 0.0) || a <= 0.0) {
          table.skipped.push_back("indefinite Q0 at alpha=" + format_double(a) + " beta=" + format_double(b) +
                                  " gamma=" + format_double(g));
          continue;
        }
        for (double s : grid.s.values()) points.push_back({a, b, g, s});
      }
    }
  }

  table.rows.resize(points.size());
  parallel_rows(static_cast<int>(points.size()), grid.workers, [&](int i) {
    const Point& pt = points[static_cast<std::size_t>(i)];
    QuadraticData q;
    q.dim = 1;
    q.hessian.resize(2, 2);
    q.hessian << 2 * pt.alpha, 2 * pt.beta, 2 * pt.beta, 2 * pt.gamma;
    q.subprincipal = pt.s;

    PolynomialSymbol symbol(1);
    symbol.add_term(MultiIndex({2, 0}), pt.alpha);
    symbol.add_term(MultiIndex({1, 1}), 2 * pt.beta);
    symbol.add_term(MultiIndex({0, 2}), pt.gamma);
    symbol.add_term(MultiIndex({0, 0}), pt.s);

    PhaseRow& row = table.rows[static_cast<std::size_t>(i)];
    row.alpha = pt.alpha;
    row.beta = pt.beta;
    row.gamma = pt.gamma;
    row.s = pt.s;
    row.melin = melin_quantity(q);
    row.lambda_min = lowest_eigenvalue(weyl_quantize(symbol, 1.0, grid.truncation));
    row.error = std::abs(row.lambda_min - row.melin);
  });

  for (const auto& r : table.rows) {
    table.max_error = std::max(table.max_error, r.error);
    if (std::abs(r.melin) > 1e-8 && (r.melin > 0) != (r.lambda_min > 0)) table.sign_consistent = false;
  }
  return table;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_csv(const SweepReport& report) {
  std::string out = "lambda,n_used,lambda_min,scaled,reference\n";
  for (const auto& r : report.rows) {
    out += format_double(r.lambda) + "," + std::to_string(r.n_used) + "," + format_double(r.lambda_min) + "," +
           format_double(r.scaled) + "," + format_double(r.reference) + "\n";
  }
  return out;
}

nlohmann::json report_to_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"lambda", r.lambda},
                    {"n_used", r.n_used},
                    {"lambda_min", r.lambda_min},
                    {"scaled", r.scaled},
                    {"reference", r.reference},
                    {"converged", r.converged},
                    {"gap", r.gap}});
  }
  return {{"k", report.k},
          {"rows", rows},
          {"reference", report.reference},
          {"slope", report.slope},
          {"limit_deviation", report.limit_deviation},
          {"limit_tol", report.limit_tol},
          {"slope_tol", report.slope_tol},
          {"hypotheses_ok", report.hypotheses_ok},
          {"converged", report.converged},
          {"verdict", report.verdict}};
}

SweepReport report_from_json(const nlohmann::json& j) {
  SweepReport r;
  r.k = j.at("k").get<int>();
  for (const auto& row : j.at("rows")) {
    SweepRow s;
    s.lambda = json_double(row.at("lambda"));
    s.n_used = row.at("n_used").get<int>();
    s.lambda_min = json_double(row.at("lambda_min"));
    s.scaled = json_double(row.at("scaled"));
    s.reference = json_double(row.at("reference"));
    s.converged = row.at("converged").get<bool>();
    s.gap = json_double(row.at("gap"));
    r.rows.push_back(s);
  }
  r.reference = json_double(j.at("reference"));
  r.slope = json_double(j.at("slope"));
  r.limit_deviation = json_double(j.at("limit_deviation"));
  r.limit_tol = json_double(j.at("limit_tol"));
  r.slope_tol = json_double(j.at("slope_tol"));
  r.hypotheses_ok = j.at("hypotheses_ok").get<bool>();
  r.converged = j.at("converged").get<bool>();
  r.verdict = j.at("verdict").get<bool>();
  return r;
}

std::string format_phase_csv(const PhaseTable& table) {
  std::string out = "alpha,beta,gamma,s,melin,lambda_min,error\n";
  for (const auto& r : table.rows) {
    out += format_double(r.alpha) + "," + format_double(r.beta) + "," + format_double(r.gamma) + "," +
           format_double(r.s) + "," + format_double(r.melin) + "," + format_double(r.lambda_min) + "," +
           format_double(r.error) + "\n";
  }
  return out;
}

nlohmann::json phase_to_json(const PhaseTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"alpha", r.alpha},
                    {"beta", r.beta},
                    {"gamma", r.gamma},
                    {"s", r.s},
                    {"melin", r.melin},
                    {"lambda_min", r.lambda_min},
                    {"error", r.error}});
  }
  return {{"rows", rows},
          {"skipped", table.skipped},
          {"max_error", table.max_error},
          {"sign_consistent", table.sign_consistent}};
}

void emit_report(const SweepReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open report file '" + path + "' for writing");
  if (format == ReportFormat::Csv) {
    out << format_csv(report);
  } else {
    out << report_to_json(report).dump(2) << "\n";
  }
  if (!out) throw Error("failed writing report file '" + path + "'");
}

}  // namespace melin
