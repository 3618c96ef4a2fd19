#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "melin/error.hpp"
#include "melin/invariants.hpp"
#include "melin/localized.hpp"
#include "melin/moyal.hpp"
#include "melin/quantization.hpp"

namespace melin::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InvalidInput(where + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw InvalidInput(where + ": unknown key '" + key + "'");
  }
}

Range parse_range(const json& v, const std::string& name) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number_integer()) {
    throw InvalidInput("phase." + name + " must be [lo, hi, count]");
  }
  Range r{v[0].get<double>(), v[1].get<double>(), v[2].get<int>()};
  if (r.count < 1) throw InvalidInput("phase." + name + " count must be positive");
  return r;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j) + 0.0);
    rows.push_back(row);
  }
  return rows;
}

json complex_matrix_to_json(const OperatorMatrix& m) {
  return {{"dim", m.dim},
          {"truncation", m.truncation},
          {"hbar", m.hbar},
          {"pad", m.pad},
          {"re", matrix_to_json(m.entries.real())},
          {"im", matrix_to_json(m.entries.imag())}};
}

void print_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << std::setw(12) << m(i, j) + 0.0;
    out << " ]\n";
  }
}

json diagnosis_to_json(const Diagnosis& d) {
  json levels = json::array();
  for (const auto& lv : d.vanishing) {
    levels.push_back({{"j", lv.j},
                      {"required_degree", lv.required_degree},
                      {"ok", lv.ok},
                      {"offending", terms_to_json(lv.offending)}});
  }
  return {{"vanishing", {{"ok", d.vanishing_ok}, {"levels", levels}}},
          {"ellipticity",
           {{"ok", d.ellipticity.ok},
            {"samples", d.ellipticity.samples},
            {"min", d.ellipticity.min_value},
            {"max", d.ellipticity.max_value},
            {"note", d.ellipticity.note}}},
          {"positivity",
           {{"evaluated", d.positivity.evaluated},
            {"ok", d.positivity.ok},
            {"lambda_min", d.positivity.lambda_min},
            {"gap", d.positivity.gap},
            {"truncation", d.positivity.truncation},
            {"note", d.positivity.note}}},
          {"overall", d.overall}};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("invalid integer list '" + text + "'");
    }
  }
  return out;
}

struct Common {
  bool json_output = false;
};

int cmd_traceplus(const std::string& h_text, const std::string& h_file, double s, bool as_json, std::ostream& out) {
  std::string text = h_text;
  if (!h_file.empty()) {
    std::ifstream in(h_file);
    if (!in) throw InvalidInput("cannot read Hessian file '" + h_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  if (text.empty()) throw InvalidInput("traceplus: give --h or --h-file");
  const auto rows = parse_matrix_text(text);
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0 || n % 2 != 0) throw InvalidInput("traceplus: Hessian must be 2d x 2d");
  QuadraticData q;
  q.dim = static_cast<int>(n / 2);
  q.hessian.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw InvalidInput("traceplus: Hessian must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) q.hessian(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  q.subprincipal = s;

  const Eigen::MatrixXd f = fundamental_matrix(q);
  const double tp = trace_plus(q);
  const double melin = melin_quantity(q);
  if (as_json) {
    out << json{{"F", matrix_to_json(f)}, {"trace_plus", tp}, {"subprincipal", s}, {"melin", melin}}.dump(2) << "\n";
  } else {
    out << "fundamental matrix F:\n";
    print_matrix(out, f);
    out << "tr+ F = " << format_double(tp) << "\n";
    out << "melin quantity = " << format_double(melin) << "\n";
  }
  return kSuccess;
}

int cmd_localize(const std::string& path, const std::string& truncations, const std::string& export_path, bool as_json,
                 std::ostream& out) {
  const ModelFile model = load_model_file(path);
  const GradedSymbol& symbol = model.literal.symbol;
  HypothesisOptions options;
  if (!truncations.empty()) options.truncations = parse_int_list(truncations);
  const Diagnosis diag = hypothesis_check(symbol, options);

  json result = {{"diagnosis", diagnosis_to_json(diag)}, {"k", symbol.k()}};
  if (diag.vanishing_ok) {
    const PolynomialSymbol loc = localized_symbol(symbol);
    result["localized_symbol"] = terms_to_json(loc);
    result["localized_text"] = loc.to_string();
    if (!export_path.empty()) {
      const int n = options.truncations.empty() ? default_localization_truncations(symbol.dim()).back()
                                                : options.truncations.back();
      std::ofstream file(export_path);
      if (!file) throw Error("cannot write matrix export '" + export_path + "'");
      file << complex_matrix_to_json(weyl_quantize(loc, 1.0, n)).dump() << "\n";
    }
  }

  if (as_json) {
    out << result.dump(2) << "\n";
  } else {
    if (diag.vanishing_ok) out << "localized symbol: " << result["localized_text"].get<std::string>() << "\n";
    out << "vanishing orders: " << (diag.vanishing_ok ? "pass" : "FAIL") << "\n";
    for (const auto& lv : diag.vanishing) {
      if (!lv.ok) out << "  level " << lv.j << " below degree " << lv.required_degree << ": " << lv.offending.to_string() << "\n";
    }
    out << "transverse ellipticity: " << (diag.ellipticity.ok ? "pass" : "FAIL") << " (min "
        << format_double(diag.ellipticity.min_value) << " over " << diag.ellipticity.samples << " samples)"
        << (diag.ellipticity.note.empty() ? "" : " " + diag.ellipticity.note) << "\n";
    if (diag.positivity.evaluated) {
      out << "lambda_min(P_Sigma) = " << format_double(diag.positivity.lambda_min) << " at N = " << diag.positivity.truncation
          << " (gap " << format_double(diag.positivity.gap) << ")\n";
    }
    out << "localized positivity: " << (diag.positivity.ok ? "pass" : "FAIL")
        << (diag.positivity.note.empty() ? "" : " (" + diag.positivity.note + ")") << "\n";
    out << "verdict: " << (diag.overall ? "pass" : "FAIL") << "\n";
  }
  return diag.overall ? kSuccess : kHypothesisFailure;
}

int cmd_sweep(const std::string& path, const std::string& out_path, const std::string& format, int workers,
              double limit_tol, double slope_tol, int max_truncation, bool as_json, std::ostream& out) {
  const ModelFile model = load_model_file(path);
  if (!model.sweep) throw InvalidInput("model has no 'sweep' section");
  if (format != "csv" && format != "json") throw InvalidInput("--format must be csv or json");
  ModelSpec spec;
  spec.symbol = model.literal.symbol;
  spec.lambdas = model.sweep->lambdas;
  spec.truncations = model.sweep->truncations;
  spec.workers = workers;
  spec.limit_tol = limit_tol;
  spec.slope_tol = slope_tol;
  spec.max_truncation = max_truncation > 0 ? max_truncation : (spec.symbol.dim() == 1 ? 256 : 32);
  spec.validate();

  const SweepReport report = lambda_sweep(spec);
  if (!out_path.empty()) emit_report(report, format == "csv" ? ReportFormat::Csv : ReportFormat::Json, out_path);

  if (as_json) {
    out << report_to_json(report).dump(2) << "\n";
  } else {
    out << "Lambda        N    lambda_min               Lambda^k*lambda_min\n";
    for (const auto& r : report.rows) {
      out << std::left << std::setw(12) << format_double(r.lambda) << std::setw(5) << r.n_used << std::setw(25)
          << format_double(r.lambda_min) << format_double(r.scaled) << (r.converged ? "" : "  (not converged)") << "\n";
    }
    out << std::right;
    out << "reference lambda_min(P_Sigma) = " << format_double(report.reference) << "\n";
    out << "fitted slope = " << format_double(report.slope) << " (target " << -report.k << ")\n";
    out << "limit deviation = " << format_double(report.limit_deviation) << "\n";
    out << "hypotheses: " << (report.hypotheses_ok ? "pass" : "FAIL") << "\n";
    out << "verdict: " << (report.verdict ? "pass" : "FAIL") << "\n";
  }
  return report.verdict ? kSuccess : kVerificationFailure;
}

int cmd_phase(const std::string& path, const std::string& out_path, const std::string& format, int workers,
              int truncation, double tolerance, bool as_json, std::ostream& out) {
  const ModelFile model = load_model_file(path);
  if (!model.phase) throw InvalidInput("model has no 'phase' section");
  if (format != "csv" && format != "json") throw InvalidInput("--format must be csv or json");
  PhaseGrid grid = *model.phase;
  grid.workers = workers;
  if (truncation > 0) grid.truncation = truncation;
  if (grid.truncation < 2) throw InvalidInput("phase truncation must be >= 2");
  const PhaseTable table = melin_phase_diagram(grid);

  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot write '" + out_path + "'");
    if (format == "csv") {
      file << format_phase_csv(table);
    } else {
      file << phase_to_json(table).dump(2) << "\n";
    }
  }
  const bool ok = table.sign_consistent && table.max_error <= tolerance;
  if (as_json) {
    json j = phase_to_json(table);
    j["tolerance"] = tolerance;
    j["verdict"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "alpha beta gamma s : melin  lambda_min  error\n";
    for (const auto& r : table.rows) {
      out << format_double(r.alpha) << " " << format_double(r.beta) << " " << format_double(r.gamma) << " "
          << format_double(r.s) << " : " << format_double(r.melin) << "  " << format_double(r.lambda_min) << "  "
          << format_double(r.error) << "\n";
    }
    for (const auto& note : table.skipped) out << "skipped: " << note << "\n";
    out << "max error = " << format_double(table.max_error) << "\n";
    out << "sign consistent: " << (table.sign_consistent ? "yes" : "NO") << "\n";
    out << "verdict: " << (ok ? "pass" : "FAIL") << "\n";
  }
  return ok ? kSuccess : kVerificationFailure;
}

PolynomialSymbol parse_polynomial_argument(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("polynomial argument is not valid JSON: ") + e.what());
  }
  return parse_terms(j);
}

int cmd_star(const std::string& a_text, const std::string& b_text, double hbar, bool as_json, std::ostream& out) {
  if (!(hbar >= 0.0)) throw InvalidInput("--hbar must be non-negative");
  const PolynomialSymbol a = parse_polynomial_argument(a_text);
  const PolynomialSymbol b = parse_polynomial_argument(b_text);
  const PolynomialSymbol c = moyal_star(a, b, hbar);
  if (as_json) {
    out << json{{"hbar", hbar}, {"terms", terms_to_json(c)}}.dump(2) << "\n";
  } else {
    out << c.to_string() << "\n";
  }
  return kSuccess;
}

}  // namespace

std::vector<std::vector<double>> parse_matrix_text(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row_text;
  while (std::getline(ss, row_text, ';')) {
    for (char& c : row_text) {
      if (c == ',' || c == '\n' || c == '\t' || c == '[' || c == ']') c = ' ';
    }
    std::stringstream rs(row_text);
    std::vector<double> row;
    std::string tok;
    while (rs >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InvalidInput("matrix entry '" + tok + "' is not a number");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

ModelFile parse_model_file(const json& j) {
  reject_unknown(j, {"d", "m", "k", "levels", "sweep", "phase"}, "model");
  json symbol = json::object();
  for (const char* key : {"d", "m", "k", "levels"}) {
    if (j.contains(key)) symbol[key] = j[key];
  }
  ModelFile model{parse_symbol_literal(symbol, true), std::nullopt, std::nullopt};

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    reject_unknown(s, {"lambdas", "truncations"}, "sweep");
    SweepSection section;
    if (!s.contains("lambdas") || !s["lambdas"].is_array()) throw InvalidInput("sweep.lambdas must be an array");
    for (const auto& v : s["lambdas"]) {
      if (!v.is_number()) throw InvalidInput("sweep.lambdas entries must be numbers");
      section.lambdas.push_back(v.get<double>());
    }
    if (s.contains("truncations")) {
      if (!s["truncations"].is_array()) throw InvalidInput("sweep.truncations must be an array");
      for (const auto& v : s["truncations"]) {
        if (!v.is_number_integer()) throw InvalidInput("sweep.truncations entries must be integers");
        section.truncations.push_back(v.get<int>());
      }
    } else {
      section.truncations = {16, 32};
    }
    model.sweep = std::move(section);
  }

  if (j.contains("phase")) {
    const json& p = j["phase"];
    reject_unknown(p, {"alpha", "beta", "gamma", "s", "truncation"}, "phase");
    PhaseGrid grid;
    for (const char* key : {"alpha", "beta", "gamma", "s"}) {
      if (!p.contains(key)) throw InvalidInput(std::string("phase.") + key + " is required");
    }
    grid.alpha = parse_range(p["alpha"], "alpha");
    grid.beta = parse_range(p["beta"], "beta");
    grid.gamma = parse_range(p["gamma"], "gamma");
    grid.s = parse_range(p["s"], "s");
    if (p.contains("truncation")) {
      if (!p["truncation"].is_number_integer()) throw InvalidInput("phase.truncation must be an integer");
      grid.truncation = p["truncation"].get<int>();
    }
    model.phase = grid;
  }
  return model;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open model file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_model_file(j);
}

int default_workers() {
  const char* env = std::getenv("MELIN_LAB_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) throw InvalidInput("MELIN_LAB_WORKERS must be a positive integer");
  return static_cast<int>(v);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"melin_lab: Weyl calculus, localized operators and lower-bound sweeps"};
  app.require_subcommand(1);

  bool as_json = false;
  int workers = 0;

  auto* traceplus = app.add_subcommand("traceplus", "fundamental matrix, tr+ F and the Melin quantity of a Hessian");
  std::string h_text, h_file;
  traceplus->set_help_flag("--help", "Print this help message and exit");
  double s_value = 0.0;
  traceplus->add_option("--h", h_text, "Hessian rows, e.g. \"2 0; 0 2\"");
  traceplus->add_option("--h-file", h_file, "file holding the Hessian in the same text form");
  traceplus->add_option("--s", s_value, "subprincipal value");
  traceplus->add_flag("--json", as_json, "machine-readable output");

  auto* localize_cmd = app.add_subcommand("localize", "localized operator and hypothesis diagnosis");
  std::string model_path, truncations, export_path;
  localize_cmd->add_option("model", model_path, "model file")->required();
  localize_cmd->add_option("--truncations", truncations, "comma-separated truncation ladder");
  localize_cmd->add_option("--export-matrix", export_path, "write the localized matrix as JSON");
  localize_cmd->add_flag("--json", as_json, "machine-readable output");

  auto* sweep = app.add_subcommand("sweep", "Lambda sweep of the lowest eigenvalue");
  std::string out_path, format = "csv";
  double limit_tol = 0.05, slope_tol = 0.05;
  int max_truncation = 0;
  sweep->add_option("model", model_path, "model file")->required();
  sweep->add_option("--out", out_path, "report path");
  sweep->add_option("--format", format, "csv or json");
  sweep->add_option("--workers", workers, "worker threads (default MELIN_LAB_WORKERS or 1)");
  sweep->add_option("--limit-tol", limit_tol, "relative tolerance on Lambda^k lambda_min at the largest Lambda");
  sweep->add_option("--slope-tol", slope_tol, "tolerance on the fitted log-log slope");
  sweep->add_option("--max-truncation", max_truncation, "truncation escalation cap");
  sweep->add_flag("--json", as_json, "machine-readable summary");

  auto* phase = app.add_subcommand("phase", "Melin phase diagram for quadratic models");
  int phase_truncation = 0;
  double phase_tol = 1e-6;
  phase->add_option("model", model_path, "model file with a 'phase' section")->required();
  phase->add_option("--out", out_path, "table path");
  phase->add_option("--format", format, "csv or json");
  phase->add_option("--workers", workers, "worker threads (default MELIN_LAB_WORKERS or 1)");
  phase->add_option("--truncation", phase_truncation, "truncation per mode (default from model or 64)");
  phase->add_option("--tol", phase_tol, "agreement tolerance");
  phase->add_flag("--json", as_json, "machine-readable output");

  auto* star = app.add_subcommand("star", "exact Weyl composition of two polynomial symbols");
  std::string a_text, b_text;
  double hbar = 1.0;
  star->add_option("--a", a_text, "terms array, e.g. '[{\"c\":[1,0],\"y\":[1],\"eta\":[0]}]'")->required();
  star->add_option("--b", b_text, "terms array")->required();
  star->add_option("--hbar", hbar, "semiclassical parameter");
  star->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    if (workers == 0) workers = default_workers();
    if (workers < 1) throw InvalidInput("--workers must be positive");
    if (*traceplus) return cmd_traceplus(h_text, h_file, s_value, as_json, out);
    if (*localize_cmd) return cmd_localize(model_path, truncations, export_path, as_json, out);
    if (*sweep) return cmd_sweep(model_path, out_path, format, workers, limit_tol, slope_tol, max_truncation, as_json, out);
    if (*phase) return cmd_phase(model_path, out_path, format, workers, phase_truncation, phase_tol, as_json, out);
    if (*star) return cmd_star(a_text, b_text, hbar, as_json, out);
  } catch (const HypothesisViolation& e) {
    err << "error: hypothesis violated: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InvalidInput& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DimensionMismatch& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kInvalidInput;
}

}  // namespace melin::cli
