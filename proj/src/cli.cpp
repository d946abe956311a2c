#include "bsingular/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bsingular/bernstein.hpp"
#include "bsingular/combination.hpp"
#include "bsingular/endpoint_modifier.hpp"
#include "bsingular/errors.hpp"
#include "bsingular/fit.hpp"
#include "bsingular/modulus.hpp"
#include "bsingular/report.hpp"
#include "bsingular/sweep_config.hpp"
#include "bsingular/test_function.hpp"

namespace bsingular {

int resolve_threads(std::optional<int> flag, int configured) {
  if (flag) return std::max(1, *flag);
  if (const char* env = std::getenv("BSINGULAR_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') throw ConfigurationError(std::string("BSINGULAR_THREADS is not an integer: ") + env);
    return std::max(1L, v) > 1024 ? 1024 : static_cast<int>(std::max(1L, v));
  }
  return std::max(1, configured);
}

namespace {

struct EvalArgs {
  std::string op;
  std::string f;
  long n = 0;
  long k = 0;
  int m = 1;
  int r = 2;
  int deriv = -1;
  std::string ladder = "geometric";
  std::vector<double> x;
};

struct ModulusArgs {
  std::string config;
  std::string f;
  std::optional<double> alpha, beta, beta0, beta1;
  std::optional<int> r;
  std::vector<double> t;
  std::string out;
  bool refine = false;
};

struct VerifyArgs {
  std::string config;
  std::string json_out;
  std::string csv_out;
  std::vector<std::string> checks;
  std::vector<std::string> functions;
};

struct PlotArgs {
  std::string report;
  std::string out_dir = ".";
};

std::string format17(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const bool needs_f = a.op != "basis";
  if (needs_f && a.f.empty()) throw ConfigurationError("--f is required for --op " + a.op);
  if (a.x.empty()) throw ConfigurationError("at least one --x point is required");
  const int deriv = a.deriv < 0 ? (a.op == "Bstar_deriv" ? a.r : 0) : a.deriv;
  std::optional<TestFunction> f;
  if (needs_f) f = lookup_function(a.f);
  const Ladder ladder = ladder_from_string(a.ladder);

  std::function<double(double)> eval;
  if (a.op == "basis") {
    eval = [&](double x) { return basis(a.n, a.k, x); };
  } else if (a.op == "Bn") {
    const SampledFunction s = f->sampled();
    const Eigen::VectorXd nodes = node_values(s, a.n);
    eval = [nodes, deriv](double x) { return derivative_from_nodes(nodes, deriv, x); };
  } else if (a.op == "combo") {
    const auto scheme = CombinationScheme::make(a.n, a.m, ladder);
    const auto nodes = combo_node_values(scheme, f->sampled());
    eval = [scheme, nodes, deriv](double x) { return combo_derivative_nodes(scheme, nodes, deriv, x); };
  } else if (a.op == "Fn") {
    const auto fn = modified_function(f->sampled(deriv), a.n, a.r);
    eval = [fn, deriv](double x) { return deriv == 0 ? fn(x) : fn.derivative(deriv, x); };
  } else if (a.op == "Bstar" || a.op == "Bstar_deriv") {
    const auto scheme = CombinationScheme::make(a.n, a.m, ladder);
    const SampledFunction s = f->sampled();
    eval = [scheme, s, deriv, r = a.r](double x) { return bstar_derivative(scheme, s, r, deriv, x); };
  } else {
    throw ConfigurationError("unknown operator " + a.op);
  }
  for (double x : a.x) out << format17(eval(x)) << '\n';
  return kExitOk;
}

int cmd_modulus(const ModulusArgs& a, std::ostream& out) {
  SweepConfig config;
  if (!a.config.empty()) {
    config = load_config(a.config);
  } else {
    config.theorem_mode = false;
  }
  if (!a.f.empty()) config.functions = {a.f};
  if (a.alpha) config.alpha = *a.alpha;
  if (a.beta) config.beta = *a.beta;
  if (a.beta0) config.beta0 = *a.beta0;
  if (a.beta1) config.beta1 = *a.beta1;
  if (a.r) config.r = *a.r;
  if (!a.t.empty()) config.t_list = a.t;
  if (config.functions.size() != 1) throw ConfigurationError("modulus needs exactly one function (--f or config)");
  config.require_valid();

  const TestFunction f = lookup_function(config.functions.front());
  const SampledFunction s = f.sampled();
  const JacobiWeight w(config.alpha, config.beta);
  const StepWeight phi(config.beta0, config.beta1);
  const ModulusResolution res = a.refine ? config.resolution.refined() : config.resolution;
  const ModulusEstimate est = estimate_modulus(s, w, phi, config.r, config.t_list, res);

  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "t,omega,Omega,K\n";
  for (std::size_t i = 0; i < est.t_grid.size(); ++i) {
    const double t = est.t_grid[i];
    csv << t << ',' << est.values[i] << ',' << main_part_modulus(s, w, phi, config.r, t, 1.0, res) << ','
        << steklov_k_functional(s, w, phi, config.r, t, res) << '\n';
  }
  if (est.saturated)
    csv << "# fit omega: saturated (all values at rounding level)\n";
  else
    csv << "# fit omega: exponent=" << est.fitted_exponent << " residual=" << est.fit_residual
        << " samples=" << est.t_grid.size() << '\n';

  if (a.out.empty() || a.out == "-") {
    out << csv.str();
  } else {
    std::ofstream file(a.out);
    if (!file) throw IoError("cannot write " + a.out);
    file << csv.str();
    if (!file) throw IoError("failed writing " + a.out);
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::optional<int> threads_flag, std::ostream& out) {
  SweepConfig config = a.config.empty() ? SweepConfig{} : load_config(a.config);
  if (!a.json_out.empty()) config.json_out = a.json_out;
  if (!a.csv_out.empty()) config.csv_out = a.csv_out;
  if (!a.checks.empty()) config.checks = a.checks;
  if (!a.functions.empty()) config.functions = a.functions;
  if (config.json_out.empty()) config.json_out = "bsingular_report.json";
  if (config.csv_out.empty()) config.csv_out = "bsingular_report.csv";
  const int threads = resolve_threads(threads_flag, config.threads);

  const SweepReport report = run_sweep(config, threads);
  report.write_json(config.json_out);
  report.write_csv(config.csv_out);

  out << std::left << std::setw(16) << "criterion" << std::setw(22) << "function" << std::setw(4) << "m"
      << std::setw(14) << "constant" << "status\n";
  for (const auto& c : report.checks) {
    std::ostringstream constant;
    constant << std::setprecision(5) << c.empirical_constant;
    out << std::setw(16) << c.criterion << std::setw(22) << c.function << std::setw(4) << c.m << std::setw(14)
        << constant.str() << to_string(c.status);
    if (!c.note.empty() && c.status != Status::pass) out << "  (" << c.note << ')';
    out << '\n';
  }
  const bool ok = report.all_passed();
  out << (ok ? "all checks passed" : "some checks FAILED") << "; report: " << config.json_out << ", "
      << config.csv_out << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

std::string file_stem(const Check& c) {
  std::string name;
  for (char ch : c.function) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-')
      name += ch;
    else if (ch == '^')
      name += "pow";
    else if (ch == '|')
      name += "abs";
    else
      name += '_';
  }
  return c.criterion + "__" + name + "__m" + std::to_string(c.m);
}

void write_tsv(const std::filesystem::path& path, const Check& c, const std::string& what, const std::string& x_name,
               const std::string& y_name, const std::vector<std::pair<double, double>>& rows) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());
  file << std::setprecision(17);
  file << "# " << what << " for " << c.function << " (criterion " << c.criterion << ", m = " << c.m
       << ", status " << to_string(c.status) << ")\n";
  file << "# columns: log10_" << x_name << "\tlog10_" << y_name << '\t' << x_name << '\t' << y_name << '\n';
  std::size_t dropped = 0;
  for (const auto& [x, y] : rows) {
    if (!(x > 0.0 && y > 0.0)) {
      ++dropped;
      continue;
    }
    file << std::log10(x) << '\t' << std::log10(y) << '\t' << x << '\t' << y << '\n';
  }
  if (dropped > 0) file << "# dropped " << dropped << " non-positive rows\n";
  if (!file) throw IoError("failed writing " + path.string());
}

int cmd_plotdata(const PlotArgs& a, std::ostream& out) {
  const SweepReport report = read_report(a.report);
  const std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  int files = 0;
  for (const auto& c : report.checks) {
    if (c.scales.empty() && c.curve.empty()) continue;
    std::vector<std::pair<double, double>> rows;
    for (std::size_t i = 0; i < c.scales.size(); ++i) rows.emplace_back(c.scales[i], c.values[i]);
    const bool error_series = c.criterion == "inverse";
    if (!rows.empty()) {
      write_tsv(dir / (file_stem(c) + ".tsv"), c, error_series ? "pointwise error against local scale" : "ratio sweep",
                c.scale_name, error_series ? "error" : "ratio", rows);
      ++files;
    }
    if (!c.curve.empty()) {
      write_tsv(dir / (file_stem(c) + "__modulus.tsv"), c, "modulus against t", "t", "omega", c.curve);
      ++files;
    }
  }
  out << "wrote " << files << " files to " << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Bernstein combination toolkit"};
  app.require_subcommand(1);
  std::optional<int> threads;
  app.add_option("--threads", threads, "worker threads (fallback: BSINGULAR_THREADS)")->check(CLI::PositiveNumber);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate an operator at points");
  eval->add_option("--op", ea.op, "basis | Bn | combo | Fn | Bstar | Bstar_deriv")
      ->required()
      ->check(CLI::IsMember({"basis", "Bn", "combo", "Fn", "Bstar", "Bstar_deriv"}));
  eval->add_option("--f", ea.f, "corpus name or expression in t");
  eval->add_option("--n", ea.n, "degree")->required();
  eval->add_option("--k", ea.k, "basis index");
  eval->add_option("--m", ea.m, "combination terms")->check(CLI::PositiveNumber);
  eval->add_option("--r", ea.r, "modification order")->check(CLI::PositiveNumber);
  eval->add_option("--deriv", ea.deriv, "derivative order (Bstar_deriv defaults to r)")->check(CLI::NonNegativeNumber);
  eval->add_option("--ladder", ea.ladder, "geometric | arithmetic")->check(CLI::IsMember({"geometric", "arithmetic"}));
  eval->add_option("--x", ea.x, "evaluation points")->required()->delimiter(',');

  ModulusArgs ma;
  auto* modulus = app.add_subcommand("modulus", "tabulate omega, Omega and K over t");
  modulus->add_option("--config", ma.config, "sweep configuration JSON");
  modulus->add_option("--f", ma.f, "corpus name or expression in t");
  modulus->add_option("--alpha", ma.alpha);
  modulus->add_option("--beta", ma.beta);
  modulus->add_option("--beta0", ma.beta0);
  modulus->add_option("--beta1", ma.beta1);
  modulus->add_option("--r", ma.r);
  modulus->add_option("--t", ma.t, "t values")->delimiter(',');
  modulus->add_option("--out", ma.out, "CSV path (default stdout)");
  modulus->add_flag("--refine", ma.refine, "double every sampling resolution");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the verification sweeps");
  verify->add_option("--config", va.config, "sweep configuration JSON");
  verify->add_option("--json", va.json_out, "JSON report path");
  verify->add_option("--csv", va.csv_out, "CSV report path");
  verify->add_option("--checks", va.checks, "subset of checks")->delimiter(',');
  verify->add_option("--f", va.functions, "functions (default corpus when absent)");

  PlotArgs pa;
  auto* plot = app.add_subcommand("plotdata", "write TSV plot data from a report");
  plot->add_option("--report", pa.report, "JSON report")->required();
  plot->add_option("--out-dir", pa.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(ea, out);
    if (modulus->parsed()) return cmd_modulus(ma, out);
    if (verify->parsed()) return cmd_verify(va, threads, out);
    if (plot->parsed()) return cmd_plotdata(pa, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bsingular
