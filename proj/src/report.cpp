#include "bsingular/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "bsingular/errors.hpp"

namespace bsingular {

bool SweepReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.status != Status::fail; });
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) list.push_back(c.to_json());
  return {{"schema_version", schema_version}, {"config", config.to_json()}, {"checks", list}, {"all_passed", all_passed()}};
}

SweepReport SweepReport::from_json(const nlohmann::json& j) {
  SweepReport report;
  try {
    report.schema_version = j.at("schema_version").get<int>();
    if (report.schema_version != kReportSchemaVersion)
      throw ConfigurationError("unsupported report schema version " + std::to_string(report.schema_version));
    report.config = SweepConfig::from_json(j.at("config"));
    for (const auto& c : j.at("checks")) report.checks.push_back(Check::from_json(c));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("malformed report: ") + e.what());
  }
  return report;
}

std::string SweepReport::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "function,criterion,m,n,value,status\n";
  for (const auto& c : checks) {
    const std::string name = c.function.find_first_of(",\"") == std::string::npos ? c.function : "\"" + c.function + "\"";
    for (std::size_t i = 0; i < c.scales.size(); ++i)
      out << name << ',' << c.criterion << ',' << c.m << ',' << c.scales[i] << ',' << c.values[i] << ','
          << to_string(c.status) << '\n';
  }
  return out.str();
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace

void SweepReport::write_json(const std::string& path) const { write_text(path, to_json().dump(2) + "\n"); }

void SweepReport::write_csv(const std::string& path) const { write_text(path, to_csv()); }

SweepReport read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report " + path);
  try {
    return SweepReport::from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigurationError("report " + path + " is not valid JSON: " + e.what());
  }
}

std::vector<TestFunction> resolve_functions(const SweepConfig& config) {
  const JacobiWeight w(config.alpha, config.beta);
  std::vector<TestFunction> base;
  if (config.functions.empty()) {
    for (auto& f : default_corpus())
      if (f.in_cw(w)) base.push_back(f);
  } else {
    for (const auto& name : config.functions) base.push_back(lookup_function(name));
  }
  std::vector<TestFunction> out;
  for (const auto& f : base) {
    auto alpha0 = f.expected_alpha0();
    if (auto it = config.expected_alpha0.find(f.name()); it != config.expected_alpha0.end()) alpha0 = it->second;
    out.emplace_back(f.name(), f.expression().source(), f.singularity(), alpha0);
  }
  return out;
}

SweepReport run_sweep(const SweepConfig& config, int threads) {
  config.require_valid();
  const auto functions = resolve_functions(config);

  SweepSetup base;
  base.w = JacobiWeight(config.alpha, config.beta);
  base.phi = StepWeight(config.beta0, config.beta1);
  base.r = config.r;
  base.ladder = config.ladder;
  base.n_list = config.n_list;
  base.grid = config.grid;
  base.resolution = config.resolution;
  const int theorem_m = std::max(1, config.r - 1);

  using Task = std::function<std::vector<Check>()>;
  std::vector<Task> tasks;
  for (const auto& f : functions) {
    for (int m : config.m_list) {
      SweepSetup s = base;
      s.m = m;
      if (config.theorem_mode && config.wants("theorem1"))
        tasks.emplace_back([f, s] { return verify_bernstein_inequality(f, s); });
      if (config.theorem_mode && config.wants("theorem2") && f.in_sobolev(s.w, s.phi, s.r))
        tasks.emplace_back([f, s] { return verify_smooth_bound(f, s); });
      if (config.wants("lemma5")) tasks.emplace_back([f, s] { return std::vector<Check>{verify_weighted_boundedness(f, s)}; });
    }
    SweepSetup s = base;
    s.m = theorem_m;
    if (config.wants("direct")) {
      SweepSetup d = s;
      d.n_list = config.direct_n_list;
      tasks.emplace_back([f, d] { return std::vector<Check>{verify_direct(f, d)}; });
    }
    if (config.wants("inverse")) {
      const InverseSetup inv = config.inverse;
      tasks.emplace_back([f, s, inv] {
        try {
          return std::vector<Check>{verify_inverse(f, s, inv)};
        } catch (const DegenerateFitError& e) {
          Check c;
          c.criterion = "inverse";
          c.function = f.name();
          c.m = s.m;
          c.scale_name = "s";
          c.status = Status::saturated;
          c.note = e.what();
          return std::vector<Check>{c};
        }
      });
    }
    if (config.wants("corollary")) {
      const double lambda = config.lambda;
      tasks.emplace_back([f, s, lambda] { return std::vector<Check>{verify_corollary(f, lambda, s)}; });
    }
    if (config.wants("cross_check") && f.name() == "t^3")
      tasks.emplace_back([f, s] { return std::vector<Check>{cross_check_combination(f, s)}; });
    if (config.wants("modulus")) {
      const auto t_list = config.t_list;
      tasks.emplace_back([f, s, t_list] { return std::vector<Check>{verify_modulus_consistency(f, s, t_list)}; });
    }
    if (config.wants("k_equivalence")) tasks.emplace_back([f, s] { return std::vector<Check>{verify_k_equivalence(f, s)}; });
  }
  if (config.wants("lemmas")) {
    for (const auto& [u, v] : config.uv) {
      const double uu = u, vv = v;
      tasks.emplace_back([uu, vv, &config] {
        return std::vector<Check>{verify_lemma_negative_moment(uu, vv, config.lemma_n_list, config.grid)};
      });
    }
    for (double gamma : config.gammas)
      tasks.emplace_back([gamma, &config] {
        return std::vector<Check>{verify_lemma_absolute_moment(gamma, config.lemma_n_list, config.grid)};
      });
    if (config.r <= 3)
      tasks.emplace_back([&config, phi = base.phi] { return std::vector<Check>{verify_lemma_box_integral(phi, config.r)}; });
  }

  SweepReport report;
  report.config = config;
  report.checks = run_checks(tasks, std::max(1, threads));
  return report;
}

}  // namespace bsingular
