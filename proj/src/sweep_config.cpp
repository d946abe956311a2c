#include "bsingular/sweep_config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bsingular/errors.hpp"
#include "bsingular/test_function.hpp"

namespace bsingular {

namespace {

std::string number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

template <class T>
bool strictly_increasing(const std::vector<T>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](const T& a, const T& b) { return !(a < b); }) == v.end();
}

}  // namespace

const std::vector<std::string>& SweepConfig::known_checks() {
  static const std::vector<std::string> names{"theorem1", "theorem2", "lemma5",      "direct",   "inverse",
                                              "lemmas",   "corollary", "cross_check", "modulus", "k_equivalence"};
  return names;
}

bool SweepConfig::wants(const std::string& check) const {
  return checks.empty() || std::find(checks.begin(), checks.end(), check) != checks.end();
}

std::vector<std::string> SweepConfig::validate() const {
  std::vector<std::string> errors;
  const bool weight_ok = alpha >= 0.0 && beta >= 0.0 && alpha + beta > 0.0;
  if (!weight_ok)
    errors.push_back("Jacobi weight needs α, β ≥ 0 and α + β > 0 (got α = " + number(alpha) + ", β = " + number(beta) + ")");
  if (!(beta0 >= 0.0 && beta1 >= 0.0))
    errors.push_back("step-weight exponents must be non-negative (got β(0) = " + number(beta0) + ", β(1) = " +
                     number(beta1) + ")");
  if (theorem_mode) {
    if (std::min(beta0, beta1) < 0.5)
      errors.push_back("theorem mode requires min{β(0),β(1)} ≥ 1/2 (got β(0) = " + number(beta0) + ", β(1) = " +
                       number(beta1) + ")");
    if (weight_ok && !(alpha > 0.0 && beta > 0.0))
      errors.push_back("theorem mode requires α > 0 and β > 0 (got α = " + number(alpha) + ", β = " + number(beta) + ")");
  }
  if (r < 1) errors.push_back("order r must be at least 1 (got " + std::to_string(r) + ")");
  if (m_list.empty()) errors.push_back("scheme term list is empty");
  for (int m : m_list)
    if (m < 1) errors.push_back("scheme term count m must be at least 1 (got " + std::to_string(m) + ")");
  if (ladder == Ladder::custom) errors.push_back("sweeps need a geometric or arithmetic ladder");
  if (n_list.empty() || !strictly_increasing(n_list) || n_list.front() < 1)
    errors.push_back("n_list must be a non-empty strictly increasing list of positive degrees");
  else if (!(2 * r < n_list.front()))
    errors.push_back("modification zones overlap: 2r/n₀ < 1 fails for r = " + std::to_string(r) +
                     ", n₀ = " + std::to_string(n_list.front()));
  if (direct_n_list.empty() || !strictly_increasing(direct_n_list) || !(2 * r < direct_n_list.front()))
    errors.push_back("direct n_list must be strictly increasing with 2r/n₀ < 1");
  if (inverse.n_list.empty() || !strictly_increasing(inverse.n_list) || !(2 * r < inverse.n_list.front()))
    errors.push_back("inverse n_list must be strictly increasing with 2r/n₀ < 1");
  for (double cn : inverse.moving_pool)
    if (!(cn > 0.0 && 2.0 * cn < static_cast<double>(inverse.n_list.empty() ? 1 : inverse.n_list.front())))
      errors.push_back("moving inverse points c/n need 0 < c < n₀/2 (got c = " + number(cn) + ")");
  if (inverse.t_samples < 4) errors.push_back("inverse fit needs at least 4 t samples");
  for (double x : inverse.x_pool)
    if (!(x > 0.0 && x < 1.0)) errors.push_back("inverse x* pool must lie in (0, 1) (got " + number(x) + ")");
  if (t_list.empty() || !strictly_increasing(t_list) || !(t_list.front() > 0.0))
    errors.push_back("t_list must be a non-empty strictly increasing list of positive scales");
  if (lemma_n_list.empty() || !strictly_increasing(lemma_n_list) || lemma_n_list.front() < 1)
    errors.push_back("lemma n_list must be a non-empty strictly increasing list of positive degrees");
  for (const auto& [u, v] : uv)
    if (!(u >= 0.0 && v >= 0.0)) errors.push_back("lemma exponents u, v must be non-negative");
  if (!(lambda >= 0.0 && lambda <= 1.0)) errors.push_back("corollary needs 0 ≤ λ ≤ 1 (got " + number(lambda) + ")");
  if (grid.uniform < 2 || grid.geometric < 0) errors.push_back("x-grid needs at least 2 uniform points");
  if (resolution.h_samples < 1 || resolution.x_uniform < 1 || resolution.x_geometric < 0 || resolution.polish < 0)
    errors.push_back("modulus resolution must be positive");
  if (threads < 0) errors.push_back("thread count must be non-negative");
  for (const auto& c : checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      errors.push_back("unknown check '" + c + "'");
  for (const auto& [name, a0] : expected_alpha0)
    if (!(a0 > 0.0 && a0 < r))
      errors.push_back("declared α₀ = " + number(a0) + " for " + name + " must lie in (0, r) with r = " + std::to_string(r));
  if (weight_ok) {
    const JacobiWeight w(alpha, beta);
    for (const auto& name : functions) {
      try {
        const TestFunction f = lookup_function(name);
        if (!f.in_cw(w)) errors.push_back("function " + name + " is not in C_w: w f does not vanish at a singular endpoint");
      } catch (const ConfigurationError& e) {
        errors.push_back(e.what());
      }
    }
  }
  return errors;
}

void SweepConfig::require_valid() const {
  const auto errors = validate();
  if (errors.empty()) return;
  std::string message = "invalid sweep configuration:";
  for (const auto& e : errors) message += "\n  - " + e;
  throw ConfigurationError(message);
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json uv_json = nlohmann::json::array();
  for (const auto& [u, v] : uv) uv_json.push_back({u, v});
  return {{"functions", functions},
          {"expected_alpha0", expected_alpha0},
          {"weight", {{"alpha", alpha}, {"beta", beta}}},
          {"step_weight", {{"beta0", beta0}, {"beta1", beta1}}},
          {"theorem_mode", theorem_mode},
          {"r", r},
          {"scheme", {{"m", m_list}, {"ladder", to_string(ladder)}}},
          {"n_list", n_list},
          {"direct_n_list", direct_n_list},
          {"t_list", t_list},
          {"grid", {{"uniform", grid.uniform}, {"geometric", grid.geometric}}},
          {"resolution",
           {{"h_samples", resolution.h_samples},
            {"x_uniform", resolution.x_uniform},
            {"x_geometric", resolution.x_geometric},
            {"polish", resolution.polish}}},
          {"inverse",
           {{"n_list", inverse.n_list},
            {"x_pool", inverse.x_pool},
            {"moving_pool", inverse.moving_pool},
            {"t_samples", inverse.t_samples},
            {"tolerance", inverse.tolerance}}},
          {"lemmas", {{"n_list", lemma_n_list}, {"gammas", gammas}, {"uv", uv_json}}},
          {"corollary", {{"lambda", lambda}}},
          {"checks", checks},
          {"output", {{"json", json_out}, {"csv", csv_out}}},
          {"seed", seed},
          {"threads", threads}};
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  SweepConfig c;
  try {
    if (j.contains("functions")) {
      const auto& f = j.at("functions");
      c.functions = f.is_string() ? std::vector<std::string>{f.get<std::string>()} : f.get<std::vector<std::string>>();
    }
    if (j.contains("function")) c.functions = {j.at("function").get<std::string>()};
    c.expected_alpha0 = j.value("expected_alpha0", c.expected_alpha0);
    if (j.contains("weight")) {
      c.alpha = j.at("weight").value("alpha", c.alpha);
      c.beta = j.at("weight").value("beta", c.beta);
    }
    if (j.contains("step_weight")) {
      const auto& s = j.at("step_weight");
      if (s.is_string()) {
        if (s.get<std::string>() != "varphi") throw ConfigurationError("step_weight must be \"varphi\" or {beta0, beta1}");
        c.beta0 = c.beta1 = 0.5;
      } else {
        c.beta0 = s.value("beta0", c.beta0);
        c.beta1 = s.value("beta1", c.beta1);
      }
    }
    c.theorem_mode = j.value("theorem_mode", c.theorem_mode);
    c.r = j.value("r", c.r);
    if (j.contains("scheme")) {
      const auto& s = j.at("scheme");
      if (s.contains("m")) c.m_list = s.at("m").is_number() ? std::vector<int>{s.at("m").get<int>()} : s.at("m").get<std::vector<int>>();
      if (s.contains("ladder")) c.ladder = ladder_from_string(s.at("ladder").get<std::string>());
    }
    c.n_list = j.value("n_list", c.n_list);
    c.direct_n_list = j.value("direct_n_list", c.direct_n_list);
    c.t_list = j.value("t_list", c.t_list);
    if (j.contains("grid")) {
      c.grid.uniform = j.at("grid").value("uniform", c.grid.uniform);
      c.grid.geometric = j.at("grid").value("geometric", c.grid.geometric);
    }
    if (j.contains("resolution")) {
      const auto& s = j.at("resolution");
      c.resolution.h_samples = s.value("h_samples", c.resolution.h_samples);
      c.resolution.x_uniform = s.value("x_uniform", c.resolution.x_uniform);
      c.resolution.x_geometric = s.value("x_geometric", c.resolution.x_geometric);
      c.resolution.polish = s.value("polish", c.resolution.polish);
    }
    if (j.contains("inverse")) {
      const auto& s = j.at("inverse");
      c.inverse.n_list = s.value("n_list", c.inverse.n_list);
      c.inverse.x_pool = s.value("x_pool", c.inverse.x_pool);
      c.inverse.moving_pool = s.value("moving_pool", c.inverse.moving_pool);
      c.inverse.t_samples = s.value("t_samples", c.inverse.t_samples);
      c.inverse.tolerance = s.value("tolerance", c.inverse.tolerance);
    }
    if (j.contains("lemmas")) {
      const auto& s = j.at("lemmas");
      c.lemma_n_list = s.value("n_list", c.lemma_n_list);
      c.gammas = s.value("gammas", c.gammas);
      if (s.contains("uv")) {
        c.uv.clear();
        for (const auto& p : s.at("uv")) c.uv.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      }
    }
    if (j.contains("corollary")) c.lambda = j.at("corollary").value("lambda", c.lambda);
    c.checks = j.value("checks", c.checks);
    if (j.contains("output")) {
      c.json_out = j.at("output").value("json", c.json_out);
      c.csv_out = j.at("output").value("csv", c.csv_out);
    }
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("malformed sweep configuration: ") + e.what());
  }
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open configuration file " + path);
  try {
    return SweepConfig::from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigurationError("configuration file " + path + " is not valid JSON: " + e.what());
  }
}

}  // namespace bsingular
