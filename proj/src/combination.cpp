#include "bsingular/combination.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <utility>

#include "bsingular/bernstein.hpp"
#include "bsingular/errors.hpp"

namespace bsingular {

namespace mp = boost::multiprecision;

std::string to_string(Ladder ladder) {
  switch (ladder) {
    case Ladder::geometric: return "geometric";
    case Ladder::arithmetic: return "arithmetic";
    case Ladder::custom: return "custom";
  }
  return "custom";
}

Ladder ladder_from_string(const std::string& name) {
  if (name == "geometric") return Ladder::geometric;
  if (name == "arithmetic") return Ladder::arithmetic;
  if (name == "custom") return Ladder::custom;
  throw ConfigurationError("unknown degree ladder '" + name + "'");
}

namespace {

// Gauss-Jordan over the rationals on the Vandermonde system in 1/n_i.
std::vector<mp::cpp_rational> solve_exact(const std::vector<long>& degrees) {
  const std::size_t m = degrees.size();
  std::vector<std::vector<mp::cpp_rational>> rows(m, std::vector<mp::cpp_rational>(m + 1));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      mp::cpp_rational entry = 1;
      for (std::size_t p = 0; p < k; ++p) entry /= degrees[i];
      rows[k][i] = entry;
    }
    rows[k][m] = k == 0 ? 1 : 0;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && rows[pivot][col] == 0) ++pivot;
    if (pivot == m) throw DomainError("singular combination system");
    std::swap(rows[col], rows[pivot]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || rows[r][col] == 0) continue;
      const mp::cpp_rational factor = rows[r][col] / rows[col][col];
      for (std::size_t c = col; c <= m; ++c) rows[r][c] -= factor * rows[col][c];
    }
  }
  std::vector<mp::cpp_rational> solution(m);
  for (std::size_t i = 0; i < m; ++i) solution[i] = rows[i][m] / rows[i][i];
  return solution;
}

double to_double(const mp::cpp_rational& q) {
  // Numerator and denominator are exact in double for any sane ladder, so
  // the single division rounds correctly.
  return mp::numerator(q).convert_to<double>() / mp::denominator(q).convert_to<double>();
}

}  // namespace

CombinationScheme::CombinationScheme(std::vector<long> degrees, Ladder ladder)
    : degrees_(std::move(degrees)), ladder_(ladder) {
  if (degrees_.empty()) throw DomainError("a combination needs at least one term");
  if (degrees_.front() < 1) throw DomainError("degrees must be positive");
  for (std::size_t i = 1; i < degrees_.size(); ++i) {
    if (degrees_[i] == degrees_[i - 1])
      throw DomainError("duplicate degree " + std::to_string(degrees_[i]) + " makes the system singular");
    if (degrees_[i] < degrees_[i - 1]) throw DomainError("degrees must be strictly increasing");
  }
  const auto exact = solve_exact(degrees_);
  coefficients_.resize(static_cast<Eigen::Index>(exact.size()));
  exact_.reserve(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    coefficients_[static_cast<Eigen::Index>(i)] = to_double(exact[i]);
    exact_.push_back({mp::numerator(exact[i]).str(), mp::denominator(exact[i]).str()});
  }
}

CombinationScheme CombinationScheme::make(long n, int m, Ladder ladder) {
  if (m < 1) throw DomainError("term count must be at least 1");
  if (n < 1) throw DomainError("base degree must be positive");
  std::vector<long> degrees;
  degrees.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    switch (ladder) {
      case Ladder::geometric: degrees.push_back(n << i); break;
      case Ladder::arithmetic: degrees.push_back(n * (i + 1)); break;
      case Ladder::custom: throw DomainError("custom ladders are built with from_degrees");
    }
  }
  return CombinationScheme(std::move(degrees), ladder);
}

CombinationScheme CombinationScheme::from_degrees(std::vector<long> degrees) {
  return CombinationScheme(std::move(degrees), Ladder::custom);
}

double CombinationScheme::growth_constant() const {
  return static_cast<double>(degrees_.back()) / static_cast<double>(degrees_.front());
}

bool CombinationScheme::operator==(const CombinationScheme& other) const {
  return degrees_ == other.degrees_ && ladder_ == other.ladder_ && exact_ == other.exact_;
}

nlohmann::json CombinationScheme::to_json() const {
  nlohmann::json exact = nlohmann::json::array();
  for (const auto& q : exact_) exact.push_back({q.numerator, q.denominator});
  return {{"n", base_degree()},
          {"m", term_count()},
          {"ladder", to_string(ladder_)},
          {"degrees", degrees_},
          {"coefficients", std::vector<double>(coefficients_.data(), coefficients_.data() + coefficients_.size())},
          {"exact", exact}};
}

CombinationScheme CombinationScheme::from_json(const nlohmann::json& j) {
  auto degrees = j.at("degrees").get<std::vector<long>>();
  const Ladder ladder = ladder_from_string(j.at("ladder").get<std::string>());
  CombinationScheme scheme(std::move(degrees), ladder);
  if (j.at("n").get<long>() != scheme.base_degree() || j.at("m").get<int>() != scheme.term_count())
    throw ConfigurationError("scheme header disagrees with its degree list");
  if (j.contains("exact")) {
    const auto& exact = j.at("exact");
    for (std::size_t i = 0; i < scheme.exact_.size(); ++i) {
      if (exact.at(i).at(0).get<std::string>() != scheme.exact_[i].numerator ||
          exact.at(i).at(1).get<std::string>() != scheme.exact_[i].denominator)
        throw ConfigurationError("stored coefficients do not solve the moment conditions");
    }
  }
  return scheme;
}

std::vector<Eigen::VectorXd> combo_node_values(const CombinationScheme& scheme, const SampledFunction& f) {
  std::vector<Eigen::VectorXd> nodes;
  nodes.reserve(scheme.degrees().size());
  for (long degree : scheme.degrees()) nodes.push_back(node_values(f, degree));
  return nodes;
}

double combo_apply_nodes(const CombinationScheme& scheme, const std::vector<Eigen::VectorXd>& nodes, double x) {
  CompensatedSum<double> sum;
  for (int i = 0; i < scheme.term_count(); ++i)
    sum += scheme.coefficients()[i] * apply_to_nodes(nodes[static_cast<std::size_t>(i)], x);
  return sum.value();
}

double combo_derivative_nodes(const CombinationScheme& scheme, const std::vector<Eigen::VectorXd>& nodes,
                              long r, double x) {
  if (r > scheme.base_degree())
    throw DomainError("derivative order " + std::to_string(r) + " exceeds base degree " +
                      std::to_string(scheme.base_degree()));
  CompensatedSum<double> sum;
  for (int i = 0; i < scheme.term_count(); ++i)
    sum += scheme.coefficients()[i] * derivative_from_nodes(nodes[static_cast<std::size_t>(i)], r, x);
  return sum.value();
}

double combo_apply(const CombinationScheme& scheme, const SampledFunction& f, double x) {
  return combo_apply_nodes(scheme, combo_node_values(scheme, f), x);
}

double combo_derivative(const CombinationScheme& scheme, const SampledFunction& f, long r, double x) {
  if (r > scheme.base_degree())
    throw DomainError("derivative order " + std::to_string(r) + " exceeds base degree " +
                      std::to_string(scheme.base_degree()));
  return combo_derivative_nodes(scheme, combo_node_values(scheme, f), r, x);
}

std::vector<double> moment_annihilation(const CombinationScheme& scheme, int k_max, double x) {
  if (k_max < 1) throw DomainError("moment order must be at least 1");
  std::vector<CompensatedSum<double>> sums(static_cast<std::size_t>(k_max));
  for (int i = 0; i < scheme.term_count(); ++i) {
    const long n = scheme.degrees()[static_cast<std::size_t>(i)];
    const double c = scheme.coefficients()[i];
    const Eigen::VectorXd row = basis_row(n, x);
    std::vector<CompensatedSum<double>> moments(static_cast<std::size_t>(k_max));
    for (long k = 0; k <= n; ++k) {
      if (row[k] == 0.0) continue;
      const double d = static_cast<double>(k) / static_cast<double>(n) - x;
      double power = row[k];
      for (int j = 0; j < k_max; ++j) {
        power *= d;
        moments[static_cast<std::size_t>(j)] += power;
      }
    }
    for (int j = 0; j < k_max; ++j) sums[static_cast<std::size_t>(j)] += c * moments[static_cast<std::size_t>(j)].value();
  }
  std::vector<double> residuals;
  residuals.reserve(sums.size());
  for (const auto& s : sums) residuals.push_back(s.value());
  return residuals;
}

}  // namespace bsingular
