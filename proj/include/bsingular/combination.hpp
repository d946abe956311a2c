#pragma once

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

#include "bsingular/sampled_function.hpp"

namespace bsingular {

enum class Ladder { geometric, arithmetic, custom };

std::string to_string(Ladder ladder);
Ladder ladder_from_string(const std::string& name);

/// A coefficient as an exact fraction, stored in decimal text so arbitrary
/// sizes survive serialization.
struct ExactFraction {
  std::string numerator;
  std::string denominator;
  bool operator==(const ExactFraction&) const = default;
};

/// Degrees n = n_0 < n_1 < ... < n_{m-1} and coefficients C_i with
///   sum_i C_i = 1,   sum_i C_i n_i^{-k} = 0 for k = 1..m-1.
/// Immutable once built.
class CombinationScheme {
 public:
  /// Ladder rule: geometric n_i = 2^i n, arithmetic n_i = (i+1) n.
  static CombinationScheme make(long n, int m, Ladder ladder = Ladder::geometric);
  /// Arbitrary strictly increasing degrees.
  static CombinationScheme from_degrees(std::vector<long> degrees);

  long base_degree() const { return degrees_.front(); }
  int term_count() const { return static_cast<int>(degrees_.size()); }
  Ladder ladder() const { return ladder_; }
  const std::vector<long>& degrees() const { return degrees_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  const std::vector<ExactFraction>& exact_coefficients() const { return exact_; }

  /// K with n_{m-1} <= K n_0.
  double growth_constant() const;
  /// sum_i |C_i|.
  double absolute_sum() const { return coefficients_.cwiseAbs().sum(); }

  nlohmann::json to_json() const;
  /// Rebuilds from the degree list and checks the stored coefficients agree.
  static CombinationScheme from_json(const nlohmann::json& j);

  bool operator==(const CombinationScheme& other) const;

 private:
  CombinationScheme(std::vector<long> degrees, Ladder ladder);

  std::vector<long> degrees_;
  Ladder ladder_;
  Eigen::VectorXd coefficients_;
  std::vector<ExactFraction> exact_;
};

/// Node values of f for every degree in the scheme.
std::vector<Eigen::VectorXd> combo_node_values(const CombinationScheme& scheme, const SampledFunction& f);

double combo_apply_nodes(const CombinationScheme& scheme, const std::vector<Eigen::VectorXd>& nodes, double x);
double combo_derivative_nodes(const CombinationScheme& scheme, const std::vector<Eigen::VectorXd>& nodes,
                              long r, double x);

/// sum_i C_i B_{n_i}(f, x).
double combo_apply(const CombinationScheme& scheme, const SampledFunction& f, double x);
/// sum_i C_i B_{n_i}^{(r)}(f, x); r must not exceed n_0.
double combo_derivative(const CombinationScheme& scheme, const SampledFunction& f, long r, double x);

/// B_{n,m}((. - x)^k, x) for k = 1..k_max.
std::vector<double> moment_annihilation(const CombinationScheme& scheme, int k_max, double x);

}  // namespace bsingular
