#include "bsingular/fit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "bsingular/errors.hpp"

namespace bsingular {

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 4)
    throw DegenerateFitError("rate fit needs at least 4 points, got " + std::to_string(pairs.size()));
  const auto count = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd design(count, 2);
  Eigen::VectorXd rhs(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto [scale, value] = pairs[static_cast<std::size_t>(i)];
    if (!(scale > 0.0) || !(value > 0.0) || !std::isfinite(scale) || !std::isfinite(value))
      throw DegenerateFitError("rate fit needs positive finite scales and values");
    design(i, 0) = std::log(scale);
    design(i, 1) = 1.0;
    rhs[i] = std::log(value);
  }
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() < 2) throw DegenerateFitError("rate fit needs at least two distinct scales");
  const Eigen::Vector2d coef = qr.solve(rhs);
  const Eigen::VectorXd deviation = design * coef - rhs;
  RateFit fit;
  fit.exponent = coef[0];
  fit.intercept = coef[1];
  fit.residual = std::sqrt(deviation.squaredNorm() / static_cast<double>(count));
  fit.samples = static_cast<int>(count);
  return fit;
}

RateFit fit_rate_pooled(const std::vector<std::vector<std::pair<double, double>>>& groups) {
  Eigen::Index count = 0;
  for (const auto& g : groups) count += static_cast<Eigen::Index>(g.size());
  if (count < 4) throw DegenerateFitError("pooled rate fit needs at least 4 points, got " + std::to_string(count));
  const auto columns = static_cast<Eigen::Index>(groups.size()) + 1;
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(count, columns);
  Eigen::VectorXd rhs(count);
  Eigen::Index row = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (const auto& [scale, value] : groups[gi]) {
      if (!(scale > 0.0) || !(value > 0.0) || !std::isfinite(scale) || !std::isfinite(value))
        throw DegenerateFitError("rate fit needs positive finite scales and values");
      design(row, 0) = std::log(scale);
      design(row, static_cast<Eigen::Index>(gi) + 1) = 1.0;
      rhs[row] = std::log(value);
      ++row;
    }
  }
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() < columns) throw DegenerateFitError("pooled rate fit needs two distinct scales in some group");
  const Eigen::VectorXd coef = qr.solve(rhs);
  const Eigen::VectorXd deviation = design * coef - rhs;
  RateFit fit;
  fit.exponent = coef[0];
  fit.residual = std::sqrt(deviation.squaredNorm() / static_cast<double>(count));
  fit.samples = static_cast<int>(count);
  return fit;
}

}  // namespace bsingular
