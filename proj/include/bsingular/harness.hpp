#pragma once

// Sweeps that test the direct, inverse and boundedness statements as
// finite-sample proxies:
//
//  * "bounded by C" claims: the per-n sup ratio must not diverge, i.e. the
//    max over the second half of the sweep is at most 1.5 times the max over
//    the first half;
//  * rate claims: log-log exponent fits compared against each other.
//
// Every check returns a Check record; run_checks evaluates a list of them on
// a thread pool and returns them in submission order.

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bsingular/combination.hpp"
#include "bsingular/modulus.hpp"
#include "bsingular/test_function.hpp"
#include "bsingular/weights.hpp"

namespace bsingular {

enum class Status { pass, fail, saturated };

std::string to_string(Status status);
Status status_from_string(const std::string& name);

/// Uniform points on [0, 1] merged with 2^{-j} and 1 - 2^{-j}.
struct XGrid {
  int uniform = 501;
  int geometric = 20;

  std::vector<double> points() const;
  bool operator==(const XGrid&) const = default;
};

struct Check {
  std::string criterion;
  std::string function;  // corpus name, or a parameter label for lemma sweeps
  int m = 0;             // scheme terms; 0 where no operator is involved
  std::string scale_name = "n";
  std::vector<double> scales;
  std::vector<double> values;
  double empirical_constant = 0.0;  // sup of values
  Status status = Status::pass;
  std::string note;
  std::map<std::string, double> metrics;
  /// Curve behind a fitted exponent, when there is one (t, omega).
  std::vector<std::pair<double, double>> curve;

  nlohmann::json to_json() const;
  static Check from_json(const nlohmann::json& j);
  bool operator==(const Check&) const = default;
};

/// Ratios at or below this are rounding noise (both sides vanish).
inline constexpr double kSaturationFloor = 1e-9;

/// Boundedness proxy on a per-scale series of sup ratios.
Status boundedness_status(const std::vector<double>& values, double factor = 1.5);

/// Sweep parameters shared by the theorem checks.
struct SweepSetup {
  JacobiWeight w{0.5, 0.5};
  StepWeight phi = StepWeight::varphi();
  int r = 2;
  int m = 1;
  Ladder ladder = Ladder::geometric;
  std::vector<long> n_list{32, 64, 128, 256, 512};
  XGrid grid;
  ModulusResolution resolution;
};

/// Theorem 1 and its unweighted companion: sup w phi^r |B*^{(r)} f| / (n^{r/2} ||wf||)
/// and sup w |B*^{(r)} f| / (n^r ||wf||). Needs a theorem-admissible phi and alpha, beta > 0.
std::vector<Check> verify_bernstein_inequality(const TestFunction& f, const SweepSetup& setup);

/// Theorem 2 with the endpoint lemmas: sup w phi^r |B*^{(r)} f| / ||w phi^r f^{(r)}||,
/// ||w phi^r F_n^{(r)}|| / ||w phi^r f^{(r)}|| and w |f - L_r| on [0, 2/n] (and R_r on
/// [1 - 2/n, 1]) against (delta_n / (sqrt(n) phi))^r ||w phi^r f^{(r)}||.
std::vector<Check> verify_smooth_bound(const TestFunction& f, const SweepSetup& setup);

/// ||w B* f|| / ||w f||, required to stay below 1.5 times its value at the first n.
Check verify_weighted_boundedness(const TestFunction& f, const SweepSetup& setup);

/// sup_x w |f - B* f| / omega(f, delta_n(x) / (sqrt(n) phi(x))).
Check verify_direct(const TestFunction& f, const SweepSetup& setup);

struct InverseSetup {
  std::vector<long> n_list{65536, 131072, 262144, 524288, 1048576, 2097152, 4194304};
  std::vector<double> x_pool{0.5, 0.25, 0.1, 1.0 / 64.0};
  std::vector<double> moving_pool{1.0, 4.0};  // x = c/n and 1 - c/n
  int t_samples = 12;
  double tolerance = 0.15;

  bool operator==(const InverseSetup&) const = default;
};

/// Exponent of the pointwise error in the local scale against the modulus
/// exponent over the same range of scales. The error exponent is the weakest
/// one over the point pool, since the rate has to hold uniformly in x.
Check verify_inverse(const TestFunction& f, const SweepSetup& setup, const InverseSetup& inverse = {});

/// Ratios of the weighted first-moment sum to x^{-u}(1-x)^{-v}.
Check verify_lemma_negative_moment(double u, double v, const std::vector<long>& n_list, const XGrid& grid);
/// sum |k - nx|^gamma p_{n,k}(x) / (n^{gamma/2} varphi^gamma(x)); for gamma > 2 only where n x (1 - x) >= 1.
Check verify_lemma_absolute_moment(double gamma, const std::vector<long>& n_list, const XGrid& grid);
/// r-fold box integral of phi^{-r} against t^r phi^{-r}(x), over t = 2^{-k} / (8r).
Check verify_lemma_box_integral(const StepWeight& phi, int r, int t_levels = 8, int x_points = 64);

enum class CorollaryBranch { automatic, continuous, sobolev };

/// phi = varphi^lambda. The continuous branch bounds by
/// n^{r/2} max{n^{r(1-lambda)/2}, varphi^{r(lambda-1)}(x)} ||wf||, the Sobolev
/// branch by ||w varphi^{r lambda} f^{(r)}||; `automatic` takes the Sobolev
/// branch whenever f belongs to the space.
Check verify_corollary(const TestFunction& f, double lambda, const SweepSetup& setup,
                       CorollaryBranch branch = CorollaryBranch::automatic);

/// Single-operator errors dominate the two-term combination for smooth f at large n.
Check cross_check_combination(const TestFunction& f, const SweepSetup& setup, long n_min = 256);

/// Modulus estimator: 2x refinement stability, monotonicity, homogeneity.
Check verify_modulus_consistency(const TestFunction& f, const SweepSetup& setup, const std::vector<double>& t_list,
                                 double tolerance = 0.02);

/// K / Omega ratio window on t = 2^{-k} and on the half-step refinement.
Check verify_k_equivalence(const TestFunction& f, const SweepSetup& setup, int k_min = 3, int k_max = 10);

/// Evaluate tasks on `threads` workers; results come back in task order.
std::vector<Check> run_checks(const std::vector<std::function<std::vector<Check>()>>& tasks, int threads);

}  // namespace bsingular
