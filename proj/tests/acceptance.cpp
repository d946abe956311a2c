// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Runs on BSINGULAR_THREADS workers (default 1).

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bsingular/bernstein.hpp"
#include "bsingular/cli.hpp"
#include "bsingular/combination.hpp"
#include "bsingular/endpoint_modifier.hpp"
#include "bsingular/harness.hpp"
#include "bsingular/sweep_config.hpp"
#include "bsingular/test_function.hpp"

using namespace bsingular;

namespace {

using Clock = std::chrono::steady_clock;
using Tasks = std::vector<std::function<std::vector<Check>()>>;

int g_threads = 1;
int g_failures = 0;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

void report(int id, bool ok, const std::string& detail) {
  std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << detail << std::endl;
  if (!ok) ++g_failures;
}

// Per-check detail lines, then whether none failed.
bool summarize(const std::vector<Check>& checks, const std::function<std::string(const Check&)>& extra = {}) {
  bool ok = true;
  for (const auto& c : checks) {
    std::ostringstream line;
    line << std::setprecision(4) << "    " << c.criterion << ' ' << c.function;
    if (c.m > 0) line << " m=" << c.m;
    line << " C=" << c.empirical_constant << ' ' << to_string(c.status);
    if (extra) line << ' ' << extra(c);
    std::cout << line.str() << '\n';
    ok = ok && c.status != Status::fail;
  }
  return ok;
}

std::vector<TestFunction> corpus_in_cw(const JacobiWeight& w) {
  std::vector<TestFunction> out;
  for (const auto& f : default_corpus())
    if (f.in_cw(w)) out.push_back(f);
  return out;
}

void criterion1() {
  const auto start = Clock::now();
  double unity = 0.0, linear = 0.0;
  for (long n = 1; n <= 2048; ++n) {
    const double nn = static_cast<double>(n);
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      const auto row = basis_row(n, x);
      double sum = 0.0, first = 0.0;
      for (long k = 0; k <= n; ++k) {
        sum += row[k];
        first += row[k] * (static_cast<double>(k) / nn);
      }
      unity = std::max(unity, std::abs(sum - 1.0));
      linear = std::max(linear, std::abs(first - x));
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "max |sum p - 1| = " << unity << ", max |B_n(t) - x| = " << linear << ", " << elapsed << " s";
  report(1, unity <= 1e-12 && linear <= 1e-10 && elapsed < 30.0, d.str());
}

void criterion2() {
  const auto s2 = CombinationScheme::make(16, 2);
  const auto s3 = CombinationScheme::make(16, 3);
  double coef = 0.0;
  coef = std::max(coef, std::abs(s2.coefficients()[0] + 1.0));
  coef = std::max(coef, std::abs(s2.coefficients()[1] - 2.0));
  coef = std::max(coef, std::abs(s3.coefficients()[0] - 1.0 / 3.0));
  coef = std::max(coef, std::abs(s3.coefficients()[1] + 2.0));
  coef = std::max(coef, std::abs(s3.coefficients()[2] - 8.0 / 3.0));
  const bool exact = s2.exact_coefficients()[0] == ExactFraction{"-1", "1"} &&
                     s3.exact_coefficients()[2] == ExactFraction{"8", "3"};
  // k = 1..m; k = 0 is the partition of unity
  double worst = 0.0;
  for (int m = 1; m <= 4; ++m)
    for (long n = 16; n <= 1024; n *= 2) {
      const auto s = CombinationScheme::make(n, m);
      for (int i = 0; i <= 100; ++i) {
        const auto res = moment_annihilation(s, m, i / 100.0);
        for (int k = 0; k < static_cast<int>(res.size()); ++k) worst = std::max(worst, std::abs(res[k]) * n);
      }
    }
  std::ostringstream d;
  d << "coefficient error " << coef << (exact ? " (exact rationals match)" : " (exact rationals differ)")
    << ", max n |B_{n,m}((t-x)^k, x)| = " << worst;
  report(2, coef <= 1e-14 && exact && worst <= 1e-10, d.str());
}

void criterion3() {
  double identity = 0.0, seam = 0.0;
  bool finite = true;
  for (const auto& tf : default_corpus()) {
    const SampledFunction f = tf.sampled();
    for (long n : {64L, 256L}) {
      const auto F = modified_function(f, n, 2);
      const double nn = static_cast<double>(n);
      for (int i = 0; i <= 1000; ++i) {
        const double x = 2.0 / nn + (1.0 - 4.0 / nn) * i / 1000.0;
        identity = std::max(identity, std::abs(F(x) - f(x)));
      }
      for (double s : {1.0 / nn, 2.0 / nn, 1.0 - 2.0 / nn, 1.0 - 1.0 / nn}) {
        const double eps = 1e-9;
        seam = std::max(seam, std::abs(F(s + eps) - F(s - eps)) / (1.0 + std::abs(F(s))));
      }
      finite = finite && std::isfinite(F(0.0)) && std::isfinite(F(1.0));
    }
  }
  const auto quarter = modified_function(lookup_function("t^-0.25").sampled(), 256, 2);
  std::ostringstream d;
  d << "max |F_n - f| on [2/n, 1-2/n] = " << identity << ", max relative seam jump (eps 1e-9) = " << seam
    << ", F_256(0) = " << quarter(0.0) << " for t^-0.25";
  report(3, identity == 0.0 && seam <= 1e-6 && finite && std::isfinite(quarter(0.0)) && std::isfinite(quarter(1.0)),
         d.str());
}

void criterion4() {
  const auto start = Clock::now();
  const SweepConfig config;
  const std::vector<long> n_list{16, 32, 64, 128, 256, 512, 1024};
  Tasks tasks;
  for (const auto& [u, v] : config.uv)
    tasks.emplace_back([u, v, &n_list, &config] {
      return std::vector<Check>{verify_lemma_negative_moment(u, v, n_list, config.grid)};
    });
  for (double gamma : config.gammas)
    tasks.emplace_back([gamma, &n_list, &config] {
      return std::vector<Check>{verify_lemma_absolute_moment(gamma, n_list, config.grid)};
    });
  const auto checks = run_checks(tasks, g_threads);
  const bool ok = summarize(checks);
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << checks.size() << " ratio sweeps, " << elapsed << " s";
  report(4, ok && elapsed < 120.0, d.str());
}

void criterion5() {
  const auto start = Clock::now();
  SweepSetup base;
  Tasks tasks;
  for (const auto& f : corpus_in_cw(base.w))
    for (int m : {1, 2}) {
      SweepSetup s = base;
      s.m = m;
      tasks.emplace_back([f, s] { return verify_bernstein_inequality(f, s); });
      if (f.in_sobolev(s.w, s.phi, s.r)) tasks.emplace_back([f, s] { return verify_smooth_bound(f, s); });
      tasks.emplace_back([f, s] { return std::vector<Check>{verify_weighted_boundedness(f, s)}; });
    }
  const auto checks = run_checks(tasks, g_threads);
  const bool ok = summarize(checks);
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << checks.size() << " boundedness sweeps on " << g_threads << " thread(s), " << elapsed << " s";
  report(5, ok && (g_threads > 1 || elapsed < 600.0), d.str());
}

void criterion6() {
  SweepSetup s;
  s.m = 1;
  s.n_list = SweepConfig{}.direct_n_list;
  Tasks tasks;
  for (const char* name : {"t^0.5", "t^0.75", "|t-0.5|^1.5"}) {
    const auto f = lookup_function(name);
    tasks.emplace_back([f, s] { return std::vector<Check>{verify_direct(f, s)}; });
  }
  const auto checks = run_checks(tasks, g_threads);
  bool ok = summarize(checks, [](const Check& c) {
    std::ostringstream v;
    v << std::setprecision(3) << "ratios";
    for (double r : c.values) v << ' ' << r;
    return v.str();
  });
  for (const auto& c : checks) ok = ok && c.status == Status::pass;
  std::ostringstream d;
  d << "n = " << s.n_list.front() << ".." << s.n_list.back() << ", second-half max <= 1.5 x first-half max";
  report(6, ok, d.str());
}

void criterion7() {
  SweepSetup s;
  s.m = 1;
  const InverseSetup inverse;
  Tasks tasks;
  for (const char* name : {"t^0.75", "|t-0.5|^1.5", "|t-0.5|"}) {
    const auto f = lookup_function(name);
    tasks.emplace_back([f, s, inverse] { return std::vector<Check>{verify_inverse(f, s, inverse)}; });
  }
  const auto checks = run_checks(tasks, g_threads);
  summarize(checks, [](const Check& c) {
    std::ostringstream v;
    v << std::setprecision(4) << "a_err=" << c.metrics.at("a_err") << " a_mod=" << c.metrics.at("a_mod")
      << " gap=" << c.metrics.at("gap");
    return v.str();
  });
  bool ok = true;
  for (const auto& c : checks) {
    if (c.function == "|t-0.5|")
      ok = ok && std::abs(c.metrics.at("a_mod") - 1.0) <= 0.15;
    else
      ok = ok && c.metrics.at("gap") <= 0.15;
  }
  std::ostringstream d;
  d << "n = " << inverse.n_list.front() << ".." << inverse.n_list.back() << ", tolerance 0.15";
  report(7, ok, d.str());
}

void criterion8() {
  SweepSetup s;
  const auto t_list = SweepConfig{}.t_list;
  Tasks tasks;
  for (const auto& f : corpus_in_cw(s.w))
    tasks.emplace_back([f, s, &t_list] { return std::vector<Check>{verify_modulus_consistency(f, s, t_list)}; });
  const auto checks = run_checks(tasks, g_threads);
  const bool ok = summarize(checks, [](const Check& c) {
    std::ostringstream v;
    v << std::setprecision(3) << "max refinement change " << c.empirical_constant;
    return v.str();
  });
  report(8, ok, "t in [1e-3, 1e-1], 2% refinement tolerance, monotone and homogeneity invariants");
}

void criterion9() {
  SweepSetup s;
  Tasks tasks;
  for (const char* name : {"|t-0.5|^1.5", "t^0.5"}) {
    const auto f = lookup_function(name);
    tasks.emplace_back([f, s] { return std::vector<Check>{verify_k_equivalence(f, s)}; });
  }
  const auto checks = run_checks(tasks, g_threads);
  bool ok = summarize(checks, [](const Check& c) {
    std::ostringstream v;
    v << std::setprecision(4) << "window [" << c.metrics.at("window_lo") << ", " << c.metrics.at("window_hi")
      << "] width " << c.metrics.at("coarse_width") << " -> " << c.metrics.at("refined_width");
    return v.str();
  });
  for (const auto& c : checks) ok = ok && c.status == Status::pass;
  report(9, ok, "K / Omega over t = 2^{-k/2}, k = 6..20");
}

}  // namespace

int main() {
  g_threads = resolve_threads(std::nullopt, 1);
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                    criterion6, criterion7, criterion8, criterion9};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("threw: ") + e.what());
    }
  }
  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed") << std::endl;
  return g_failures == 0 ? 0 : 1;
}
