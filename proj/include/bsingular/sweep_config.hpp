#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bsingular/combination.hpp"
#include "bsingular/harness.hpp"
#include "bsingular/modulus.hpp"

namespace bsingular {

/// Everything a verification run needs. Parsed from and written to JSON;
/// validate() lists every violated hypothesis.
struct SweepConfig {
  std::vector<std::string> functions;  // names or expressions; empty means the default corpus
  std::map<std::string, double> expected_alpha0;  // declared smoothness exponents by function
  double alpha = 0.5;
  double beta = 0.5;
  double beta0 = 0.5;
  double beta1 = 0.5;
  bool theorem_mode = true;
  int r = 2;
  std::vector<int> m_list{1, 2};
  Ladder ladder = Ladder::geometric;
  std::vector<long> n_list{32, 64, 128, 256, 512};
  std::vector<long> direct_n_list{32, 64, 128, 256, 512, 1024, 2048, 4096, 8192};
  std::vector<double> t_list{1e-3, 1.778279410038923e-3, 3.1622776601683794e-3, 5.623413251903491e-3, 1e-2,
                             1.778279410038923e-2, 3.1622776601683794e-2, 5.623413251903491e-2, 1e-1};
  XGrid grid;
  ModulusResolution resolution;
  InverseSetup inverse;
  std::vector<long> lemma_n_list{16, 32, 64, 128, 256, 512, 1024};
  std::vector<double> gammas{1.0, 2.0, 3.0};
  std::vector<std::pair<double, double>> uv{{0.5, 0.0}, {0.5, 0.5}, {1.0, 1.0}};
  double lambda = 0.5;
  std::vector<std::string> checks;  // empty means all
  std::string json_out;
  std::string csv_out;
  std::uint64_t seed = 0;
  int threads = 1;

  static const std::vector<std::string>& known_checks();

  /// Human-readable list of violated hypotheses; empty when valid.
  std::vector<std::string> validate() const;
  /// Throws ConfigurationError carrying every message from validate().
  void require_valid() const;

  bool wants(const std::string& check) const;

  nlohmann::json to_json() const;
  static SweepConfig from_json(const nlohmann::json& j);

  bool operator==(const SweepConfig&) const = default;
};

SweepConfig load_config(const std::string& path);

}  // namespace bsingular
