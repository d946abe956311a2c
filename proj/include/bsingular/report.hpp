#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

#include "bsingular/harness.hpp"
#include "bsingular/sweep_config.hpp"
#include "bsingular/test_function.hpp"

namespace bsingular {

inline constexpr int kReportSchemaVersion = 1;

struct SweepReport {
  int schema_version = kReportSchemaVersion;
  SweepConfig config;
  std::vector<Check> checks;

  /// Every check passed or is saturated.
  bool all_passed() const;

  nlohmann::json to_json() const;
  static SweepReport from_json(const nlohmann::json& j);

  /// One row per (function, criterion, m, scale): function,criterion,m,n,value,status.
  /// Lemma-6 rows carry t in the n column.
  std::string to_csv() const;

  void write_json(const std::string& path) const;
  void write_csv(const std::string& path) const;

  bool operator==(const SweepReport&) const = default;
};

SweepReport read_report(const std::string& path);

/// Corpus entries (or the configured functions) with declared alpha0 applied;
/// default-corpus members outside C_w for the configured weight are dropped.
std::vector<TestFunction> resolve_functions(const SweepConfig& config);

/// Validates the configuration and runs every selected check.
SweepReport run_sweep(const SweepConfig& config, int threads);

}  // namespace bsingular
