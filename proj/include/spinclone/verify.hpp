// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinclone {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  void add(std::string name, double residual, double tolerance);
};

enum class Suite { optimal_pcc, universal, ancilla_free, oracle, bounds };

std::string_view to_string(Suite s);
std::optional<Suite> suite_from_string(std::string_view s);

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  int trials = 0;  ///< 0 selects the suite default (100 universal, 200 oracle)
};

/// Runs one batch of cross-checks. Residuals are maxima over the batch.
SuiteReport run_suite(Suite s, const SuiteOptions& opts = {});

} // namespace spinclone
