#pragma once

// Named verification checks shared by the CLI and the acceptance runner.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qptk/numerics.hpp"
#include "qptk/qpft.hpp"
#include "qptk/qpwpt.hpp"
#include "qptk/report.hpp"
#include "qptk/uncertainty.hpp"
#include "qptk/wavelet.hpp"

namespace qptk {

struct SuiteConfig {
  ParameterSet mu{0.0, 1.0, 0.0, 0.0, 0.0};
  WaveletSpec wavelet{};
  double alpha = 1.0;
  SampledSignal signal{Grid::half_open(-10.0, 10.0, 1024)};
  std::string signal_label;
  /// TF grid for the wave-packet checks; suggest_tf_grid(128 x 128) when empty.
  std::optional<TFGrid> tf;
};

/// Check names accepted by run_checks: plancherel, parseval, identities,
/// convolution, spectral, moyal, energy, reproducing, heisenberg, lieb:<p>,
/// log, bounds, roundtrip, fast.
std::vector<std::string> all_check_names();

/// Throws UsageError for an unknown name (or a lieb exponent that is not a number).
void validate_check_name(std::string_view name);

/// Runs the checks in order and returns one JSON record per verdict. Every
/// record carries "schema": 1, "check", and "outcome" in
/// {"pass", "fail", "expected_violation"}.
nlohmann::json run_checks(const std::vector<std::string>& names, const SuiteConfig& config);

/// True when no record has outcome "fail".
bool all_passed(const nlohmann::json& records);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const UncertaintyResult& r);

}  // namespace qptk
