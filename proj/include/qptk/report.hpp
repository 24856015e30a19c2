#pragma once

#include <complex>
#include <optional>
#include <string>

namespace qptk {

/// Two sides of a numerically checked identity or inequality.
struct VerificationReport {
  std::string label;
  std::complex<double> lhs;
  std::complex<double> rhs;
  double relative_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Deviation of the commonly quoted variant of an identity, when that variant
  /// differs (by signs or arguments) from the derived form used for `passed`.
  std::optional<double> quoted_form_deviation;
  std::string note;
};

}  // namespace qptk
