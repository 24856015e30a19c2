#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "qptk/numerics.hpp"
#include "qptk/qpft.hpp"
#include "qptk/qpwpt.hpp"

namespace qptk {

enum class InequalityKind { heisenberg, lieb, logarithmic };

std::string_view inequality_name(InequalityKind kind);

struct UncertaintyResult {
  InequalityKind kind = InequalityKind::heisenberg;
  double p = 0.0;  ///< lieb exponent, 0 otherwise
  double lhs = 0.0;
  double rhs = 0.0;
  /// >= 1 exactly when the inequality holds: lhs/rhs for lower bounds, rhs/lhs
  /// for upper bounds, 1 + (lhs - rhs)/|rhs| for the logarithmic bound.
  double ratio = 0.0;
  bool passed = false;
  /// lieb only: lhs exceeds the stated constant but stays within 2 pi of it.
  bool expected_violation = false;
  /// lieb only: 2 pi * rhs, the bound that the Gaussian pair saturates.
  std::optional<double> corrected_rhs;
};

/// (||f||^2 ||psi|| / (2 |b|))^2.
double heisenberg_rhs(double b, double f_norm_sq, double psi_norm);

/// integral t^2 |f|^2 dt * integral xi^2 |W|^2 >= heisenberg_rhs. Throws
/// TruncationError when either moment integrand is still above 1e-10 of its
/// peak on the grid border.
UncertaintyResult heisenberg_check(const SampledSignal& f, const TFMap& w);

/// integral |W|^p <= (2/p) ((2 pi)^-1/2 |b|^(1/2 - 1/p))^p (||f|| ||psi||)^p, p >= 2.
UncertaintyResult lieb_check(const SampledSignal& f, const TFMap& w, double p);

/// ||psi||^2 integral ln|t| |f|^2 + integral ln|xi| |W|^2 >=
/// (digamma(1/4) - ln pi - ln|b|) ||f||^2 ||psi||^2. Both log moments go
/// through log_weighted_integral.
UncertaintyResult log_check(const SampledSignal& f, const TFMap& w);

/// digamma(1/4) - ln pi - ln|b| (the logarithmic bound per unit norms).
double log_rhs_constant(double b);

/// integral ln|t| g(t) dt for smooth g. When the grid straddles 0 the
/// singular part g(0) exp(-t^2/s^2) is integrated in closed form and only the
/// remainder (which vanishes at t = 0, so a node there contributes 0) goes
/// through the trapezoid rule.
double log_weighted_integral(std::span<const double> g, const Grid& grid);

/// integral ln|t| |f(t)|^2 dt.
double log_moment(const SampledSignal& f);

/// Heisenberg constant for unit-norm f and psi under a preset.
double heisenberg_preset_bounds(const Preset& preset);

}  // namespace qptk
