#pragma once

#include <string>
#include <string_view>

#include "qptk/numerics.hpp"

namespace qptk {

/// Deterministic test signal. Smooth kinds are unit L2 norm on the continuum
/// (before `amplitude`); `sigma` is the Gaussian envelope width in
/// exp(-(t - center)^2 / (2 sigma^2)).
struct SignalRecipe {
  enum class Kind { gaussian, hermite, linear_chirp, quadratic_chirp, rect, tone };

  Kind kind = Kind::gaussian;
  double sigma = 1.0;
  int order = 0;        ///< hermite
  double rate = 0.0;    ///< chirps: phase rate (t-c)^2 / 2 or (t-c)^3 / 3
  double width = 1.0;   ///< rect
  double omega = 0.0;   ///< tone
  cplx amplitude{1.0, 0.0};
  double center = 0.0;

  static SignalRecipe gaussian(double sigma);
  static SignalRecipe hermite(int n, double sigma = 1.0);
  static SignalRecipe linear_chirp(double rate, double sigma);
  static SignalRecipe quadratic_chirp(double rate, double sigma);
  static SignalRecipe rect(double width);
  static SignalRecipe tone(double omega, double sigma);

  /// Value at t, including amplitude and center.
  cplx evaluate(double t) const;
};

/// Samples of the recipe. Throws TruncationError when a smooth recipe still
/// carries more than 1e-6 of its peak magnitude at the grid edge.
SampledSignal generate(const SignalRecipe& recipe, const Grid& grid);

/// "gaussian:s", "hermite:n[,s]", "chirp:rate,s", "qchirp:rate,s", "rect:w",
/// "tone:omega,s", each optionally followed by "@center".
SignalRecipe parse_recipe(std::string_view text);
std::string to_string(const SignalRecipe& recipe);

}  // namespace qptk
