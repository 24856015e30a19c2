#pragma once

#include <string>
#include <string_view>

#include "qptk/numerics.hpp"
#include "qptk/qpft.hpp"

namespace qptk {

/// Mother wavelet choice. Every kind is L2-normalized in closed form.
struct WaveletSpec {
  enum class Kind { gaussian_window, mexican_hat, morlet };
  /// Scale convention for psi_alpha: unit L2 norm (alpha^-1/2) or unit L1 weight (alpha^-1).
  enum class Scaling { l2, l1 };

  Kind kind = Kind::gaussian_window;
  double omega0 = 5.0;  ///< morlet only
  Scaling scaling = Scaling::l2;

  static WaveletSpec gaussian() { return {}; }
  static WaveletSpec mexican_hat() { return {Kind::mexican_hat}; }
  static WaveletSpec morlet(double omega0) { return {Kind::morlet, omega0}; }

  /// psi(t)
  cplx evaluate(double t) const;
  /// psi_alpha(t) = s(alpha) psi(t / alpha), s = alpha^-1/2 or alpha^-1.
  cplx scaled(double t, double alpha) const;
  /// |t| beyond which |psi(t)| < 1e-12 max |psi|.
  double support_radius() const;

  bool operator==(const WaveletSpec&) const = default;
};

/// "gaussian", "mexican_hat", "morlet:omega0" (optionally suffixed "/l1").
WaveletSpec parse_wavelet(std::string_view text);
std::string to_string(const WaveletSpec& spec);

/// Symmetric grid comfortably containing the wavelet's support.
Grid default_grid(const WaveletSpec& spec);

/// Samples of the mother wavelet. Throws TruncationError when the grid edge
/// still carries more than 1e-6 of the peak magnitude.
SampledSignal mother(const WaveletSpec& spec, const Grid& grid);

/// ||psi||_p of the mother wavelet on its default grid.
double wavelet_lp_norm(const WaveletSpec& spec, double p);

struct QPWaveletAtom {
  ParameterSet mu;
  double beta;   ///< translation
  double alpha;  ///< scale, > 0
};

/// psi_alpha(t - beta) exp(-i a (t^2 - beta^2) - i d (t - beta)).
cplx qp_atom_value(const WaveletSpec& spec, const QPWaveletAtom& atom, double t);
SampledSignal qp_atom(const WaveletSpec& spec, const QPWaveletAtom& atom, const Grid& t_grid);

}  // namespace qptk
