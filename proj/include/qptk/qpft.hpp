#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "qptk/numerics.hpp"
#include "qptk/report.hpp"

namespace qptk {

/// The quintuple (a, b, c, d, e) of the quadratic-phase kernel
/// sqrt(b / 2 pi i) * exp(i (a t^2 + b t xi + c xi^2 + d t + e xi)), b != 0.
class ParameterSet {
 public:
  ParameterSet(double a, double b, double c, double d, double e);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  double e() const noexcept { return e_; }

  /// -mu = (-a, -b, -c, -d, -e).
  ParameterSet negated() const { return {-a_, -b_, -c_, -d_, -e_}; }

  bool operator==(const ParameterSet&) const = default;

 private:
  double a_, b_, c_, d_, e_;
};

/// Named parameter substitutions that reduce the transform to a classical one.
struct Preset {
  enum class Kind { linear_canonical, fractional, fresnel, classical_wpt, plain_fourier };
  Kind kind;
  /// linear_canonical: (A, B, D); fractional: (theta); fresnel: (b, d); others: unused.
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;

  static Preset linear_canonical(double a, double b, double d) { return {Kind::linear_canonical, a, b, d}; }
  static Preset fractional(double theta) { return {Kind::fractional, theta}; }
  static Preset fresnel(double b, double d = 1.0) { return {Kind::fresnel, b, d}; }
  static Preset classical_wpt() { return {Kind::classical_wpt}; }
  static Preset plain_fourier() { return {Kind::plain_fourier}; }
};

/// linear_canonical(A,B,D) -> (A/2B, -1/B, D/2B, 0, 0); fractional(theta) ->
/// (cot, -csc, cot, 0, 0); fresnel(b,d) -> (1, b, 0, d, 0); classical_wpt ->
/// (0, -1, 1, 0, 0); plain_fourier -> (0, 1, 0, 0, 0).
ParameterSet parameters_of(const Preset& preset);

/// Parses "plain_fourier", "classical_wpt", "lct:A,B,D", "frft:theta", "fresnel:b[,d]".
Preset parse_preset(std::string_view text);
/// Parses "a,b,c,d,e".
ParameterSet parse_parameters(std::string_view text);
std::string to_string(const ParameterSet& mu);

/// sqrt(b / (2 pi i)) on the principal branch.
cplx kernel_amplitude(const ParameterSet& mu);
cplx kernel(const ParameterSet& mu, double t, double xi);

/// Trapezoid quadrature of f(t) K(t, xi) at every point of `xi_grid`.
SampledSignal qpft_direct(const SampledSignal& f, const ParameterSet& mu, const Grid& xi_grid);

/// xi grid produced by qpft_fast for a time grid: step 2 pi / (N dt |b|), symmetric around 0.
Grid fast_xi_grid(const Grid& t_grid, const ParameterSet& mu);

/// Chirp-FFT-chirp evaluation on fast_xi_grid(f.grid(), mu). Same Riemann sum as qpft_direct.
SampledSignal qpft_fast(const SampledSignal& f, const ParameterSet& mu);

/// Trapezoid quadrature of F(xi) conj(K(t, xi)) at every point of `t_grid`.
SampledSignal iqpft(const SampledSignal& spectrum, const ParameterSet& mu, const Grid& t_grid);

/// (f *_mu g)(t) = integral f(z) g(t - z) exp(-i a (t^2 - z^2) - i d (t - z)) dz on f's grid.
/// Requires start/step to be an integer so that t - z lands on the grid; g is zero off-grid.
SampledSignal qp_convolve(const SampledSignal& f, const SampledSignal& g, const ParameterSet& mu);

/// Symmetric xi window holding all but ~1e-15 of the spectral power of f
/// (measured with qpft_fast), sampled with `count` points.
/// Throws SamplingError when the spectrum reaches the fast grid's Nyquist edge.
Grid spectral_xi_grid(const SampledSignal& f, const ParameterSet& mu, std::size_t count);
/// Half-width of the xi window above.
double spectral_extent(const SampledSignal& f, const ParameterSet& mu);

enum class QpftIdentity { linearity, translation, reflection, modulation, conjugation, parseval, plancherel, convolution };

QpftIdentity parse_identity(std::string_view name);
std::string_view identity_name(QpftIdentity id);

/// Named real parameters: "tau" (translation), "omega" (modulation frequency),
/// "alpha", "beta" (linearity coefficients), "tolerance".
using IdentityParams = std::map<std::string, double, std::less<>>;

/// Evaluates both sides of a QPFT identity numerically and reports the deviation.
/// Translation and modulation are usually quoted with sign slips; for those the
/// verdict uses the derived form and the quoted form's deviation is reported
/// alongside. `g` defaults to a fixed
/// chirped, re-centred companion of f.
VerificationReport verify_qpft_identity(QpftIdentity id, const SampledSignal& f, const ParameterSet& mu,
                                        const IdentityParams& params = {},
                                        const std::optional<SampledSignal>& g = std::nullopt);

/// Deterministic companion signal used by pairwise identities: f(t) exp(0.7 i t - 0.05 (t - 0.5)^2).
SampledSignal companion_signal(const SampledSignal& f);

}  // namespace qptk
