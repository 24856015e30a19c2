#pragma once

#include <vector>

#include "qptk/numerics.hpp"
#include "qptk/qpft.hpp"
#include "qptk/report.hpp"
#include "qptk/wavelet.hpp"

namespace qptk {

/// (xi, beta) sampling at a fixed scale alpha.
struct TFGrid {
  Grid xi;
  Grid beta;
  double alpha;

  TFGrid(Grid xi_grid, Grid beta_grid, double alpha_scale);
  bool matches(const TFGrid& other) const noexcept;
};

/// Transform values W(xi_k, beta_j), stored row-major with xi as the row index.
class TFMap {
 public:
  TFMap(TFGrid tf, ParameterSet mu, WaveletSpec wavelet, std::vector<cplx> values);

  const TFGrid& tf() const noexcept { return tf_; }
  const ParameterSet& mu() const noexcept { return mu_; }
  const WaveletSpec& wavelet() const noexcept { return wavelet_; }
  std::size_t rows() const noexcept { return tf_.xi.count(); }
  std::size_t cols() const noexcept { return tf_.beta.count(); }
  const cplx& at(std::size_t xi_index, std::size_t beta_index) const noexcept {
    return values_[xi_index * cols() + beta_index];
  }
  std::span<const cplx> values() const noexcept { return values_; }

  TFMap scaled(cplx factor) const;

 private:
  TFGrid tf_;
  ParameterSet mu_;
  WaveletSpec wavelet_;
  std::vector<cplx> values_;
};

/// Throws SamplingError unless 2 |a| max|t| dt <= pi / 4.
void check_chirp_resolution(const Grid& t_grid, const ParameterSet& mu);

/// Trapezoid quadrature of f(t) conj(psi^mu_{beta,alpha}(t)) K_mu(t, xi) over f's grid.
TFMap qpwpt_direct(const SampledSignal& f, const WaveletSpec& spec, const TFGrid& tf, const ParameterSet& mu);

/// Windowed FFT of h(t) = sqrt(b / 2 pi i) exp(i (2 a t^2 + 2 d t)) f(t) for each beta,
/// phase-corrected by exp(i (c xi^2 + e xi - a beta^2 - d beta)). The xi axis is
/// fast_xi_grid(f.grid(), mu).
TFMap qpwpt_fast(const SampledSignal& f, const WaveletSpec& spec, const Grid& beta_grid, double alpha,
                 const ParameterSet& mu);

struct SpectralEvaluation {
  cplx value;
  /// Largest integrand-factor magnitude at the w-grid edges, relative to its peak.
  double edge_fraction;
  bool truncated() const noexcept { return edge_fraction > 1e-10; }
};

/// W(xi, beta) through the QPFT domain:
///   sqrt(b / 2 pi i) sqrt(alpha) * integral over w of
///   exp(-i (a beta^2 + b beta w + c w^2 + d beta + e w) + i (c (alpha w)^2 + e alpha w) - 2 i c w xi)
///   * Q[exp(i (a t^2 + d t)) f](w + xi) * conj(Q[exp(-i (a t^2 + d t)) psi](alpha w)).
/// The window spectrum is conjugated; dropping that conjugation (as the
/// formula is often quoted) only agrees for special windows. See
/// qpwpt_via_spectral_quoted.
SpectralEvaluation qpwpt_via_spectral(const SampledSignal& f, const WaveletSpec& spec, double xi, double beta,
                                      double alpha, const ParameterSet& mu, const Grid& w_grid);

/// The commonly quoted variant without the conjugations; kept for reporting only.
SpectralEvaluation qpwpt_via_spectral_quoted(const SampledSignal& f, const WaveletSpec& spec, double xi,
                                             double beta, double alpha, const ParameterSet& mu,
                                             const Grid& w_grid);

/// w grid wide enough for both QPFT factors at (xi, alpha), with `count` points.
Grid spectral_w_grid(const SampledSignal& f, const WaveletSpec& spec, double xi, double alpha,
                     const ParameterSet& mu, std::size_t count);

/// Analysis atom conj(sqrt(b/2 pi i)) exp(-i (a t^2 + b t xi + c xi^2 + d t + e xi)
/// - i a (t^2 - beta^2) - i d (t - beta)) psi_alpha(t - beta).
SampledSignal analysis_atom(const WaveletSpec& spec, const ParameterSet& mu, double xi, double beta, double alpha,
                            const Grid& t_grid);

struct ReconstructionResult {
  SampledSignal signal;
  /// max |W| on the TF-grid border relative to max |W|.
  double edge_fraction;
  bool under_resolved() const noexcept { return edge_fraction > 1e-4; }
};

/// f(t) = double integral of W(xi, beta) analysis_atom(xi, beta)(t) d xi d beta.
ReconstructionResult reconstruct(const TFMap& w, const Grid& t_grid);

/// Integral over the TF grid of Wf conj(Wg).
cplx moyal(const TFMap& wf, const TFMap& wg);

/// Integral over the TF grid of |W|^2.
double energy(const TFMap& w);

/// Integral over the TF grid of |W|^p.
double tf_lp_integral(const TFMap& w, double p);

/// <analysis_atom(p1), analysis_atom(p0)> with p = (xi, beta) at the shared scale alpha.
cplx reproducing_kernel(const WaveletSpec& spec, const ParameterSet& mu, double xi, double beta, double xi0,
                        double beta0, double alpha, const Grid& t_grid);

/// Integral of W(xi, beta) K(xi, beta : xi0, beta0) over the TF grid, with the
/// kernel evaluated on `t_grid`.
cplx reproduce_at(const TFMap& w, double xi0, double beta0, const Grid& t_grid);

/// Single-point direct evaluation of W(xi, beta) (same quadrature as qpwpt_direct).
cplx qpwpt_point(const SampledSignal& f, const WaveletSpec& spec, double xi, double beta, double alpha,
                 const ParameterSet& mu);

/// Sup-norm bound max|W| <= alpha^(1/p - 1/2) sqrt(|b|/2pi) ||psi||_p ||f||_q, 1/p + 1/q = 1.
/// p = 1 pairs with q = infinity.
VerificationReport pointwise_bound_check(const TFMap& w, const SampledSignal& f, double p = 2.0);

/// For every xi row: (integral |W(xi, beta)|^p d beta)^(1/p) <=
/// alpha^(1/p - 1/2) sqrt(|b|/2pi) ||psi||_p ||f||_1 (worst row reported).
VerificationReport beta_lp_bound_check(const TFMap& w, const SampledSignal& f, double p);

/// Heuristic TF grid that captures the map's energy: beta covers the signal's
/// support widened by the window, xi covers the spectrum measured with qpwpt_fast.
TFGrid suggest_tf_grid(const SampledSignal& f, const WaveletSpec& spec, double alpha, const ParameterSet& mu,
                       std::size_t xi_count, std::size_t beta_count);

}  // namespace qptk
