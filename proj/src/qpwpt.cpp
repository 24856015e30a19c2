#include "qptk/qpwpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qptk/error.hpp"
#include "qptk/fft.hpp"
#include "qptk/kernels.hpp"

namespace qptk {

TFGrid::TFGrid(Grid xi_grid, Grid beta_grid, double alpha_scale) : xi(xi_grid), beta(beta_grid), alpha(alpha_scale) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("scale alpha must be finite and > 0");
}

bool TFGrid::matches(const TFGrid& other) const noexcept {
  return xi.matches(other.xi) && beta.matches(other.beta) && alpha == other.alpha;
}

TFMap::TFMap(TFGrid tf, ParameterSet mu, WaveletSpec wavelet, std::vector<cplx> values)
    : tf_(tf), mu_(mu), wavelet_(wavelet), values_(std::move(values)) {
  if (values_.size() != tf_.xi.count() * tf_.beta.count()) {
    throw ContractError("TF map has " + std::to_string(values_.size()) + " values for a " +
                        std::to_string(tf_.xi.count()) + "x" + std::to_string(tf_.beta.count()) + " grid");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ContractError("TF map contains NaN or Inf");
  }
}

TFMap TFMap::scaled(cplx factor) const {
  std::vector<cplx> out(values_);
  for (auto& v : out) v *= factor;
  return {tf_, mu_, wavelet_, std::move(out)};
}

void check_chirp_resolution(const Grid& t_grid, const ParameterSet& mu) {
  const double bound = 2.0 * std::abs(mu.a()) * t_grid.max_abs() * t_grid.step();
  if (bound > kPi / 4.0) {
    throw SamplingError("time grid cannot resolve the chirp exp(2 i a t^2): 2|a| T dt = " + std::to_string(bound) +
                        " exceeds pi/4 = " + std::to_string(kPi / 4.0));
  }
}

namespace {

// Column j holds w_t f(t) conj(psi^mu_{beta_j,alpha}(t)) over the time grid.
std::vector<std::vector<cplx>> windowed_columns(const SampledSignal& f, const WaveletSpec& spec, const Grid& beta,
                                                double alpha, const ParameterSet& mu) {
  const Grid& tg = f.grid();
  const auto w = trapezoid_weights(tg);
  std::vector<std::vector<cplx>> cols(beta.count(), std::vector<cplx>(f.size()));
  for (std::size_t j = 0; j < beta.count(); ++j) {
    const QPWaveletAtom atom{mu, beta.point(j), alpha};
    for (std::size_t t = 0; t < f.size(); ++t) {
      cols[j][t] = w[t] * f[t] * std::conj(qp_atom_value(spec, atom, tg.point(t)));
    }
  }
  return cols;
}

double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TFMap qpwpt_direct(const SampledSignal& f, const WaveletSpec& spec, const TFGrid& tf, const ParameterSet& mu) {
  check_chirp_resolution(f.grid(), mu);
  const auto cols = windowed_columns(f, spec, tf.beta, tf.alpha, mu);
  const auto& k = kernels::active();
  const std::size_t nb = tf.beta.count();
  std::vector<cplx> values(tf.xi.count() * nb);
  std::vector<cplx> row(f.size());
  for (std::size_t m = 0; m < tf.xi.count(); ++m) {
    const double xi = tf.xi.point(m);
    for (std::size_t t = 0; t < f.size(); ++t) row[t] = kernel(mu, f.grid().point(t), xi);
    for (std::size_t j = 0; j < nb; ++j) values[m * nb + j] = k.dot(cols[j].data(), row.data(), row.size());
  }
  return {tf, mu, spec, std::move(values)};
}

TFMap qpwpt_fast(const SampledSignal& f, const WaveletSpec& spec, const Grid& beta_grid, double alpha,
                 const ParameterSet& mu) {
  check_chirp_resolution(f.grid(), mu);
  const Grid& tg = f.grid();
  const std::size_t n = f.size();
  const Grid xi_grid = fast_xi_grid(tg, mu);
  const TFGrid tf(xi_grid, beta_grid, alpha);

  const auto w = trapezoid_weights(tg);
  const cplx amp = kernel_amplitude(mu);
  const double a = mu.a(), b = mu.b(), c = mu.c(), d = mu.d(), e = mu.e();
  std::vector<cplx> h(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double x = tg.point(t);
    h[t] = w[t] * amp * std::polar(1.0, 2.0 * a * x * x + 2.0 * d * x) * f[t];
  }

  // Per-xi phase exp(i (b t0 xi + c xi^2 + e xi)) and FFT bin for each output row.
  const long long sign = b > 0 ? 1 : -1;
  const auto half = static_cast<long long>(n / 2);
  const auto nn = static_cast<long long>(n);
  std::vector<cplx> xi_phase(n);
  std::vector<std::size_t> bins(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double xi = xi_grid.point(m);
    xi_phase[m] = std::polar(1.0, b * tg.start() * xi + c * xi * xi + e * xi);
    long long bin = sign * (static_cast<long long>(m) - half) % nn;
    if (bin < 0) bin += nn;
    bins[m] = static_cast<std::size_t>(bin);
  }

  const FftPlan plan(n);
  const auto& k = kernels::active();
  const std::size_t nb = beta_grid.count();
  std::vector<cplx> values(n * nb);
  std::vector<cplx> window(n), buf(n);
  for (std::size_t j = 0; j < nb; ++j) {
    const double beta = beta_grid.point(j);
    for (std::size_t t = 0; t < n; ++t) window[t] = spec.scaled(tg.point(t) - beta, alpha);
    k.mul_conj(h.data(), window.data(), buf.data(), n);
    plan.transform(buf, FftDirection::inverse);
    const cplx beta_phase = std::polar(1.0, -(a * beta * beta + d * beta));
    for (std::size_t m = 0; m < n; ++m) values[m * nb + j] = beta_phase * xi_phase[m] * buf[bins[m]];
  }
  return {tf, mu, spec, std::move(values)};
}

cplx qpwpt_point(const SampledSignal& f, const WaveletSpec& spec, double xi, double beta, double alpha,
                 const ParameterSet& mu) {
  const Grid& tg = f.grid();
  const auto w = trapezoid_weights(tg);
  const QPWaveletAtom atom{mu, beta, alpha};
  cplx acc{};
  for (std::size_t t = 0; t < f.size(); ++t) {
    const double x = tg.point(t);
    acc += w[t] * f[t] * std::conj(qp_atom_value(spec, atom, x)) * kernel(mu, x, xi);
  }
  return acc;
}

namespace {

struct SpectralFactors {
  Grid w_grid;
  SampledSignal signal_part;  // Q[exp(i(at^2+dt)) f](w + xi)
  SampledSignal window_part;  // Q[exp(-i(at^2+dt)) psi](alpha w)
};

SampledSignal chirped(const SampledSignal& s, double a, double d) {
  std::vector<cplx> out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double t = s.grid().point(j);
    out[j] = s[j] * std::polar(1.0, a * t * t + d * t);
  }
  return {s.grid(), std::move(out)};
}

SpectralFactors spectral_factors(const SampledSignal& f, const WaveletSpec& spec, double xi, double alpha,
                                 const ParameterSet& mu, const Grid& w_grid) {
  const auto u = chirped(f, mu.a(), mu.d());
  const auto v = chirped(mother(spec, default_grid(spec)), -mu.a(), -mu.d());
  const Grid shifted(w_grid.start() + xi, w_grid.step(), w_grid.count());
  const Grid dilated(alpha * w_grid.start(), alpha * w_grid.step(), w_grid.count());
  return {w_grid, qpft_direct(u, mu, shifted), qpft_direct(v, mu, dilated)};
}

double scale_gain(const WaveletSpec& spec, double alpha) {
  // alpha * s(alpha) with psi_alpha = s(alpha) psi(t / alpha)
  return spec.scaling == WaveletSpec::Scaling::l2 ? std::sqrt(alpha) : 1.0;
}

}  // namespace

SpectralEvaluation qpwpt_via_spectral(const SampledSignal& f, const WaveletSpec& spec, double xi, double beta,
                                      double alpha, const ParameterSet& mu, const Grid& w_grid) {
  const auto fac = spectral_factors(f, spec, xi, alpha, mu, w_grid);
  const double a = mu.a(), b = mu.b(), c = mu.c(), d = mu.d(), e = mu.e();
  std::vector<cplx> integrand(w_grid.count());
  for (std::size_t k = 0; k < w_grid.count(); ++k) {
    const double w = w_grid.point(k);
    const double aw = alpha * w;
    const double phase = -(a * beta * beta + b * beta * w + c * w * w + d * beta + e * w) + c * aw * aw + e * aw -
                         2.0 * c * w * xi;
    integrand[k] = std::polar(1.0, phase) * fac.signal_part[k] * std::conj(fac.window_part[k]);
  }
  const cplx value = kernel_amplitude(mu) * scale_gain(spec, alpha) * integrate(integrand, w_grid);
  return {value, std::max(edge_fraction(fac.signal_part.values()), edge_fraction(fac.window_part.values()))};
}

SpectralEvaluation qpwpt_via_spectral_quoted(const SampledSignal& f, const WaveletSpec& spec, double xi,
                                             double beta, double alpha, const ParameterSet& mu,
                                             const Grid& w_grid) {
  const auto fac = spectral_factors(f, spec, xi, alpha, mu, w_grid);
  const double a = mu.a(), b = mu.b(), c = mu.c(), d = mu.d(), e = mu.e();
  std::vector<cplx> integrand(w_grid.count());
  for (std::size_t k = 0; k < w_grid.count(); ++k) {
    const double w = w_grid.point(k);
    const double aw = alpha * w;
    const double phase = a * beta * beta + b * beta * w + c * w * w + d * beta + e * w - c * aw * aw - e * aw -
                         2.0 * c * w * xi;
    integrand[k] = std::polar(1.0, phase) * fac.signal_part[k] * fac.window_part[k];
  }
  const cplx value = kernel_amplitude(mu) * scale_gain(spec, alpha) * integrate(integrand, w_grid);
  return {value, std::max(edge_fraction(fac.signal_part.values()), edge_fraction(fac.window_part.values()))};
}

Grid spectral_w_grid(const SampledSignal& f, const WaveletSpec& spec, double xi, double alpha,
                     const ParameterSet& mu, std::size_t count) {
  const double eu = 1.5 * spectral_extent(chirped(f, mu.a(), mu.d()), mu);
  const double ev = 1.5 * spectral_extent(chirped(mother(spec, default_grid(spec)), -mu.a(), -mu.d()), mu) / alpha;
  return Grid::closed(std::min(-eu - xi, -ev), std::max(eu - xi, ev), count);
}

SampledSignal analysis_atom(const WaveletSpec& spec, const ParameterSet& mu, double xi, double beta, double alpha,
                            const Grid& t_grid) {
  const cplx amp = std::conj(kernel_amplitude(mu));
  const double a = mu.a(), b = mu.b(), c = mu.c(), d = mu.d(), e = mu.e();
  std::vector<cplx> v(t_grid.count());
  for (std::size_t k = 0; k < t_grid.count(); ++k) {
    const double t = t_grid.point(k);
    const double phase = -(a * t * t + b * t * xi + c * xi * xi + d * t + e * xi) - a * (t * t - beta * beta) -
                         d * (t - beta);
    v[k] = amp * std::polar(1.0, phase) * spec.scaled(t - beta, alpha);
  }
  return {t_grid, std::move(v)};
}

ReconstructionResult reconstruct(const TFMap& w, const Grid& t_grid) {
  const TFGrid& tf = w.tf();
  const ParameterSet& mu = w.mu();
  const double a = mu.a(), b = mu.b(), c = mu.c(), d = mu.d(), e = mu.e();
  const std::size_t nx = w.rows(), nb = w.cols();
  const auto wx = trapezoid_weights(tf.xi);
  const auto wb = trapezoid_weights(tf.beta);

  // beta-major copy: wx_k W(xi_k, beta_j) exp(-i (c xi_k^2 + e xi_k))
  std::vector<cplx> cols(nb * nx);
  for (std::size_t m = 0; m < nx; ++m) {
    const double xi = tf.xi.point(m);
    const cplx ph = wx[m] * std::polar(1.0, -(c * xi * xi + e * xi));
    for (std::size_t j = 0; j < nb; ++j) cols[j * nx + m] = w.at(m, j) * ph;
  }
  std::vector<cplx> beta_phase(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    const double beta = tf.beta.point(j);
    beta_phase[j] = wb[j] * std::polar(1.0, a * beta * beta + d * beta);
  }

  const auto& k = kernels::active();
  const cplx amp = std::conj(kernel_amplitude(mu));
  std::vector<cplx> out(t_grid.count());
  std::vector<cplx> row(nx);
  for (std::size_t i = 0; i < t_grid.count(); ++i) {
    const double t = t_grid.point(i);
    for (std::size_t m = 0; m < nx; ++m) row[m] = std::polar(1.0, -b * t * tf.xi.point(m));
    cplx acc{};
    for (std::size_t j = 0; j < nb; ++j) {
      const cplx win = w.wavelet().scaled(t - tf.beta.point(j), tf.alpha);
      if (win == 0.0) continue;
      acc += beta_phase[j] * win * k.dot(&cols[j * nx], row.data(), nx);
    }
    out[i] = amp * std::polar(1.0, -(2.0 * a * t * t + 2.0 * d * t)) * acc;
  }

  double peak = max_abs(w.values());
  double edge = 0.0;
  for (std::size_t m = 0; m < nx; ++m) edge = std::max({edge, std::abs(w.at(m, 0)), std::abs(w.at(m, nb - 1))});
  for (std::size_t j = 0; j < nb; ++j) edge = std::max({edge, std::abs(w.at(0, j)), std::abs(w.at(nx - 1, j))});
  return {SampledSignal(t_grid, std::move(out)), peak == 0.0 ? 0.0 : edge / peak};
}

cplx moyal(const TFMap& wf, const TFMap& wg) {
  if (!wf.tf().matches(wg.tf())) throw ContractError("moyal: TF maps use different grids");
  if (!(wf.mu() == wg.mu())) throw ContractError("moyal: TF maps use different parameter sets");
  const auto wx = trapezoid_weights(wf.tf().xi);
  const auto wb = trapezoid_weights(wf.tf().beta);
  const auto& k = kernels::active();
  std::vector<cplx> row(wf.cols());
  cplx acc{};
  for (std::size_t m = 0; m < wf.rows(); ++m) {
    k.scale_real(&wf.values()[m * wf.cols()], wb.data(), row.data(), wf.cols());
    acc += wx[m] * k.dot_conj(row.data(), &wg.values()[m * wg.cols()], wf.cols());
  }
  return acc;
}

double energy(const TFMap& w) { return tf_lp_integral(w, 2.0); }

double tf_lp_integral(const TFMap& w, double p) {
  const auto wx = trapezoid_weights(w.tf().xi);
  const auto wb = trapezoid_weights(w.tf().beta);
  double acc = 0.0;
  for (std::size_t m = 0; m < w.rows(); ++m) {
    double row = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const double mag = std::abs(w.at(m, j));
      row += wb[j] * (p == 2.0 ? mag * mag : std::pow(mag, p));
    }
    acc += wx[m] * row;
  }
  return acc;
}

cplx reproducing_kernel(const WaveletSpec& spec, const ParameterSet& mu, double xi, double beta, double xi0,
                        double beta0, double alpha, const Grid& t_grid) {
  return inner_product(analysis_atom(spec, mu, xi, beta, alpha, t_grid),
                       analysis_atom(spec, mu, xi0, beta0, alpha, t_grid));
}

cplx reproduce_at(const TFMap& w, double xi0, double beta0, const Grid& t_grid) {
  const TFGrid& tf = w.tf();
  const ParameterSet& mu = w.mu();
  const double a = mu.a(), b = mu.b(), c = mu.c(), d = mu.d(), e = mu.e();
  const auto& spec = w.wavelet();
  const std::size_t nt = t_grid.count(), nx = w.rows(), nb = w.cols();
  const auto wt = trapezoid_weights(t_grid);
  const auto wx = trapezoid_weights(tf.xi);
  const auto wb = trapezoid_weights(tf.beta);

  // K(xi, beta : xi0, beta0) = |amp|^2 exp(-i(c xi^2 + e xi) + i(c xi0^2 + e xi0))
  //   exp(i(a beta^2 + d beta) - i(a beta0^2 + d beta0))
  //   * sum_t w_t exp(-i b t (xi - xi0)) psi_alpha(t - beta) conj(psi_alpha(t - beta0))
  std::vector<std::vector<cplx>> window_products(nb, std::vector<cplx>(nt));
  for (std::size_t j = 0; j < nb; ++j) {
    for (std::size_t i = 0; i < nt; ++i) {
      const double t = t_grid.point(i);
      window_products[j][i] =
          wt[i] * spec.scaled(t - tf.beta.point(j), tf.alpha) * std::conj(spec.scaled(t - beta0, tf.alpha));
    }
  }
  const double amp2 = std::norm(kernel_amplitude(mu));
  const auto& k = kernels::active();
  std::vector<cplx> row(nt);
  cplx acc{};
  for (std::size_t m = 0; m < nx; ++m) {
    const double xi = tf.xi.point(m);
    for (std::size_t i = 0; i < nt; ++i) row[i] = std::polar(1.0, -b * t_grid.point(i) * (xi - xi0));
    const cplx xi_phase = std::polar(1.0, -(c * xi * xi + e * xi) + (c * xi0 * xi0 + e * xi0));
    cplx row_acc{};
    for (std::size_t j = 0; j < nb; ++j) {
      const double beta = tf.beta.point(j);
      const cplx beta_phase = std::polar(1.0, a * beta * beta + d * beta - (a * beta0 * beta0 + d * beta0));
      const cplx kern = amp2 * xi_phase * beta_phase * k.dot(window_products[j].data(), row.data(), nt);
      row_acc += wb[j] * w.at(m, j) * kern;
    }
    acc += wx[m] * row_acc;
  }
  return acc;
}

namespace {

// ||psi_alpha||_p / ||psi||_p
double window_scale(const WaveletSpec& spec, double alpha, double p) {
  const double s = spec.scaling == WaveletSpec::Scaling::l2 ? 1.0 / std::sqrt(alpha) : 1.0 / alpha;
  return s * std::pow(alpha, 1.0 / p);
}

VerificationReport upper_bound_report(std::string label, double lhs, double rhs, double slack_abs,
                                      double slack_rel) {
  VerificationReport r;
  r.label = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relative_deviation = rhs > 0.0 ? std::max(0.0, (lhs - rhs) / rhs) : (lhs > 0.0 ? 1.0 : 0.0);
  r.tolerance = slack_rel;
  r.passed = lhs <= rhs * (1.0 + slack_rel) + slack_abs;
  return r;
}

}  // namespace

VerificationReport pointwise_bound_check(const TFMap& w, const SampledSignal& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("pointwise bound needs finite p >= 1");
  const double amp = std::abs(kernel_amplitude(w.mu()));
  const double psi_p = wavelet_lp_norm(w.wavelet(), p);
  const double f_q = p == 1.0 ? sup_norm(f) : lp_norm(f, p / (p - 1.0));
  const double rhs = window_scale(w.wavelet(), w.tf().alpha, p) * amp * psi_p * f_q;
  auto r = upper_bound_report("qpwpt.pointwise_bound", max_abs(w.values()), rhs, 1e-9, 0.0);
  r.note = "p = " + std::to_string(p);
  return r;
}

VerificationReport beta_lp_bound_check(const TFMap& w, const SampledSignal& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("L^p bound needs finite p >= 1");
  const auto wb = trapezoid_weights(w.tf().beta);
  double worst = 0.0;
  for (std::size_t m = 0; m < w.rows(); ++m) {
    double acc = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) acc += wb[j] * std::pow(std::abs(w.at(m, j)), p);
    worst = std::max(worst, std::pow(acc, 1.0 / p));
  }
  const double amp = std::abs(kernel_amplitude(w.mu()));
  const double rhs = window_scale(w.wavelet(), w.tf().alpha, p) * amp * wavelet_lp_norm(w.wavelet(), p) * lp_norm(f, 1.0);
  auto r = upper_bound_report("qpwpt.beta_lp_bound", worst, rhs, 0.0, 1e-6);
  r.note = "p = " + std::to_string(p);
  return r;
}

TFGrid suggest_tf_grid(const SampledSignal& f, const WaveletSpec& spec, double alpha, const ParameterSet& mu,
                       std::size_t xi_count, std::size_t beta_count) {
  const Grid& tg = f.grid();
  const auto wt = trapezoid_weights(tg);

  // beta marginal: integral |f(t)|^2 |psi_alpha(t - beta)|^2 dt on a probe grid.
  const double reach = spec.support_radius() * alpha;
  const Grid probe = Grid::closed(tg.start() - reach, tg.last() + reach, 512);
  std::vector<double> marginal(probe.count());
  double peak = 0.0;
  for (std::size_t j = 0; j < probe.count(); ++j) {
    double acc = 0.0;
    for (std::size_t t = 0; t < f.size(); ++t) {
      const double mag = std::norm(f[t]);
      if (mag == 0.0) continue;
      acc += wt[t] * mag * std::norm(spec.scaled(tg.point(t) - probe.point(j), alpha));
    }
    marginal[j] = acc;
    peak = std::max(peak, acc);
  }
  if (peak == 0.0) return {Grid::closed(-1.0, 1.0, xi_count), Grid::closed(tg.start(), tg.last(), beta_count), alpha};
  std::size_t lo = probe.count(), hi = 0;
  for (std::size_t j = 0; j < probe.count(); ++j) {
    if (marginal[j] > 1e-15 * peak) {
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
  }
  const double beta_lo = probe.point(lo > 0 ? lo - 1 : 0);
  const double beta_hi = probe.point(std::min(hi + 1, probe.count() - 1));

  // xi marginal from the fast path on a coarse beta sweep.
  const auto coarse = qpwpt_fast(f, spec, Grid::closed(beta_lo, beta_hi, 48), alpha, mu);
  std::vector<double> xi_marginal(coarse.rows(), 0.0);
  double xi_peak = 0.0;
  for (std::size_t m = 0; m < coarse.rows(); ++m) {
    for (std::size_t j = 0; j < coarse.cols(); ++j) xi_marginal[m] += std::norm(coarse.at(m, j));
    xi_peak = std::max(xi_peak, xi_marginal[m]);
  }
  if (std::max(xi_marginal.front(), xi_marginal.back()) > 1e-12 * xi_peak) {
    throw SamplingError("transform energy reaches the representable xi edge +/-" +
                        std::to_string(coarse.tf().xi.max_abs()) + "; refine the time grid");
  }
  double xi_lo = std::numeric_limits<double>::infinity(), xi_hi = -xi_lo;
  for (std::size_t m = 0; m < coarse.rows(); ++m) {
    if (xi_marginal[m] > 1e-15 * xi_peak) {
      xi_lo = std::min(xi_lo, coarse.tf().xi.point(m));
      xi_hi = std::max(xi_hi, coarse.tf().xi.point(m));
    }
  }
  const double pad = 0.1 * (xi_hi - xi_lo) + 2.0 * coarse.tf().xi.step();
  return {Grid::closed(xi_lo - pad, xi_hi + pad, xi_count), Grid::closed(beta_lo, beta_hi, beta_count), alpha};
}

}  // namespace qptk
