#include "qptk/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "qptk/error.hpp"

namespace qptk {

std::string_view inequality_name(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::heisenberg: return "heisenberg";
    case InequalityKind::lieb: return "lieb";
    case InequalityKind::logarithmic: return "logarithmic";
  }
  return "unknown";
}

namespace {

// ||psi_alpha||_2 for the map's window.
double window_norm(const TFMap& w) {
  const double alpha = w.tf().alpha;
  const double gain = w.wavelet().scaling == WaveletSpec::Scaling::l2 ? 1.0 : 1.0 / std::sqrt(alpha);
  return gain * wavelet_lp_norm(w.wavelet(), 2.0);
}

constexpr double kTailFraction = 1e-10;

}  // namespace

double heisenberg_rhs(double b, double f_norm_sq, double psi_norm) {
  const double r = f_norm_sq * psi_norm / (2.0 * std::abs(b));
  return r * r;
}

UncertaintyResult heisenberg_check(const SampledSignal& f, const TFMap& w) {
  const Grid& tg = f.grid();
  std::vector<double> time_density(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double t = tg.point(k);
    time_density[k] = t * t * std::norm(f[k]);
  }
  const double t_peak = *std::max_element(time_density.begin(), time_density.end());
  if (t_peak > 0.0 && std::max(time_density.front(), time_density.back()) > kTailFraction * t_peak) {
    throw TruncationError("t^2 |f|^2 has not decayed at the time-grid edge");
  }

  const TFGrid& tf = w.tf();
  const auto wx = trapezoid_weights(tf.xi);
  const auto wb = trapezoid_weights(tf.beta);
  double xi_moment = 0.0, peak = 0.0, border = 0.0;
  for (std::size_t m = 0; m < w.rows(); ++m) {
    const double xi = tf.xi.point(m);
    double row = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const double v = xi * xi * std::norm(w.at(m, j));
      row += wb[j] * v;
      peak = std::max(peak, v);
      if (m == 0 || m + 1 == w.rows() || j == 0 || j + 1 == w.cols()) border = std::max(border, v);
    }
    xi_moment += wx[m] * row;
  }
  if (peak > 0.0 && border > kTailFraction * peak) {
    throw TruncationError("xi^2 |W|^2 has not decayed at the TF-grid border");
  }

  UncertaintyResult r;
  r.kind = InequalityKind::heisenberg;
  r.lhs = integrate(time_density, tg) * xi_moment;
  const double fn = l2_norm(f);
  r.rhs = heisenberg_rhs(w.mu().b(), fn * fn, window_norm(w));
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 1.0;
  r.passed = r.lhs >= r.rhs * (1.0 - 1e-9);
  return r;
}

UncertaintyResult lieb_check(const SampledSignal& f, const TFMap& w, double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw DomainError("lieb check needs finite p >= 2");
  const double b = std::abs(w.mu().b());
  const double m = std::pow(b, 0.5 - 1.0 / p) / std::sqrt(2.0 * kPi);
  UncertaintyResult r;
  r.kind = InequalityKind::lieb;
  r.p = p;
  r.lhs = tf_lp_integral(w, p);
  r.rhs = (2.0 / p) * std::pow(m * l2_norm(f) * window_norm(w), p);
  r.ratio = r.lhs > 0.0 ? r.rhs / r.lhs : 1.0;
  r.passed = r.lhs <= r.rhs * (1.0 + 1e-9);
  r.corrected_rhs = 2.0 * kPi * r.rhs;
  r.expected_violation = !r.passed && r.lhs <= *r.corrected_rhs * (1.0 + 1e-3);
  return r;
}

double log_rhs_constant(double b) { return digamma_quarter() - std::log(kPi) - std::log(std::abs(b)); }

namespace {

// g(0) by cubic interpolation through the four nodes around 0 (exact when 0 is a node).
double value_at_zero(std::span<const double> g, const Grid& grid) {
  const double pos = -grid.start() / grid.step();
  const auto nearest = static_cast<std::size_t>(std::llround(pos));
  if (std::abs(grid.point(nearest)) <= 1e-12 * grid.step()) return g[nearest];
  const std::size_t n = g.size();
  const auto floor_idx = static_cast<long long>(std::floor(pos));
  const auto first = static_cast<std::size_t>(std::clamp<long long>(floor_idx - 1, 0, static_cast<long long>(n) - 4));
  double acc = 0.0;
  for (std::size_t i = first; i < first + 4; ++i) {
    double l = 1.0;
    for (std::size_t j = first; j < first + 4; ++j) {
      if (j != i) l *= (0.0 - grid.point(j)) / (grid.point(i) - grid.point(j));
    }
    acc += l * g[i];
  }
  return acc;
}

}  // namespace

double log_weighted_integral(std::span<const double> g, const Grid& grid) {
  std::vector<double> v(g.size());
  const bool straddles = grid.start() < 0.0 && grid.last() > 0.0 && g.size() >= 4;
  if (!straddles) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double t = grid.point(k);
      v[k] = t == 0.0 ? 0.0 : std::log(std::abs(t)) * g[k];
    }
    return integrate(v, grid);
  }
  // Subtract g(0) exp(-t^2/s^2) and add its log moment in closed form:
  // integral ln|t| exp(-t^2/s^2) dt = s sqrt(pi) (ln s - (euler_gamma + 2 ln 2) / 2).
  constexpr double kEulerGamma = 0.57721566490153286;
  const double s = std::min(1.0, std::min(-grid.start(), grid.last()) / 7.0);
  const double g0 = value_at_zero(g, grid);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double t = grid.point(k);
    v[k] = t == 0.0 ? 0.0 : std::log(std::abs(t)) * (g[k] - g0 * std::exp(-t * t / (s * s)));
  }
  const double analytic = s * std::sqrt(kPi) * (std::log(s) - 0.5 * (kEulerGamma + 2.0 * std::log(2.0)));
  return integrate(v, grid) + g0 * analytic;
}

double log_moment(const SampledSignal& f) {
  std::vector<double> density(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) density[k] = std::norm(f[k]);
  return log_weighted_integral(density, f.grid());
}

UncertaintyResult log_check(const SampledSignal& f, const TFMap& w) {
  const TFGrid& tf = w.tf();
  const auto wb = trapezoid_weights(tf.beta);
  std::vector<double> marginal(w.rows(), 0.0);
  for (std::size_t m = 0; m < w.rows(); ++m) {
    for (std::size_t j = 0; j < w.cols(); ++j) marginal[m] += wb[j] * std::norm(w.at(m, j));
  }
  const double xi_part = log_weighted_integral(marginal, tf.xi);
  const double psi2 = window_norm(w) * window_norm(w);
  const double fn = l2_norm(f);
  UncertaintyResult r;
  r.kind = InequalityKind::logarithmic;
  r.lhs = psi2 * log_moment(f) + xi_part;
  r.rhs = log_rhs_constant(w.mu().b()) * fn * fn * psi2;
  r.ratio = r.rhs != 0.0 ? 1.0 + (r.lhs - r.rhs) / std::abs(r.rhs) : 1.0;
  r.passed = r.lhs >= r.rhs - 1e-9 * std::abs(r.rhs);
  return r;
}

double heisenberg_preset_bounds(const Preset& preset) {
  return heisenberg_rhs(parameters_of(preset).b(), 1.0, 1.0);
}

}  // namespace qptk
