#include "qptk/qpft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "qptk/error.hpp"
#include "qptk/fft.hpp"
#include "qptk/kernels.hpp"
#include "parse_util.hpp"

namespace qptk {

ParameterSet::ParameterSet(double a, double b, double c, double d, double e) : a_(a), b_(b), c_(c), d_(d), e_(e) {
  for (double v : {a, b, c, d, e}) {
    if (!std::isfinite(v)) throw DomainError("quadratic-phase parameters must be finite");
  }
  if (b == 0.0) throw DomainError("quadratic-phase parameter b must be nonzero");
}

ParameterSet parameters_of(const Preset& preset) {
  switch (preset.kind) {
    case Preset::Kind::linear_canonical: {
      const double A = preset.p0, B = preset.p1, D = preset.p2;
      if (B == 0.0) throw DomainError("linear canonical preset requires B != 0");
      return {A / (2.0 * B), -1.0 / B, D / (2.0 * B), 0.0, 0.0};
    }
    case Preset::Kind::fractional: {
      const double theta = preset.p0;
      const double s = std::sin(theta);
      if (std::abs(s) < 1e-12) throw DomainError("fractional preset requires theta != n*pi");
      const double cot = std::cos(theta) / s;
      return {cot, -1.0 / s, cot, 0.0, 0.0};
    }
    case Preset::Kind::fresnel:
      return {1.0, preset.p0, 0.0, preset.p1, 0.0};
    case Preset::Kind::classical_wpt:
      return {0.0, -1.0, 1.0, 0.0, 0.0};
    case Preset::Kind::plain_fourier:
      return {0.0, 1.0, 0.0, 0.0, 0.0};
  }
  throw DomainError("unknown preset");
}

Preset parse_preset(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto values = detail::parse_number_list(args);
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (values.size() < lo || values.size() > hi) {
      throw UsageError("preset '" + std::string(name) + "' takes " + std::to_string(lo) +
                       (lo == hi ? "" : "-" + std::to_string(hi)) + " argument(s)");
    }
  };
  if (name == "plain_fourier") { need(0, 0); return Preset::plain_fourier(); }
  if (name == "classical_wpt") { need(0, 0); return Preset::classical_wpt(); }
  if (name == "lct" || name == "linear_canonical") { need(3, 3); return Preset::linear_canonical(values[0], values[1], values[2]); }
  if (name == "frft" || name == "fractional") { need(1, 1); return Preset::fractional(values[0]); }
  if (name == "fresnel") { need(1, 2); return Preset::fresnel(values[0], values.size() > 1 ? values[1] : 1.0); }
  throw UsageError("unknown preset '" + std::string(name) + "'");
}

ParameterSet parse_parameters(std::string_view text) {
  const auto v = detail::parse_number_list(text);
  if (v.size() != 5) throw UsageError("expected five comma-separated parameters a,b,c,d,e");
  return {v[0], v[1], v[2], v[3], v[4]};
}

std::string to_string(const ParameterSet& mu) {
  std::ostringstream os;
  os.precision(17);
  os << mu.a() << ',' << mu.b() << ',' << mu.c() << ',' << mu.d() << ',' << mu.e();
  return os.str();
}

cplx kernel_amplitude(const ParameterSet& mu) {
  // b / (2 pi i) = -i b / (2 pi)
  return std::sqrt(cplx(0.0, -mu.b() / (2.0 * kPi)));
}

cplx kernel(const ParameterSet& mu, double t, double xi) {
  const double phase = mu.a() * t * t + mu.b() * t * xi + mu.c() * xi * xi + mu.d() * t + mu.e() * xi;
  return kernel_amplitude(mu) * std::polar(1.0, phase);
}

namespace {

// w_j f_j exp(i (a t_j^2 + d t_j)): the xi-independent part of every kernel sum.
std::vector<cplx> prechirped(const SampledSignal& f, const ParameterSet& mu, double a_scale = 1.0,
                             double d_scale = 1.0) {
  const Grid& g = f.grid();
  const auto w = trapezoid_weights(g);
  std::vector<cplx> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double t = g.point(j);
    out[j] = w[j] * f[j] * std::polar(1.0, a_scale * mu.a() * t * t + d_scale * mu.d() * t);
  }
  return out;
}

void fill_plane_wave(const Grid& g, double freq, std::vector<cplx>& row) {
  row.resize(g.count());
  for (std::size_t j = 0; j < g.count(); ++j) row[j] = std::polar(1.0, freq * g.point(j));
}

}  // namespace

SampledSignal qpft_direct(const SampledSignal& f, const ParameterSet& mu, const Grid& xi_grid) {
  const auto pre = prechirped(f, mu);
  const cplx amp = kernel_amplitude(mu);
  const auto& k = kernels::active();
  std::vector<cplx> out(xi_grid.count());
  std::vector<cplx> row;
  for (std::size_t m = 0; m < xi_grid.count(); ++m) {
    const double xi = xi_grid.point(m);
    fill_plane_wave(f.grid(), mu.b() * xi, row);
    out[m] = amp * std::polar(1.0, mu.c() * xi * xi + mu.e() * xi) * k.dot(pre.data(), row.data(), pre.size());
  }
  return {xi_grid, std::move(out)};
}

Grid fast_xi_grid(const Grid& t_grid, const ParameterSet& mu) {
  const std::size_t n = t_grid.count();
  const double step = 2.0 * kPi / (static_cast<double>(n) * t_grid.step() * std::abs(mu.b()));
  return {-static_cast<double>(n / 2) * step, step, n};
}

SampledSignal qpft_fast(const SampledSignal& f, const ParameterSet& mu) {
  const std::size_t n = f.size();
  const Grid xi_grid = fast_xi_grid(f.grid(), mu);
  auto buf = prechirped(f, mu);
  FftPlan(n).transform(buf, FftDirection::inverse);

  const cplx amp = kernel_amplitude(mu);
  const double t0 = f.grid().start();
  const long long sign = mu.b() > 0 ? 1 : -1;
  const auto half = static_cast<long long>(n / 2);
  const auto nn = static_cast<long long>(n);
  std::vector<cplx> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double xi = xi_grid.point(m);
    long long bin = sign * (static_cast<long long>(m) - half) % nn;
    if (bin < 0) bin += nn;
    const double phase = mu.b() * t0 * xi + mu.c() * xi * xi + mu.e() * xi;
    out[m] = amp * std::polar(1.0, phase) * buf[static_cast<std::size_t>(bin)];
  }
  return {xi_grid, std::move(out)};
}

SampledSignal iqpft(const SampledSignal& spectrum, const ParameterSet& mu, const Grid& t_grid) {
  const Grid& xg = spectrum.grid();
  const auto w = trapezoid_weights(xg);
  std::vector<cplx> pre(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double xi = xg.point(k);
    pre[k] = w[k] * spectrum[k] * std::polar(1.0, -(mu.c() * xi * xi + mu.e() * xi));
  }
  const cplx amp = std::conj(kernel_amplitude(mu));
  const auto& kt = kernels::active();
  std::vector<cplx> out(t_grid.count());
  std::vector<cplx> row;
  for (std::size_t j = 0; j < t_grid.count(); ++j) {
    const double t = t_grid.point(j);
    fill_plane_wave(xg, -mu.b() * t, row);
    out[j] = amp * std::polar(1.0, -(mu.a() * t * t + mu.d() * t)) * kt.dot(pre.data(), row.data(), pre.size());
  }
  return {t_grid, std::move(out)};
}

SampledSignal qp_convolve(const SampledSignal& f, const SampledSignal& g, const ParameterSet& mu) {
  if (!f.grid().matches(g.grid())) throw ContractError("qp_convolve: f and g live on different grids");
  const Grid& grid = f.grid();
  const double ratio = grid.start() / grid.step();
  const double offset_d = std::round(ratio);
  if (std::abs(ratio - offset_d) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    throw ContractError("qp_convolve: grid start must be an integer multiple of the step");
  }
  const auto offset = static_cast<long long>(offset_d);
  const auto n = static_cast<long long>(grid.count());
  const auto weighted = prechirped(f, mu);  // w_z f(z) exp(i (a z^2 + d z))
  std::vector<cplx> out(grid.count());
  for (long long j = 0; j < n; ++j) {
    cplx acc{};
    for (long long m = 0; m < n; ++m) {
      const long long idx = j - m - offset;  // t_j - z_m = point(idx)
      if (idx < 0 || idx >= n) continue;
      acc += weighted[static_cast<std::size_t>(m)] * g[static_cast<std::size_t>(idx)];
    }
    const double t = grid.point(static_cast<std::size_t>(j));
    out[static_cast<std::size_t>(j)] = acc * std::polar(1.0, -(mu.a() * t * t + mu.d() * t));
  }
  return {grid, std::move(out)};
}

double spectral_extent(const SampledSignal& f, const ParameterSet& mu) {
  const auto spec = qpft_fast(f, mu);
  double peak = 0.0;
  for (const auto& v : spec.values()) peak = std::max(peak, std::norm(v));
  if (peak == 0.0) return 1.0;
  const std::size_t n = spec.size();
  if (std::max(std::norm(spec[0]), std::norm(spec[n - 1])) > 1e-12 * peak) {
    throw SamplingError("spectrum reaches the edge of the representable xi range +/-" +
                        std::to_string(spec.grid().max_abs()) + "; refine the time grid");
  }
  double extent = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    if (std::norm(spec[m]) > 1e-15 * peak) extent = std::max(extent, std::abs(spec.grid().point(m)));
  }
  return extent + 2.0 * spec.grid().step();
}

Grid spectral_xi_grid(const SampledSignal& f, const ParameterSet& mu, std::size_t count) {
  const double half = 1.2 * spectral_extent(f, mu);
  return Grid::closed(-half, half, count);
}

SampledSignal companion_signal(const SampledSignal& f) {
  std::vector<cplx> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double t = f.grid().point(j);
    out[j] = f[j] * std::polar(std::exp(-0.05 * (t - 0.5) * (t - 0.5)), 0.7 * t);
  }
  return {f.grid(), std::move(out)};
}

namespace {

constexpr std::pair<QpftIdentity, std::string_view> kIdentityNames[] = {
    {QpftIdentity::linearity, "linearity"},     {QpftIdentity::translation, "translation"},
    {QpftIdentity::reflection, "reflection"},   {QpftIdentity::modulation, "modulation"},
    {QpftIdentity::conjugation, "conjugation"}, {QpftIdentity::parseval, "parseval"},
    {QpftIdentity::plancherel, "plancherel"},   {QpftIdentity::convolution, "convolution"},
};

double default_tolerance(QpftIdentity id) {
  switch (id) {
    case QpftIdentity::linearity: return 1e-12;
    case QpftIdentity::translation: return 1e-5;
    case QpftIdentity::reflection: return 1e-8;
    case QpftIdentity::modulation: return 1e-6;
    case QpftIdentity::conjugation: return 1e-10;
    case QpftIdentity::parseval: return 1e-6;
    case QpftIdentity::plancherel: return 1e-6;
    case QpftIdentity::convolution: return 1e-4;
  }
  return 0.0;
}

double param_or(const IdentityParams& p, std::string_view key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

SampledSignal modulated(const SampledSignal& f, double quad, double lin) {
  std::vector<cplx> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double t = f.grid().point(j);
    out[j] = f[j] * std::polar(1.0, quad * t * t + lin * t);
  }
  return {f.grid(), std::move(out)};
}

double deviation(const SampledSignal& lhs, const SampledSignal& rhs) {
  const double scale = std::max(l2_norm(lhs), l2_norm(rhs));
  if (scale == 0.0) return 0.0;
  std::vector<cplx> diff(lhs.size());
  for (std::size_t k = 0; k < lhs.size(); ++k) diff[k] = lhs[k] - rhs[k];
  return l2_norm(SampledSignal(lhs.grid(), std::move(diff))) / scale;
}

VerificationReport function_report(std::string label, const SampledSignal& lhs, const SampledSignal& rhs,
                                   double tol) {
  VerificationReport r;
  r.label = std::move(label);
  r.lhs = l2_norm(lhs);
  r.rhs = l2_norm(rhs);
  r.relative_deviation = deviation(lhs, rhs);
  r.tolerance = tol;
  r.passed = r.relative_deviation <= tol;
  return r;
}

VerificationReport scalar_report(std::string label, cplx lhs, cplx rhs, double tol) {
  VerificationReport r;
  r.label = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.relative_deviation = scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
  r.tolerance = tol;
  r.passed = r.relative_deviation <= tol;
  return r;
}

}  // namespace

QpftIdentity parse_identity(std::string_view name) {
  for (const auto& [id, n] : kIdentityNames) {
    if (n == name) return id;
  }
  throw UsageError("unknown identity '" + std::string(name) + "'");
}

std::string_view identity_name(QpftIdentity id) {
  for (const auto& [i, n] : kIdentityNames) {
    if (i == id) return n;
  }
  return "unknown";
}

VerificationReport verify_qpft_identity(QpftIdentity id, const SampledSignal& f, const ParameterSet& mu,
                                        const IdentityParams& params, const std::optional<SampledSignal>& g_in) {
  const double tol = param_or(params, "tolerance", default_tolerance(id));
  const std::string label = "qpft." + std::string(identity_name(id));
  const std::size_t count = f.size();
  const double a = mu.a(), b = mu.b(), c = mu.c(), d = mu.d(), e = mu.e();

  switch (id) {
    case QpftIdentity::linearity: {
      const SampledSignal g = g_in ? *g_in : companion_signal(f);
      const double alpha = param_or(params, "alpha", 0.7);
      const double beta = param_or(params, "beta", -1.3);
      std::vector<cplx> mix(f.size());
      for (std::size_t j = 0; j < f.size(); ++j) mix[j] = alpha * f[j] + beta * g[j];
      const Grid xg = Grid::closed(-1.2 * std::max(spectral_extent(f, mu), spectral_extent(g, mu)),
                                   1.2 * std::max(spectral_extent(f, mu), spectral_extent(g, mu)), count);
      const auto lhs = qpft_direct(SampledSignal(f.grid(), std::move(mix)), mu, xg);
      const auto qf = qpft_direct(f, mu, xg);
      const auto qg = qpft_direct(g, mu, xg);
      std::vector<cplx> rhs(count);
      for (std::size_t k = 0; k < count; ++k) rhs[k] = alpha * qf[k] + beta * qg[k];
      return function_report(label, lhs, SampledSignal(xg, std::move(rhs)), tol);
    }
    case QpftIdentity::translation: {
      const double tau = param_or(params, "tau", 1.0);
      const SampledSignal shifted = tau == 0.0 ? f : translate(f, tau);
      const Grid xg = spectral_xi_grid(f, mu, count);
      const auto lhs = qpft_direct(shifted, mu, xg);
      const auto q_plus = qpft_direct(modulated(f, 0.0, 2.0 * a * tau), mu, xg);
      const auto q_minus = qpft_direct(modulated(f, 0.0, -2.0 * a * tau), mu, xg);
      std::vector<cplx> derived(count), quoted(count);
      for (std::size_t k = 0; k < count; ++k) {
        const double xi = xg.point(k);
        const double ph = a * tau * tau + b * tau * xi + d * tau;
        derived[k] = std::polar(1.0, ph) * q_plus[k];
        quoted[k] = std::polar(1.0, -ph) * q_minus[k];
      }
      auto r = function_report(label, lhs, SampledSignal(xg, std::move(derived)), tol);
      r.quoted_form_deviation = deviation(lhs, SampledSignal(xg, std::move(quoted)));
      r.note = "derived: exp(+i(a tau^2 + b tau xi + d tau)) Q[exp(+2i a tau t) f]; quoted form carries both signs flipped";
      return r;
    }
    case QpftIdentity::reflection: {
      const Grid xg = spectral_xi_grid(f, mu, count);
      const auto lhs = qpft_direct(reflect(f), mu, xg);
      const Grid neg(-xg.last(), xg.step(), count);
      const auto q = qpft_direct(f, ParameterSet(a, b, c, -d, -e), neg);
      std::vector<cplx> rhs(q.values().rbegin(), q.values().rend());
      auto r = function_report(label, lhs, SampledSignal(xg, std::move(rhs)), tol);
      r.quoted_form_deviation = r.relative_deviation;
      return r;
    }
    case QpftIdentity::modulation: {
      const double omega = param_or(params, "omega", 0.5);
      const auto mf = modulated(f, 0.0, omega);
      const double ext = std::max(spectral_extent(f, mu), spectral_extent(mf, mu));
      const Grid xg = Grid::closed(-1.2 * ext, 1.2 * ext, count);
      const auto lhs = qpft_direct(mf, mu, xg);
      const Grid shifted(xg.start() + omega / b, xg.step(), count);
      const auto q = qpft_direct(f, mu, shifted);
      std::vector<cplx> derived(count), quoted(count);
      for (std::size_t k = 0; k < count; ++k) {
        const double xi = xg.point(k);
        derived[k] = std::polar(1.0, -(c * omega * omega / (b * b) + 2.0 * c * omega * xi / b + e * omega / b)) * q[k];
        quoted[k] = std::polar(1.0, (omega * omega + 2.0 * omega * b * xi + omega * e * b) / b) * q[k];
      }
      auto r = function_report(label, lhs, SampledSignal(xg, std::move(derived)), tol);
      r.quoted_form_deviation = deviation(lhs, SampledSignal(xg, std::move(quoted)));
      r.note = "derived: exp(-i(c w^2/b^2 + 2 c w xi/b + e w/b)) Q[f](xi + w/b)";
      return r;
    }
    case QpftIdentity::conjugation: {
      const Grid xg = spectral_xi_grid(f, mu, count);
      std::vector<cplx> fc(f.values().begin(), f.values().end());
      for (auto& v : fc) v = std::conj(v);
      const auto lhs = qpft_direct(SampledSignal(f.grid(), std::move(fc)), mu, xg);
      const auto q = qpft_direct(f, mu.negated(), xg);
      std::vector<cplx> rhs(count);
      for (std::size_t k = 0; k < count; ++k) rhs[k] = std::conj(q[k]);
      auto r = function_report(label, lhs, SampledSignal(xg, std::move(rhs)), tol);
      r.quoted_form_deviation = r.relative_deviation;
      return r;
    }
    case QpftIdentity::parseval: {
      const SampledSignal g = g_in ? *g_in : companion_signal(f);
      const double ext = std::max(spectral_extent(f, mu), spectral_extent(g, mu));
      const Grid xg = Grid::closed(-1.2 * ext, 1.2 * ext, count);
      auto r = scalar_report(label, inner_product(f, g),
                             inner_product(qpft_direct(f, mu, xg), qpft_direct(g, mu, xg)), tol);
      r.quoted_form_deviation = r.relative_deviation;
      return r;
    }
    case QpftIdentity::plancherel: {
      const Grid xg = spectral_xi_grid(f, mu, count);
      const double lhs = std::pow(l2_norm(f), 2);
      const double rhs = std::pow(l2_norm(qpft_direct(f, mu, xg)), 2);
      auto r = scalar_report(label, lhs, rhs, tol);
      r.quoted_form_deviation = r.relative_deviation;
      return r;
    }
    case QpftIdentity::convolution: {
      const SampledSignal g = g_in ? *g_in : companion_signal(f);
      const auto conv = qp_convolve(f, g, mu);
      const auto g_chirp = modulated(g, -a, -d);
      const double ext = std::max({spectral_extent(f, mu), spectral_extent(g_chirp, mu), spectral_extent(conv, mu)});
      const Grid xg = Grid::closed(-1.2 * ext, 1.2 * ext, count);
      const auto lhs = qpft_direct(conv, mu, xg);
      const auto qf = qpft_direct(f, mu, xg);
      const auto qg = qpft_direct(g_chirp, mu, xg);
      const cplx factor = std::sqrt(cplx(0.0, 2.0 * kPi / b));
      std::vector<cplx> rhs(count);
      for (std::size_t k = 0; k < count; ++k) {
        const double xi = xg.point(k);
        rhs[k] = factor * std::polar(1.0, -(c * xi * xi + e * xi)) * qf[k] * qg[k];
      }
      auto r = function_report(label, lhs, SampledSignal(xg, std::move(rhs)), tol);
      r.quoted_form_deviation = r.relative_deviation;
      return r;
    }
  }
  throw UsageError("unknown identity");
}

}  // namespace qptk
