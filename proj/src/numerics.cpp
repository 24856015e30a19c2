#include "qptk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qptk/error.hpp"
#include "qptk/fft.hpp"
#include "qptk/kernels.hpp"

namespace qptk {

Grid::Grid(double start, double step, std::size_t count) : start_(start), step_(step), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(step) || !(step > 0.0)) {
    throw ContractError("grid step must be finite and > 0 (got " + std::to_string(step) + ")");
  }
  if (count < 2) throw ContractError("grid needs at least 2 points");
}

Grid Grid::closed(double lo, double hi, std::size_t count) {
  if (count < 2) throw ContractError("grid needs at least 2 points");
  return Grid(lo, (hi - lo) / static_cast<double>(count - 1), count);
}

Grid Grid::half_open(double lo, double hi, std::size_t count) {
  if (count < 2) throw ContractError("grid needs at least 2 points");
  return Grid(lo, (hi - lo) / static_cast<double>(count), count);
}

double Grid::max_abs() const noexcept { return std::max(std::abs(start_), std::abs(last())); }

std::vector<double> Grid::points() const {
  std::vector<double> out(count_);
  for (std::size_t k = 0; k < count_; ++k) out[k] = point(k);
  return out;
}

bool Grid::matches(const Grid& other) const noexcept {
  return count_ == other.count_ && std::abs(step_ - other.step_) <= 1e-12 * step_ &&
         std::abs(start_ - other.start_) <= 1e-9 * step_;
}

SampledSignal::SampledSignal(Grid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) {
    throw ContractError("signal has " + std::to_string(values_.size()) + " samples but grid has " +
                        std::to_string(grid_.count()) + " points");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ContractError("signal contains NaN or Inf");
  }
}

SampledSignal::SampledSignal(Grid grid) : grid_(grid), values_(grid.count(), cplx{}) {}

SampledSignal SampledSignal::scaled(cplx factor) const {
  std::vector<cplx> out(values_);
  for (auto& v : out) v *= factor;
  return {grid_, std::move(out)};
}

std::vector<double> trapezoid_weights(const Grid& grid) {
  std::vector<double> w(grid.count(), grid.step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

cplx integrate(std::span<const cplx> values, const Grid& grid) {
  if (values.size() != grid.count()) throw ContractError("integrate: values/grid length mismatch");
  cplx interior{};
  for (std::size_t k = 1; k + 1 < values.size(); ++k) interior += values[k];
  return grid.step() * (interior + 0.5 * (values.front() + values.back()));
}

double integrate(std::span<const double> values, const Grid& grid) {
  if (values.size() != grid.count()) throw ContractError("integrate: values/grid length mismatch");
  double interior = 0.0;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) interior += values[k];
  return grid.step() * (interior + 0.5 * (values.front() + values.back()));
}

cplx inner_product(const SampledSignal& f, const SampledSignal& g) {
  if (!f.grid().matches(g.grid())) throw ContractError("inner_product: signals live on different grids");
  const auto w = trapezoid_weights(f.grid());
  std::vector<cplx> fw(f.size());
  const auto& k = kernels::active();
  k.scale_real(f.values().data(), w.data(), fw.data(), f.size());
  return k.dot_conj(fw.data(), g.values().data(), f.size());
}

double lp_norm(const SampledSignal& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp_norm requires finite p >= 1");
  std::vector<double> mag(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) mag[k] = std::pow(std::abs(f[k]), p);
  return std::pow(integrate(mag, f.grid()), 1.0 / p);
}

double l2_norm(const SampledSignal& f) {
  const auto w = trapezoid_weights(f.grid());
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += w[k] * std::norm(f[k]);
  return std::sqrt(acc);
}

double sup_norm(const SampledSignal& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double relative_l2_error(const SampledSignal& a, const SampledSignal& reference) {
  if (!a.grid().matches(reference.grid())) throw ContractError("relative_l2_error: grid mismatch");
  std::vector<cplx> diff(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) diff[k] = a[k] - reference[k];
  const double num = l2_norm(SampledSignal(a.grid(), std::move(diff)));
  const double den = l2_norm(reference);
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

double edge_fraction(std::span<const cplx> values) {
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0 || values.empty()) return 0.0;
  return std::max(std::abs(values.front()), std::abs(values.back())) / peak;
}

SampledSignal translate(const SampledSignal& f, double tau) {
  const std::size_t n = f.size();
  const double dt = f.grid().step();
  std::vector<cplx> spec(f.values().begin(), f.values().end());
  FftPlan plan(n);
  plan.transform(spec, FftDirection::forward);
  for (std::size_t k = 0; k < n; ++k) {
    // Signed bin index; the Nyquist bin of an even length gets the real part of its ramp.
    const auto sk = static_cast<double>(k <= n / 2 ? static_cast<long long>(k) : static_cast<long long>(k) - static_cast<long long>(n));
    const double omega = 2.0 * kPi * sk / (static_cast<double>(n) * dt);
    if (n % 2 == 0 && k == n / 2) {
      spec[k] *= std::cos(omega * tau);
    } else {
      spec[k] *= std::polar(1.0, -omega * tau);
    }
  }
  plan.transform(spec, FftDirection::inverse);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : spec) v *= inv_n;
  return {f.grid(), std::move(spec)};
}

SampledSignal reflect(const SampledSignal& f) {
  // Reversal samples f(c - t) with c = first + last; shifting by -c gives f(-t).
  std::vector<cplx> rev(f.values().rbegin(), f.values().rend());
  const double c = f.grid().start() + f.grid().last();
  SampledSignal reversed(f.grid(), std::move(rev));
  if (std::abs(c) <= 1e-12 * f.grid().step()) return reversed;
  return translate(reversed, -c);
}

}  // namespace qptk
