#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qptk {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Uniform axis: point(k) = start + k * step for 0 <= k < count.
class Grid {
 public:
  Grid(double start, double step, std::size_t count);

  /// `count` points from `lo` to `hi` inclusive.
  static Grid closed(double lo, double hi, std::size_t count);
  /// `count` points starting at `lo` with step (hi - lo) / count (hi excluded).
  static Grid half_open(double lo, double hi, std::size_t count);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }
  double point(std::size_t k) const noexcept { return start_ + static_cast<double>(k) * step_; }
  double last() const noexcept { return point(count_ - 1); }
  /// Largest |t| over the grid.
  double max_abs() const noexcept;
  std::vector<double> points() const;

  /// Same axis up to floating noise (start within 1e-9 steps, step within 1e-12 relative).
  bool matches(const Grid& other) const noexcept;

  bool operator==(const Grid&) const = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

/// Complex samples on a uniform grid. All values finite.
class SampledSignal {
 public:
  SampledSignal(Grid grid, std::vector<cplx> values);
  /// All-zero signal on `grid`.
  explicit SampledSignal(Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const cplx& operator[](std::size_t k) const noexcept { return values_[k]; }

  SampledSignal scaled(cplx factor) const;

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

/// Composite trapezoid rule over the grid span.
cplx integrate(std::span<const cplx> values, const Grid& grid);
double integrate(std::span<const double> values, const Grid& grid);

/// Trapezoid weights (step, with halves at both ends).
std::vector<double> trapezoid_weights(const Grid& grid);

/// <f, g> = integral of f * conj(g).
cplx inner_product(const SampledSignal& f, const SampledSignal& g);

/// (integral |f|^p)^(1/p) for p >= 1.
double lp_norm(const SampledSignal& f, double p);
double l2_norm(const SampledSignal& f);
double sup_norm(const SampledSignal& f);

/// ||a - b||_2 / ||b||_2 on a shared grid (0 if both vanish).
double relative_l2_error(const SampledSignal& a, const SampledSignal& reference);

/// max(|v[0]|, |v[n-1]|) / max |v|; 0 for the zero signal.
double edge_fraction(std::span<const cplx> values);

/// Digamma at 1/4, i.e. -gamma - pi/2 - 3 ln 2.
constexpr double digamma_quarter() { return -4.2274535333762654; }

/// f(t - tau) by band-limited (FFT phase ramp) interpolation; f must vanish at the grid edges.
SampledSignal translate(const SampledSignal& f, double tau);

/// f(-t) on the same grid.
SampledSignal reflect(const SampledSignal& f);

}  // namespace qptk
