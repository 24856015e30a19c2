#include "qptk/fft.hpp"

#include <bit>
#include <cmath>

#include "qptk/error.hpp"
#include "qptk/kernels.hpp"
#include "qptk/numerics.hpp"

namespace qptk {

// Iterative decimation-in-time. Twiddles for every stage are stored
// contiguously so each butterfly group is one call into the kernel table.
struct FftPlan::Radix2 {
  std::size_t n;
  std::vector<std::size_t> bit_reverse;
  std::vector<cplx> twiddles;  // stage with half-length h occupies [h - 1, 2h - 1)

  explicit Radix2(std::size_t size) : n(size), bit_reverse(size), twiddles(size > 1 ? size - 1 : 0) {
    const int bits = std::countr_zero(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      bit_reverse[i] = r;
    }
    for (std::size_t half = 1; half < n; half <<= 1) {
      for (std::size_t j = 0; j < half; ++j) {
        const double angle = -kPi * static_cast<double>(j) / static_cast<double>(half);
        twiddles[half - 1 + j] = {std::cos(angle), std::sin(angle)};
      }
    }
  }

  void run(std::span<cplx> data, FftDirection dir) const {
    for (std::size_t i = 0; i < n; ++i) {
      if (i < bit_reverse[i]) std::swap(data[i], data[bit_reverse[i]]);
    }
    const auto& k = kernels::active();
    std::vector<cplx> conj_tw;
    for (std::size_t half = 1; half < n; half <<= 1) {
      const cplx* tw = &twiddles[half - 1];
      if (dir == FftDirection::inverse) {
        conj_tw.assign(tw, tw + half);
        for (auto& w : conj_tw) w = std::conj(w);
        tw = conj_tw.data();
      }
      for (std::size_t block = 0; block < n; block += 2 * half) {
        k.butterfly(&data[block], &data[block + half], tw, half);
      }
    }
  }
};

// x_k chirp-weighted, convolved with the conjugate chirp via a padded radix-2 FFT.
struct FftPlan::Bluestein {
  std::size_t n;
  std::size_t m;
  Radix2 inner;
  std::vector<cplx> chirp;           // exp(-i pi k^2 / n)
  std::vector<cplx> filter_forward;  // FFT of conj(chirp), wrapped
  std::vector<cplx> filter_inverse;  // FFT of chirp, wrapped

  explicit Bluestein(std::size_t size)
      : n(size), m(std::bit_ceil(2 * size - 1)), inner(m), chirp(size), filter_forward(m), filter_inverse(m) {
    for (std::size_t k = 0; k < n; ++k) {
      // k^2 mod 2n keeps the angle small for large k.
      const auto k2 = static_cast<double>((k * k) % (2 * n));
      const double angle = -kPi * k2 / static_cast<double>(n);
      chirp[k] = {std::cos(angle), std::sin(angle)};
    }
    for (std::size_t k = 0; k < n; ++k) {
      filter_forward[k] = std::conj(chirp[k]);
      filter_inverse[k] = chirp[k];
      if (k > 0) {
        filter_forward[m - k] = std::conj(chirp[k]);
        filter_inverse[m - k] = chirp[k];
      }
    }
    inner.run(filter_forward, FftDirection::forward);
    inner.run(filter_inverse, FftDirection::forward);
  }

  void run(std::span<cplx> data, FftDirection dir) const {
    const auto& k = kernels::active();
    const bool fwd = dir == FftDirection::forward;
    std::vector<cplx> work(m, cplx{});
    if (fwd) {
      k.mul(data.data(), chirp.data(), work.data(), n);
    } else {
      k.mul_conj(data.data(), chirp.data(), work.data(), n);
    }
    inner.run(work, FftDirection::forward);
    k.mul(work.data(), fwd ? filter_forward.data() : filter_inverse.data(), work.data(), m);
    inner.run(work, FftDirection::inverse);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx c = fwd ? chirp[j] : std::conj(chirp[j]);
      data[j] = work[j] * c * inv_m;
    }
  }
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw ContractError("FFT length must be positive");
  if (std::has_single_bit(n)) {
    radix2_ = std::make_unique<Radix2>(n);
  } else {
    bluestein_ = std::make_unique<Bluestein>(n);
  }
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::transform(std::span<std::complex<double>> data, FftDirection dir) const {
  if (data.size() != n_) throw ContractError("FFT buffer length does not match plan");
  if (radix2_) {
    radix2_->run(data, dir);
  } else {
    bluestein_->run(data, dir);
  }
}

}  // namespace qptk
