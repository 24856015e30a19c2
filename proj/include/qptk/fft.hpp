#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace qptk {

enum class FftDirection {
  forward,  ///< X[k] = sum_j x[j] exp(-2 pi i jk / n)
  inverse,  ///< X[k] = sum_j x[j] exp(+2 pi i jk / n), unnormalized
};

/// Reusable plan for one transform length. Radix-2 for powers of two,
/// Bluestein (chirp-z through a padded power-of-two transform) otherwise.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const noexcept { return n_; }
  void transform(std::span<std::complex<double>> data, FftDirection dir) const;

 private:
  struct Radix2;
  struct Bluestein;
  std::size_t n_;
  std::unique_ptr<Radix2> radix2_;
  std::unique_ptr<Bluestein> bluestein_;
};

}  // namespace qptk
