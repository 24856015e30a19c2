#pragma once

// Data-parallel complex kernels behind every transform inner loop.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The active table is chosen once at startup from CPUID and
// may be overridden with QPTK_SIMD=scalar|avx2 or select_kernels().

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace qptk::kernels {

using cplx = std::complex<double>;

enum class Level { scalar, avx2 };

struct Table {
  Level level;
  /// sum_i x[i] * y[i]
  cplx (*dot)(const cplx* x, const cplx* y, std::size_t n);
  /// sum_i x[i] * conj(y[i])
  cplx (*dot_conj)(const cplx* x, const cplx* y, std::size_t n);
  /// out[i] = x[i] * y[i]; out may alias x or y
  void (*mul)(const cplx* x, const cplx* y, cplx* out, std::size_t n);
  /// out[i] = x[i] * conj(y[i]); out may alias x or y
  void (*mul_conj)(const cplx* x, const cplx* y, cplx* out, std::size_t n);
  /// out[i] = x[i] * w[i] for real weights w
  void (*scale_real)(const cplx* x, const double* w, cplx* out, std::size_t n);
  /// sum_i |x[i]|^2
  double (*norm_sq)(const cplx* x, std::size_t n);
  /// radix-2 butterfly: t = bottom[j] * twiddle[j]; bottom[j] = top[j] - t; top[j] += t
  void (*butterfly)(cplx* top, cplx* bottom, const cplx* twiddle, std::size_t n);
};

const Table& scalar_table() noexcept;
/// nullptr when the AVX2 variant was not built or the CPU lacks AVX2/FMA.
const Table* avx2_table() noexcept;

/// Table used by the library.
const Table& active() noexcept;

/// Force a level. Returns false (and leaves the selection unchanged) if unavailable.
bool select_kernels(Level level) noexcept;

std::vector<Level> available_levels();
std::string_view level_name(Level level) noexcept;

}  // namespace qptk::kernels
