// AVX2/FMA variants of the complex kernels. Compiled with -mavx2 -mfma and only
// reached through the dispatch table after a CPUID check.

#include <immintrin.h>

#include "qptk/kernels.hpp"

namespace qptk::kernels {
namespace {

// Two interleaved complex<double> per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline double lane_sum(__m256d v, int lane) {
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, v);
  return tmp[lane] + tmp[lane + 2];
}

// x * y per complex lane.
inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d y_re = _mm256_movedup_pd(y);
  const __m256d y_im = _mm256_permute_pd(y, 0xF);
  const __m256d x_sw = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(x, y_re, _mm256_mul_pd(x_sw, y_im));
}

// x * conj(y) per complex lane.
inline __m256d cmul_conj(__m256d x, __m256d y) {
  const __m256d y_re = _mm256_movedup_pd(y);
  const __m256d y_im = _mm256_permute_pd(y, 0xF);
  const __m256d x_sw = _mm256_permute_pd(x, 0x5);
  return _mm256_fmsubadd_pd(x, y_re, _mm256_mul_pd(x_sw, y_im));
}

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  // acc_a collects [xr*yr, xi*yr], acc_b collects [xi*yi, xr*yi].
  __m256d acc_a = _mm256_setzero_pd();
  __m256d acc_b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    acc_a = _mm256_fmadd_pd(xv, _mm256_movedup_pd(yv), acc_a);
    acc_b = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), _mm256_permute_pd(yv, 0xF), acc_b);
  }
  double re = lane_sum(acc_a, 0) - lane_sum(acc_b, 0);
  double im = lane_sum(acc_a, 1) + lane_sum(acc_b, 1);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc_a = _mm256_setzero_pd();
  __m256d acc_b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    acc_a = _mm256_fmadd_pd(xv, _mm256_movedup_pd(yv), acc_a);
    acc_b = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), _mm256_permute_pd(yv, 0xF), acc_b);
  }
  double re = lane_sum(acc_a, 0) + lane_sum(acc_b, 0);
  double im = lane_sum(acc_a, 1) - lane_sum(acc_b, 1);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
  }
  return {re, im};
}

void mul(const cplx* x, const cplx* y, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, cmul(load2(x + i), load2(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

void mul_conj(const cplx* x, const cplx* y, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, cmul_conj(load2(x + i), load2(y + i)));
  for (; i < n; ++i) out[i] = x[i] * std::conj(y[i]);
}

void scale_real(const cplx* x, const double* w, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + i)), 0x50);
    store2(out + i, _mm256_mul_pd(load2(x + i), wv));
  }
  for (; i < n; ++i) out[i] = {x[i].real() * w[i], x[i].imag() * w[i]};
}

double norm_sq(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = lane_sum(acc, 0) + lane_sum(acc, 1);
  for (; i < n; ++i) total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return total;
}

void butterfly(cplx* top, cplx* bottom, const cplx* twiddle, std::size_t n) {
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d t = cmul(load2(bottom + j), load2(twiddle + j));
    const __m256d u = load2(top + j);
    store2(bottom + j, _mm256_sub_pd(u, t));
    store2(top + j, _mm256_add_pd(u, t));
  }
  for (; j < n; ++j) {
    const cplx t = bottom[j] * twiddle[j];
    bottom[j] = top[j] - t;
    top[j] += t;
  }
}

}  // namespace

const Table& avx2_table_unchecked() noexcept {
  static const Table table{Level::avx2, dot, dot_conj, mul, mul_conj, scale_real, norm_sq, butterfly};
  return table;
}

}  // namespace qptk::kernels
