#include "qptk/kernels.hpp"

namespace qptk::kernels {
namespace {

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
  }
  return {re, im};
}

void mul(const cplx* x, const cplx* y, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    const double im = x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    out[i] = {re, im};
  }
}

void mul_conj(const cplx* x, const cplx* y, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    const double im = x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
    out[i] = {re, im};
  }
}

void scale_real(const cplx* x, const double* w, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = {x[i].real() * w[i], x[i].imag() * w[i]};
}

double norm_sq(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

void butterfly(cplx* top, cplx* bottom, const cplx* twiddle, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double tr = bottom[j].real() * twiddle[j].real() - bottom[j].imag() * twiddle[j].imag();
    const double ti = bottom[j].real() * twiddle[j].imag() + bottom[j].imag() * twiddle[j].real();
    const cplx u = top[j];
    bottom[j] = {u.real() - tr, u.imag() - ti};
    top[j] = {u.real() + tr, u.imag() + ti};
  }
}

}  // namespace

const Table& scalar_table() noexcept {
  static const Table table{Level::scalar, dot, dot_conj, mul, mul_conj, scale_real, norm_sq, butterfly};
  return table;
}

}  // namespace qptk::kernels
