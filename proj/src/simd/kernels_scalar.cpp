#include "gaugelab/simd/kernels.hpp"

namespace gaugelab::simd::scalar {

namespace {
// Plain real arithmetic; keeps the reference free of the libgcc NaN path.
inline cplx mul1(const cplx& a, const cplx& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
}  // namespace

void stencil_apply(const StencilView& s, const cplx* in, cplx* out) {
  const std::size_t nx = s.nx, ny = s.ny;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const std::size_t i = ix + nx * iy;
      cplx acc = mul1(s.diag[i], in[i]);
      if (ix > 0) acc += mul1(s.dn_x[i], in[i - 1]);
      if (ix + 1 < nx) acc += mul1(s.up_x[i], in[i + 1]);
      if (ny > 1) {
        if (iy > 0) acc += mul1(s.dn_y[i], in[i - nx]);
        if (iy + 1 < ny) acc += mul1(s.up_y[i], in[i + nx]);
      }
      out[i] = acc;
    }
  }
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += mul1(alpha, x[i]);
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mul1(a[i], b[i]);
}

}  // namespace gaugelab::simd::scalar
