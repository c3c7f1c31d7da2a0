#pragma once

// Data-parallel inner loops of the grid solvers. Every kernel has a portable
// scalar reference implementation and an AVX2/FMA variant; the variant is
// chosen once per process from the CPU features (override with the
// environment variable GAUGELAB_ISA=scalar|avx2, or set_isa() in tests).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace gaugelab::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Nearest-neighbour complex stencil on an nx-by-ny row-major grid (ny == 1
/// for a line). Row i of the operator reads
///   diag[i] v[i] + up_x[i] v[i+1] + dn_x[i] v[i-1] + up_y[i] v[i+nx] + dn_y[i] v[i-nx]
/// with neighbours across the outer boundary treated as zero (Dirichlet).
/// up_y / dn_y may be null when ny == 1.
struct StencilView {
  std::size_t nx = 0;
  std::size_t ny = 1;
  const cplx* diag = nullptr;
  const cplx* up_x = nullptr;
  const cplx* dn_x = nullptr;
  const cplx* up_y = nullptr;
  const cplx* dn_y = nullptr;
};

struct KernelTable {
  void (*stencil_apply)(const StencilView&, const cplx* in, cplx* out);
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);  // sum conj(a_i) b_i
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  void (*mul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
};

namespace scalar {
void stencil_apply(const StencilView& s, const cplx* in, cplx* out);
cplx dot(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
void stencil_apply(const StencilView& s, const cplx* in, cplx* out);
cplx dot(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
}  // namespace avx2

bool cpu_supports_avx2();
Isa active_isa();
/// Forces an ISA. Requesting avx2 on a CPU without it throws InvalidInput.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);
const KernelTable& kernels();

// Convenience wrappers over the active table.
void stencil_apply(const StencilView& s, std::span<const cplx> in, std::span<cplx> out);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void mul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
double norm_squared(std::span<const cplx> a);

}  // namespace gaugelab::simd
