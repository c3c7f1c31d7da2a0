#include <atomic>
#include <cstdlib>
#include <cstring>

#include "gaugelab/core/error.hpp"
#include "gaugelab/simd/kernels.hpp"

namespace gaugelab::simd {

namespace {

constexpr KernelTable kScalarTable{&scalar::stencil_apply, &scalar::dot, &scalar::axpy, &scalar::mul};
constexpr KernelTable kAvx2Table{&avx2::stencil_apply, &avx2::dot, &avx2::axpy, &avx2::mul};

Isa detect() {
  if (const char* forced = std::getenv("GAUGELAB_ISA")) {
    if (std::strcmp(forced, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(forced, "avx2") == 0 && cpu_supports_avx2()) return Isa::avx2;
  }
  return cpu_supports_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_supports_avx2()) throw InvalidInput("AVX2/FMA not available on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& kernels() { return active_isa() == Isa::avx2 ? kAvx2Table : kScalarTable; }

void stencil_apply(const StencilView& s, std::span<const cplx> in, std::span<cplx> out) {
  if (in.size() != s.nx * s.ny || out.size() != in.size()) throw InvalidInput("stencil_apply: size mismatch");
  kernels().stencil_apply(s, in.data(), out.data());
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw InvalidInput("dot: size mismatch");
  return kernels().dot(a.data(), b.data(), a.size());
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size()) throw InvalidInput("axpy: size mismatch");
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

void mul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  if (a.size() != b.size() || out.size() != a.size()) throw InvalidInput("mul: size mismatch");
  kernels().mul(a.data(), b.data(), out.data(), a.size());
}

double norm_squared(std::span<const cplx> a) { return dot(a, a).real(); }

}  // namespace gaugelab::simd
