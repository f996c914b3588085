#include <cstdlib>
#include <stdexcept>
#include <string>

#include "egs/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace egs::simd {
namespace {

constexpr KernelTable kScalar{scalar::sum, scalar::dot, scalar::scale, scalar::add, scalar::affine};
#if defined(EGS_HAVE_AVX2)
constexpr KernelTable kAvx2{avx2::sum, avx2::dot, avx2::scale, avx2::add, avx2::affine};
#endif
#if defined(EGS_HAVE_NEON)
constexpr KernelTable kNeon{neon::sum, neon::dot, neon::scale, neon::add, neon::affine};
#endif

Isa detect() {
  if (const char* env = std::getenv("EGS_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && available(Isa::Avx2)) return Isa::Avx2;
    if (want == "neon" && available(Isa::Neon)) return Isa::Neon;
  }
  if (available(Isa::Avx2)) return Isa::Avx2;
  if (available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd kernel: span sizes differ");
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(EGS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(EGS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument("SIMD variant '" + std::string(to_string(isa)) + "' is not available");
  }
  switch (isa) {
#if defined(EGS_HAVE_AVX2)
    case Isa::Avx2: return kAvx2;
#endif
#if defined(EGS_HAVE_NEON)
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& active() { return kernels(active_isa()); }

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double dot(std::span<const double> x, std::span<const double> y) {
  check_sizes(x.size(), y.size());
  return active().dot(x.data(), y.data(), x.size());
}

void scale(std::span<double> x, double c) { active().scale(x.data(), x.size(), c); }

void add(std::span<const double> x, std::span<const double> y, std::span<double> out) {
  check_sizes(x.size(), y.size());
  check_sizes(x.size(), out.size());
  active().add(x.data(), y.data(), out.data(), x.size());
}

void affine(std::span<const double> x, double a, double b, std::span<double> out) {
  check_sizes(x.size(), out.size());
  active().affine(x.data(), a, b, out.data(), x.size());
}

}  // namespace egs::simd
