#pragma once

// Data-parallel inner loops of the empirical estimator. Every kernel has a
// scalar reference and, where the target supports it, an AVX2 (x86-64) or
// NEON (AArch64) variant. The variant is picked once at first use from the
// CPU features; EGS_SIMD=scalar|avx2|neon in the environment overrides it.

#include <cstddef>
#include <span>
#include <string_view>

namespace egs::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// x[i] *= c
  void (*scale)(double* x, std::size_t n, double c);
  /// out[i] = x[i] + y[i]
  void (*add)(const double* x, const double* y, double* out, std::size_t n);
  /// out[i] = a + b * x[i]
  void (*affine)(const double* x, double a, double b, double* out, std::size_t n);
};

/// Compiled in and supported by the running CPU.
bool available(Isa isa);
/// Throws std::invalid_argument when `isa` is not available.
const KernelTable& kernels(Isa isa);
Isa active_isa();
const KernelTable& active();

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
void scale(std::span<double> x, double c);
void add(std::span<const double> x, std::span<const double> y, std::span<double> out);
void affine(std::span<const double> x, double a, double b, std::span<double> out);

}  // namespace egs::simd
