#pragma once

#include <cstddef>

namespace egs::simd {

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void scale(double* x, std::size_t n, double c);
void add(const double* x, const double* y, double* out, std::size_t n);
void affine(const double* x, double a, double b, double* out, std::size_t n);
}  // namespace scalar

#if defined(EGS_HAVE_AVX2)
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void scale(double* x, std::size_t n, double c);
void add(const double* x, const double* y, double* out, std::size_t n);
void affine(const double* x, double a, double b, double* out, std::size_t n);
}  // namespace avx2
#endif

#if defined(EGS_HAVE_NEON)
namespace neon {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void scale(double* x, std::size_t n, double c);
void add(const double* x, const double* y, double* out, std::size_t n);
void affine(const double* x, double a, double b, double* out, std::size_t n);
}  // namespace neon
#endif

}  // namespace egs::simd
