#pragma once

#include <cstddef>
#include <span>

// Arithmetic inner loops shared by the statistics and learning code.
// Each kernel has a scalar reference implementation and, on x86_64 builds
// with AVX2 available, a vectorized variant. Dispatch happens once at
// first use; set_kern_backend can force the scalar path (the equivalence
// tests rely on that).

namespace pinlab {

enum class KernBackend { AUTO, SCALAR, AVX2 };

// Returns the backend actually in effect after resolution.
KernBackend set_kern_backend(KernBackend want);
KernBackend active_kern_backend();

double kern_dot(std::span<const double> a, std::span<const double> b);
double kern_squared_distance(std::span<const double> a, std::span<const double> b);
double kern_sum(std::span<const double> v);

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
double squared_distance_scalar(const double* a, const double* b, std::size_t n);
double sum_scalar(const double* v, std::size_t n);
#if defined(PINLAB_BUILD_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
double squared_distance_avx2(const double* a, const double* b, std::size_t n);
double sum_avx2(const double* v, std::size_t n);
#endif
}  // namespace detail

}  // namespace pinlab
