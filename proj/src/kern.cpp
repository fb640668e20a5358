#include "pinlab/kern.hpp"

#include <cassert>

namespace pinlab {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double sum_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += v[i];
  return acc;
}

}  // namespace detail

namespace {

struct KernTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sqdist)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
};

constexpr KernTable kScalar{detail::dot_scalar, detail::squared_distance_scalar,
                            detail::sum_scalar};
#if defined(PINLAB_BUILD_AVX2)
constexpr KernTable kAvx2{detail::dot_avx2, detail::squared_distance_avx2,
                          detail::sum_avx2};
#endif

bool avx2_supported() {
#if defined(PINLAB_BUILD_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

KernBackend g_backend = KernBackend::AUTO;
const KernTable* g_table = nullptr;

const KernTable* resolve(KernBackend want, KernBackend& effective) {
#if defined(PINLAB_BUILD_AVX2)
  const bool have = avx2_supported();
  if (want == KernBackend::AVX2 && have) {
    effective = KernBackend::AVX2;
    return &kAvx2;
  }
  if (want == KernBackend::AUTO && have) {
    effective = KernBackend::AVX2;
    return &kAvx2;
  }
#else
  (void)avx2_supported;
#endif
  effective = KernBackend::SCALAR;
  return &kScalar;
}

const KernTable& table() {
  if (!g_table) {
    KernBackend effective;
    g_table = resolve(g_backend, effective);
    g_backend = effective;
  }
  return *g_table;
}

}  // namespace

KernBackend set_kern_backend(KernBackend want) {
  KernBackend effective;
  g_table = resolve(want, effective);
  g_backend = effective;
  return g_backend;
}

KernBackend active_kern_backend() {
  table();
  return g_backend;
}

double kern_dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return table().dot(a.data(), b.data(), a.size());
}

double kern_squared_distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return table().sqdist(a.data(), b.data(), a.size());
}

double kern_sum(std::span<const double> v) { return table().sum(v.data(), v.size()); }

}  // namespace pinlab
