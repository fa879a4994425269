#include "facet/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace facet::kernels {

namespace {

bool detect_simd() {
#if defined(FACET_WITH_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("FACET_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "simd") == 0 && detect_simd()) return Backend::simd;
  }
  return detect_simd() ? Backend::simd : Backend::scalar;
}

std::atomic<Backend> g_backend{initial_backend()};

bool use_simd(const SweepParams& p) {
  if (g_backend.load(std::memory_order_relaxed) != Backend::simd) return false;
  // sampled tables stay on the scalar path
  return p.m.kind != KineticSpec::Kind::sampled;
}

} // namespace

bool simd_supported() { return detect_simd(); }

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::simd && !detect_simd()) b = Backend::scalar;
  g_backend.store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  return b == Backend::simd ? "simd" : "scalar";
}

SweepStats lf_sweep_1d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p) {
#ifdef FACET_WITH_AVX2
  if (use_simd(p)) return simd::lf_sweep_1d(u, unew, sig, n, p);
#endif
  return scalar::lf_sweep_1d(u, unew, sig, n, p);
}

SweepStats lf_sweep_2d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p) {
#ifdef FACET_WITH_AVX2
  if (use_simd(p)) return simd::lf_sweep_2d(u, unew, sig, n, p);
#endif
  return scalar::lf_sweep_2d(u, unew, sig, n, p);
}

} // namespace facet::kernels
