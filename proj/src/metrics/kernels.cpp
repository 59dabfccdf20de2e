#include "predict/metrics/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace predict::metrics::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "scalar";
}

#ifndef PREDICT_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#ifndef PREDICT_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif

namespace {

const KernelTable& choose() {
  const char* forced = std::getenv("PREDICT_SIMD");
  if (forced && std::string(forced) == "scalar") return scalar_table();
#ifdef PREDICT_HAVE_AVX2
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return *avx2_table();
#endif
#ifdef PREDICT_HAVE_NEON
  return *neon_table();  // always present on aarch64
#endif
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& t = choose();
  return t;
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), std::min(x.size(), y.size()));
}

double centered_dot(std::span<const double> x, std::span<const double> y, double mx, double my) {
  return active().centered_dot(x.data(), y.data(), std::min(x.size(), y.size()), mx, my);
}

double centered_sumsq(std::span<const double> x, double m) { return active().centered_sumsq(x.data(), x.size(), m); }

}  // namespace predict::metrics::kernels
