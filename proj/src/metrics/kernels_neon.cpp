#include <arm_neon.h>

#include "predict/metrics/kernels.hpp"

namespace predict::metrics::kernels {

namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0), a1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vaddq_f64(a0, vld1q_f64(x + i));
    a1 = vaddq_f64(a1, vld1q_f64(x + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0), a1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vfmaq_f64(a0, vld1q_f64(x + i), vld1q_f64(y + i));
    a1 = vfmaq_f64(a1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double centered_dot_neon(const double* x, const double* y, std::size_t n, double mx, double my) {
  const float64x2_t vx = vdupq_n_f64(mx), vy = vdupq_n_f64(my);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vsubq_f64(vld1q_f64(x + i), vx), vsubq_f64(vld1q_f64(y + i), vy));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
  return s;
}

double centered_sumsq_neon(const double* x, std::size_t n, double m) {
  const float64x2_t vm = vdupq_n_f64(m);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vm);
    acc = vfmaq_f64(acc, d, d);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += (x[i] - m) * (x[i] - m);
  return s;
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable t{Isa::neon, sum_neon, dot_neon, centered_dot_neon, centered_sumsq_neon};
  return &t;
}

}  // namespace predict::metrics::kernels
