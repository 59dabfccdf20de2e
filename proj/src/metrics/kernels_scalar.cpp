#include "predict/metrics/kernels.hpp"

namespace predict::metrics::kernels {

namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double centered_dot_scalar(const double* x, const double* y, std::size_t n, double mx, double my) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
  return s;
}

double centered_sumsq_scalar(const double* x, std::size_t n, double m) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - m;
    s += d * d;
  }
  return s;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::scalar, sum_scalar, dot_scalar, centered_dot_scalar, centered_sumsq_scalar};
  return t;
}

}  // namespace predict::metrics::kernels
