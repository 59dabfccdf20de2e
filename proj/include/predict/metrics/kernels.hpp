#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Reduction kernels behind the statistics and similarity code. The scalar
// versions are the reference; vector versions must agree with them up to
// floating-point reassociation.
namespace predict::metrics::kernels {

enum class Isa { scalar, avx2, neon };
std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum (x_i - mx)(y_i - my)
  double (*centered_dot)(const double* x, const double* y, std::size_t n, double mx, double my);
  // sum (x_i - m)^2
  double (*centered_sumsq)(const double* x, std::size_t n, double m);
};

const KernelTable& scalar_table();
// nullptr when not built for this architecture.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Best table the CPU supports, chosen once. PREDICT_SIMD=scalar in the
/// environment forces the reference kernels.
const KernelTable& active();

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double centered_dot(std::span<const double> x, std::span<const double> y, double mx, double my);
double centered_sumsq(std::span<const double> x, double m);

}  // namespace predict::metrics::kernels
