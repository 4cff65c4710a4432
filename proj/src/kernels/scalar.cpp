#include "backends.hpp"

namespace robfrechet::kernels::detail {
namespace {

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

double weighted_sum_sq_diff_scalar(const double* a, const double* b, const double* w,
                                   std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += w[k] * (d * d);
  }
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

void scale_scalar(double alpha, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] *= alpha;
}

}  // namespace

const KernelTable scalar_table{
    sum_sq_diff_scalar,
    weighted_sum_sq_diff_scalar,
    axpy_scalar,
    scale_scalar,
};

}  // namespace robfrechet::kernels::detail
