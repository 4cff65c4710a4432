#include <arm_neon.h>

#include "backends.hpp"

namespace robfrechet::kernels::detail {
namespace {

double sum_sq_diff_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(a + k), vld1q_f64(b + k));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
    acc0 = vaddq_f64(acc0, vmulq_f64(d0, d0));
    acc1 = vaddq_f64(acc1, vmulq_f64(d1, d1));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

double weighted_sum_sq_diff_neon(const double* a, const double* b, const double* w,
                                 std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(a + k), vld1q_f64(b + k));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
    acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(w + k), vmulq_f64(d0, d0)));
    acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(w + k + 2), vmulq_f64(d1, d1)));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += w[k] * (d * d);
  }
  return acc;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    vst1q_f64(y + k, vaddq_f64(vld1q_f64(y + k), vmulq_f64(va, vld1q_f64(x + k))));
  }
  for (; k < n; ++k) y[k] += alpha * x[k];
}

void scale_neon(double alpha, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(y + k, vmulq_f64(vld1q_f64(y + k), va));
  for (; k < n; ++k) y[k] *= alpha;
}

}  // namespace

const KernelTable neon_table{
    sum_sq_diff_neon,
    weighted_sum_sq_diff_neon,
    axpy_neon,
    scale_neon,
};

}  // namespace robfrechet::kernels::detail
