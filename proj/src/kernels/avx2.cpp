// Built with -mavx2 only (no -mfma): the elementwise kernels must round exactly
// like the scalar reference, so products and sums stay unfused.

#include <immintrin.h>

#include "backends.hpp"

namespace robfrechet::kernels::detail {
namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
  }
  for (; k + 4 <= n; k += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

double weighted_sum_sq_diff_avx2(const double* a, const double* b, const double* w,
                                 std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(w + k), _mm256_mul_pd(d0, d0)));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(w + k + 4), _mm256_mul_pd(d1, d1)));
  }
  for (; k + 4 <= n; k += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(w + k), _mm256_mul_pd(d0, d0)));
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += w[k] * (d * d);
  }
  return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + k));
    _mm256_storeu_pd(y + k, _mm256_add_pd(_mm256_loadu_pd(y + k), prod));
  }
  for (; k < n; ++k) y[k] += alpha * x[k];
}

void scale_avx2(double alpha, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(y + k, _mm256_mul_pd(_mm256_loadu_pd(y + k), va));
  }
  for (; k < n; ++k) y[k] *= alpha;
}

}  // namespace

const KernelTable avx2_table{
    sum_sq_diff_avx2,
    weighted_sum_sq_diff_avx2,
    axpy_avx2,
    scale_avx2,
};

}  // namespace robfrechet::kernels::detail
