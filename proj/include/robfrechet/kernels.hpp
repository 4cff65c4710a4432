#pragma once

// Data-parallel inner loops shared by both metrics. Every backend implements
// the same four kernels; `scalar` is the reference the vector variants are
// tested against.

#include <cstddef>
#include <span>
#include <string_view>

namespace robfrechet::kernels {

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
  // sum_k (a_k - b_k)^2
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
  // sum_k w_k (a_k - b_k)^2
  double (*weighted_sum_sq_diff)(const double* a, const double* b, const double* w,
                                 std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y *= alpha
  void (*scale)(double alpha, double* y, std::size_t n);
};

std::string_view backend_name(Backend backend) noexcept;

// True when the backend was compiled in and the running CPU supports it.
bool backend_available(Backend backend) noexcept;

// Throws InvalidArgument for an unavailable backend.
const KernelTable& table(Backend backend);

// The backend used by the span wrappers below. Defaults to the widest
// available one; tests switch it to compare against the scalar reference.
Backend active_backend() noexcept;
void set_active_backend(Backend backend);

double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double weighted_sum_sq_diff(std::span<const double> a, std::span<const double> b,
                            std::span<const double> w);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> y);

}  // namespace robfrechet::kernels
