#include <atomic>
#include <string>

#include "backends.hpp"
#include "robfrechet/errors.hpp"

namespace robfrechet::kernels {
namespace {

Backend best_backend() noexcept {
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

std::atomic<Backend>& active() noexcept {
  static std::atomic<Backend> backend{best_backend()};
  return backend;
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    fail(ErrorCode::DimensionMismatch,
         "kernel operands differ in length: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

std::string_view backend_name(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if ROBFRECHET_HAVE_AVX2
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if ROBFRECHET_HAVE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend backend) {
  if (!backend_available(backend)) {
    fail(ErrorCode::InvalidArgument,
         "kernel backend '" + std::string(backend_name(backend)) + "' is not available");
  }
  switch (backend) {
#if ROBFRECHET_HAVE_AVX2
    case Backend::Avx2: return detail::avx2_table;
#endif
#if ROBFRECHET_HAVE_NEON
    case Backend::Neon: return detail::neon_table;
#endif
    default: return detail::scalar_table;
  }
}

Backend active_backend() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
  (void)table(backend);
  active().store(backend, std::memory_order_relaxed);
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  return table(active_backend()).sum_sq_diff(a.data(), b.data(), a.size());
}

double weighted_sum_sq_diff(std::span<const double> a, std::span<const double> b,
                            std::span<const double> w) {
  require_same_size(a.size(), b.size());
  require_same_size(a.size(), w.size());
  return table(active_backend()).weighted_sum_sq_diff(a.data(), b.data(), w.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size());
  table(active_backend()).axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> y) {
  table(active_backend()).scale(alpha, y.data(), y.size());
}

}  // namespace robfrechet::kernels
