#pragma once

// Response spaces: symmetric matrices under the Frobenius metric and
// one-dimensional distributions, represented by quantile functions on a fixed
// grid, under the L2-Wasserstein metric. Both admit closed-form weighted
// Frechet means.

#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace robfrechet {

// |sum of coefficients| at or below this is treated as a singular weighted mean.
inline constexpr double kDenominatorGuard = 1e-10;
// Matrices farther than this from symmetric are rejected.
inline constexpr double kSymmetryTolerance = 1e-8;

class SymMatrix {
 public:
  // Empty 0x0 placeholder.
  SymMatrix() = default;

  // Row-major entries. Asymmetry within `tolerance` is removed by averaging
  // with the transpose; anything larger throws InvariantError.
  static SymMatrix from_row_major(std::size_t dim, std::vector<double> entries,
                                  double tolerance = kSymmetryTolerance);
  static SymMatrix identity(std::size_t dim);
  static SymMatrix ones(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const double> values() const noexcept { return entries_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  SymMatrix(std::size_t dim, std::vector<double> entries)
      : dim_(dim), entries_(std::move(entries)) {}

  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

// Strictly increasing quantile levels in (0,1) together with the trapezoid
// integration weights over [first level, last level]. Copies share storage.
class QuantileGrid {
 public:
  explicit QuantileGrid(std::vector<double> levels);

  // first + step*j for j = 0..count-1
  static QuantileGrid uniform(double first, double step, std::size_t count);
  // 0.10, 0.11, ..., 0.90 (81 levels)
  static const QuantileGrid& standard();

  std::size_t size() const noexcept { return data_->levels.size(); }
  std::span<const double> levels() const noexcept { return data_->levels; }
  std::span<const double> weights() const noexcept { return data_->weights; }

  friend bool operator==(const QuantileGrid& a, const QuantileGrid& b) noexcept {
    return a.data_ == b.data_ || a.data_->levels == b.data_->levels;
  }

 private:
  struct Data {
    std::vector<double> levels;
    std::vector<double> weights;
  };
  std::shared_ptr<const Data> data_;
};

class QuantileFunction {
 public:
  // Values must be finite and non-decreasing; throws InvariantError otherwise.
  QuantileFunction(QuantileGrid grid, std::vector<double> values);

  const QuantileGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const QuantileFunction& a, const QuantileFunction& b) {
    return a.grid_ == b.grid_ && a.values_ == b.values_;
  }

 private:
  QuantileGrid grid_;
  std::vector<double> values_;
};

using MetricObject = std::variant<SymMatrix, QuantileFunction>;

double frobenius_distance(const SymMatrix& a, const SymMatrix& b);
double wasserstein_distance(const QuantileFunction& a, const QuantileFunction& b);
// Dispatches on the variant; mixing kinds is an InvalidArgument.
double distance(const MetricObject& a, const MetricObject& b);

// sum_i c_i Y_i / sum_i c_i. Individual coefficients may be negative.
SymMatrix weighted_mean_matrix(std::span<const SymMatrix> objects,
                               std::span<const double> coeffs);
// Coefficient-weighted average of the quantile values followed by the
// isotonic projection under the grid's integration weights.
QuantileFunction weighted_mean_quantile(std::span<const QuantileFunction> objects,
                                        std::span<const double> coeffs);

// Weighted least-squares projection onto non-decreasing sequences (pool
// adjacent violators). Weights must be positive.
std::vector<double> isotonic_projection(std::span<const double> values,
                                        std::span<const double> weights);

}  // namespace robfrechet
