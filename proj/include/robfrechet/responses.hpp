#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "robfrechet/metric.hpp"

namespace robfrechet {

enum class ResponseKind { Matrix, Distribution };

// A homogeneous sample of n responses stored as an n x width row-major
// buffer. Matrices flatten to their q*q row-major entries; quantile functions
// to their values on a shared grid. Both metrics are then weighted Euclidean
// norms on rows, which is what the fit loop works with.
class ResponseSet {
 public:
  static ResponseSet from_objects(std::span<const MetricObject> objects);
  // `values` holds n*dim*dim entries; each row is validated as a SymMatrix.
  static ResponseSet matrices(std::size_t dim, std::vector<double> values);
  // `values` holds n*grid.size() entries; each row must be non-decreasing.
  static ResponseSet distributions(QuantileGrid grid, std::vector<double> values);

  ResponseKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return count_; }
  std::size_t width() const noexcept { return width_; }
  // Matrix dimension q; zero for distributions.
  std::size_t dim() const noexcept { return dim_; }
  // Only meaningful for distributions.
  const std::optional<QuantileGrid>& grid() const noexcept { return grid_; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * width_, width_);
  }
  std::span<const double> values() const noexcept { return values_; }

  MetricObject object(std::size_t i) const;
  std::vector<MetricObject> objects() const;
  // Wraps a flat value row (validated) as a response of this set's kind.
  MetricObject make_object(std::vector<double> row_values) const;
  // Flattens an object of the matching kind and shape.
  std::vector<double> flatten(const MetricObject& object) const;

  double squared_distance(std::span<const double> a, std::span<const double> b) const;
  double distance(std::span<const double> a, std::span<const double> b) const;
  // d^2(Y_i, u) for every row.
  void squared_distances_to(std::span<const double> u, std::span<double> out) const;

  // Closed-form weighted Frechet mean sum_i c_i Y_i / sum_i c_i, projected back
  // onto monotone quantile functions for distributions. Throws
  // NearSingularDenominator when |sum_i c_i| <= kDenominatorGuard.
  std::vector<double> weighted_mean(std::span<const double> coeffs) const;

  ResponseSet subset(std::span<const std::size_t> indices) const;
  // Adds `shift` to every value of the listed rows.
  ResponseSet shifted(std::span<const std::size_t> indices, double shift) const;

 private:
  ResponseSet(ResponseKind kind, std::size_t dim, std::optional<QuantileGrid> grid,
              std::size_t width, std::vector<double> values);

  ResponseKind kind_;
  std::size_t dim_;
  std::optional<QuantileGrid> grid_;
  std::size_t width_;
  std::size_t count_;
  std::vector<double> values_;
};

}  // namespace robfrechet
