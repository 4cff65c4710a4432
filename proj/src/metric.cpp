#include "robfrechet/metric.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "robfrechet/errors.hpp"
#include "robfrechet/kernels.hpp"

namespace robfrechet {
namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      fail(ErrorCode::InvariantError, fmt::format("{}: entry {} is not finite", what, k));
    }
  }
}

double checked_denominator(std::span<const double> coeffs) {
  double total = 0.0;
  for (double c : coeffs) total += c;
  if (!(std::abs(total) > kDenominatorGuard)) {
    fail(ErrorCode::NearSingularDenominator,
         fmt::format("weighted mean: coefficient sum {:.17g} is within {:g} of zero", total,
                     kDenominatorGuard));
  }
  return total;
}

}  // namespace

// --- SymMatrix ------------------------------------------------------------

SymMatrix SymMatrix::from_row_major(std::size_t dim, std::vector<double> entries,
                                    double tolerance) {
  if (dim == 0) fail(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  if (entries.size() != dim * dim) {
    fail(ErrorCode::ShapeError,
         fmt::format("expected {} entries for a {}x{} matrix, got {}", dim * dim, dim, dim,
                     entries.size()));
  }
  require_finite(entries, "matrix");
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = j + 1; k < dim; ++k) {
      double& upper = entries[j * dim + k];
      double& lower = entries[k * dim + j];
      if (std::abs(upper - lower) > tolerance) {
        fail(ErrorCode::InvariantError,
             fmt::format("matrix is not symmetric at ({}, {}): {:.17g} vs {:.17g}", j, k, upper,
                         lower));
      }
      if (upper != lower) {
        const double avg = 0.5 * (upper + lower);
        upper = avg;
        lower = avg;
      }
    }
  }
  return SymMatrix(dim, std::move(entries));
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  std::vector<double> entries(dim * dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) entries[j * dim + j] = 1.0;
  return from_row_major(dim, std::move(entries));
}

SymMatrix SymMatrix::ones(std::size_t dim) {
  return from_row_major(dim, std::vector<double>(dim * dim, 1.0));
}

// --- QuantileGrid ---------------------------------------------------------

QuantileGrid::QuantileGrid(std::vector<double> levels) {
  if (levels.size() < 2) fail(ErrorCode::InvalidArgument, "quantile grid needs at least 2 levels");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!(levels[k] > 0.0 && levels[k] < 1.0)) {
      fail(ErrorCode::InvariantError,
           fmt::format("quantile level {} = {:.17g} is outside (0,1)", k, levels[k]));
    }
    if (k > 0 && !(levels[k] > levels[k - 1])) {
      fail(ErrorCode::InvariantError,
           fmt::format("quantile levels are not strictly increasing at {}", k));
    }
  }
  const std::size_t m = levels.size();
  std::vector<double> weights(m);
  weights[0] = 0.5 * (levels[1] - levels[0]);
  weights[m - 1] = 0.5 * (levels[m - 1] - levels[m - 2]);
  for (std::size_t k = 1; k + 1 < m; ++k) weights[k] = 0.5 * (levels[k + 1] - levels[k - 1]);
  data_ = std::make_shared<const Data>(Data{std::move(levels), std::move(weights)});
}

QuantileGrid QuantileGrid::uniform(double first, double step, std::size_t count) {
  std::vector<double> levels(count);
  for (std::size_t j = 0; j < count; ++j) levels[j] = first + step * static_cast<double>(j);
  return QuantileGrid(std::move(levels));
}

const QuantileGrid& QuantileGrid::standard() {
  static const QuantileGrid grid = uniform(0.1, 0.01, 81);
  return grid;
}

// --- QuantileFunction -----------------------------------------------------

QuantileFunction::QuantileFunction(QuantileGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    fail(ErrorCode::GridMismatch,
         fmt::format("quantile function has {} values for a {}-level grid", values_.size(),
                     grid_.size()));
  }
  require_finite(values_, "quantile function");
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (values_[k] < values_[k - 1]) {
      fail(ErrorCode::InvariantError,
           fmt::format("quantile function decreases between levels {} and {}", k - 1, k));
    }
  }
}

// --- distances ------------------------------------------------------------

double frobenius_distance(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    fail(ErrorCode::DimensionMismatch,
         fmt::format("Frobenius distance between {}x{} and {}x{} matrices", a.dim(), a.dim(),
                     b.dim(), b.dim()));
  }
  return std::sqrt(kernels::sum_sq_diff(a.values(), b.values()));
}

double wasserstein_distance(const QuantileFunction& a, const QuantileFunction& b) {
  if (!(a.grid() == b.grid())) fail(ErrorCode::GridMismatch, "Wasserstein distance: grids differ");
  return std::sqrt(kernels::weighted_sum_sq_diff(a.values(), b.values(), a.grid().weights()));
}

double distance(const MetricObject& a, const MetricObject& b) {
  if (a.index() != b.index()) {
    fail(ErrorCode::InvalidArgument, "distance between a matrix and a distribution");
  }
  if (const auto* ma = std::get_if<SymMatrix>(&a)) {
    return frobenius_distance(*ma, std::get<SymMatrix>(b));
  }
  return wasserstein_distance(std::get<QuantileFunction>(a), std::get<QuantileFunction>(b));
}

// --- weighted means -------------------------------------------------------

SymMatrix weighted_mean_matrix(std::span<const SymMatrix> objects,
                               std::span<const double> coeffs) {
  if (objects.empty() || objects.size() != coeffs.size()) {
    fail(ErrorCode::DimensionMismatch, "weighted mean: objects and coefficients differ in length");
  }
  const std::size_t dim = objects.front().dim();
  const double total = checked_denominator(coeffs);
  std::vector<double> acc(dim * dim, 0.0);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].dim() != dim) {
      fail(ErrorCode::DimensionMismatch, "weighted mean: matrices differ in dimension");
    }
    kernels::axpy(coeffs[i], objects[i].values(), acc);
  }
  kernels::scale(1.0 / total, acc);
  return SymMatrix::from_row_major(dim, std::move(acc));
}

QuantileFunction weighted_mean_quantile(std::span<const QuantileFunction> objects,
                                        std::span<const double> coeffs) {
  if (objects.empty() || objects.size() != coeffs.size()) {
    fail(ErrorCode::DimensionMismatch, "weighted mean: objects and coefficients differ in length");
  }
  const QuantileGrid& grid = objects.front().grid();
  const double total = checked_denominator(coeffs);
  std::vector<double> acc(grid.size(), 0.0);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!(objects[i].grid() == grid)) fail(ErrorCode::GridMismatch, "weighted mean: grids differ");
    kernels::axpy(coeffs[i], objects[i].values(), acc);
  }
  kernels::scale(1.0 / total, acc);
  return QuantileFunction(grid, isotonic_projection(acc, grid.weights()));
}

}  // namespace robfrechet
