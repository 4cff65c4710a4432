#include "robfrechet/responses.hpp"

#include <cmath>

#include <fmt/format.h>

#include "robfrechet/errors.hpp"
#include "robfrechet/kernels.hpp"

namespace robfrechet {

ResponseSet::ResponseSet(ResponseKind kind, std::size_t dim, std::optional<QuantileGrid> grid,
                         std::size_t width, std::vector<double> values)
    : kind_(kind),
      dim_(dim),
      grid_(std::move(grid)),
      width_(width),
      count_(width == 0 ? 0 : values.size() / width),
      values_(std::move(values)) {}

ResponseSet ResponseSet::matrices(std::size_t dim, std::vector<double> values) {
  const std::size_t width = dim * dim;
  if (width == 0 || values.size() % width != 0) {
    fail(ErrorCode::ShapeError,
         fmt::format("{} values do not split into {}x{} matrices", values.size(), dim, dim));
  }
  const std::size_t n = values.size() / width;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(values.begin() + i * width, values.begin() + (i + 1) * width);
    SymMatrix m = SymMatrix::from_row_major(dim, std::move(row));
    std::copy(m.values().begin(), m.values().end(), values.begin() + i * width);
  }
  return ResponseSet(ResponseKind::Matrix, dim, std::nullopt, width, std::move(values));
}

ResponseSet ResponseSet::distributions(QuantileGrid grid, std::vector<double> values) {
  const std::size_t width = grid.size();
  if (values.size() % width != 0) {
    fail(ErrorCode::ShapeError,
         fmt::format("{} values do not split into rows of {} quantiles", values.size(), width));
  }
  const std::size_t n = values.size() / width;
  for (std::size_t i = 0; i < n; ++i) {
    QuantileFunction(grid, std::vector<double>(values.begin() + i * width,
                                               values.begin() + (i + 1) * width));
  }
  return ResponseSet(ResponseKind::Distribution, 0, std::move(grid), width, std::move(values));
}

ResponseSet ResponseSet::from_objects(std::span<const MetricObject> objects) {
  if (objects.empty()) fail(ErrorCode::InvalidArgument, "response set must not be empty");
  std::vector<double> values;
  if (const auto* first = std::get_if<SymMatrix>(&objects.front())) {
    const std::size_t dim = first->dim();
    values.reserve(objects.size() * dim * dim);
    for (const MetricObject& obj : objects) {
      const auto* m = std::get_if<SymMatrix>(&obj);
      if (m == nullptr) fail(ErrorCode::InvalidArgument, "responses mix matrices and distributions");
      if (m->dim() != dim) fail(ErrorCode::DimensionMismatch, "responses differ in matrix dimension");
      values.insert(values.end(), m->values().begin(), m->values().end());
    }
    return ResponseSet(ResponseKind::Matrix, dim, std::nullopt, dim * dim, std::move(values));
  }
  const QuantileGrid& grid = std::get<QuantileFunction>(objects.front()).grid();
  values.reserve(objects.size() * grid.size());
  for (const MetricObject& obj : objects) {
    const auto* f = std::get_if<QuantileFunction>(&obj);
    if (f == nullptr) fail(ErrorCode::InvalidArgument, "responses mix matrices and distributions");
    if (!(f->grid() == grid)) fail(ErrorCode::GridMismatch, "responses use different quantile grids");
    values.insert(values.end(), f->values().begin(), f->values().end());
  }
  return ResponseSet(ResponseKind::Distribution, 0, grid, grid.size(), std::move(values));
}

MetricObject ResponseSet::make_object(std::vector<double> row_values) const {
  if (row_values.size() != width_) {
    fail(ErrorCode::DimensionMismatch,
         fmt::format("response row has {} values, expected {}", row_values.size(), width_));
  }
  if (kind_ == ResponseKind::Matrix) return SymMatrix::from_row_major(dim_, std::move(row_values));
  return QuantileFunction(*grid_, std::move(row_values));
}

MetricObject ResponseSet::object(std::size_t i) const {
  auto r = row(i);
  return make_object(std::vector<double>(r.begin(), r.end()));
}

std::vector<MetricObject> ResponseSet::objects() const {
  std::vector<MetricObject> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) out.push_back(object(i));
  return out;
}

std::vector<double> ResponseSet::flatten(const MetricObject& object) const {
  if (kind_ == ResponseKind::Matrix) {
    const auto* m = std::get_if<SymMatrix>(&object);
    if (m == nullptr || m->dim() != dim_) {
      fail(ErrorCode::DimensionMismatch, "object does not match the response matrices");
    }
    return {m->values().begin(), m->values().end()};
  }
  const auto* f = std::get_if<QuantileFunction>(&object);
  if (f == nullptr || !(f->grid() == *grid_)) {
    fail(ErrorCode::GridMismatch, "object does not match the response quantile grid");
  }
  return {f->values().begin(), f->values().end()};
}

double ResponseSet::squared_distance(std::span<const double> a, std::span<const double> b) const {
  if (kind_ == ResponseKind::Matrix) return kernels::sum_sq_diff(a, b);
  return kernels::weighted_sum_sq_diff(a, b, grid_->weights());
}

double ResponseSet::distance(std::span<const double> a, std::span<const double> b) const {
  return std::sqrt(squared_distance(a, b));
}

void ResponseSet::squared_distances_to(std::span<const double> u, std::span<double> out) const {
  if (u.size() != width_ || out.size() != count_) {
    fail(ErrorCode::DimensionMismatch, "squared_distances_to: operand sizes do not match");
  }
  const kernels::KernelTable& k = kernels::table(kernels::active_backend());
  if (kind_ == ResponseKind::Matrix) {
    for (std::size_t i = 0; i < count_; ++i) {
      out[i] = k.sum_sq_diff(values_.data() + i * width_, u.data(), width_);
    }
  } else {
    const double* w = grid_->weights().data();
    for (std::size_t i = 0; i < count_; ++i) {
      out[i] = k.weighted_sum_sq_diff(values_.data() + i * width_, u.data(), w, width_);
    }
  }
}

std::vector<double> ResponseSet::weighted_mean(std::span<const double> coeffs) const {
  if (coeffs.size() != count_) {
    fail(ErrorCode::DimensionMismatch,
         fmt::format("weighted mean: {} coefficients for {} responses", coeffs.size(), count_));
  }
  double total = 0.0;
  for (double c : coeffs) total += c;
  if (!(std::abs(total) > kDenominatorGuard)) {
    fail(ErrorCode::NearSingularDenominator,
         fmt::format("weighted mean: coefficient sum {:.17g} is within {:g} of zero", total,
                     kDenominatorGuard));
  }
  const kernels::KernelTable& k = kernels::table(kernels::active_backend());
  std::vector<double> acc(width_, 0.0);
  for (std::size_t i = 0; i < count_; ++i) {
    if (coeffs[i] != 0.0) k.axpy(coeffs[i], values_.data() + i * width_, acc.data(), width_);
  }
  k.scale(1.0 / total, acc.data(), width_);
  if (kind_ == ResponseKind::Distribution) return isotonic_projection(acc, grid_->weights());
  return acc;
}

ResponseSet ResponseSet::subset(std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * width_);
  for (std::size_t i : indices) {
    if (i >= count_) fail(ErrorCode::InvalidArgument, fmt::format("row index {} out of range", i));
    auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
  }
  return ResponseSet(kind_, dim_, grid_, width_, std::move(values));
}

ResponseSet ResponseSet::shifted(std::span<const std::size_t> indices, double shift) const {
  std::vector<double> values = values_;
  for (std::size_t i : indices) {
    if (i >= count_) fail(ErrorCode::InvalidArgument, fmt::format("row index {} out of range", i));
    for (std::size_t k = 0; k < width_; ++k) values[i * width_ + k] += shift;
  }
  return ResponseSet(kind_, dim_, grid_, width_, std::move(values));
}

}  // namespace robfrechet
