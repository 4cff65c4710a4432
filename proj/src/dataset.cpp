#include "robfrechet/dataset.hpp"

#include <cmath>

#include <fmt/format.h>

#include "robfrechet/errors.hpp"

namespace robfrechet {
namespace {

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? kPseudoInverseCutoff * sv(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) inv(k) = 1.0 / sv(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd covariates, ResponseSet responses)
    : covariates_(std::move(covariates)), responses_(std::move(responses)) {
  const auto n = covariates_.rows();
  if (n < 2) fail(ErrorCode::InvalidArgument, "a dataset needs at least two observations");
  if (covariates_.cols() < 1) fail(ErrorCode::InvalidArgument, "covariates need at least one column");
  if (static_cast<std::size_t>(n) != responses_.size()) {
    fail(ErrorCode::DimensionMismatch,
         fmt::format("{} covariate rows but {} responses", n, responses_.size()));
  }
  if (!covariates_.allFinite()) fail(ErrorCode::InvariantError, "covariates contain non-finite values");

  mean_ = covariates_.colwise().mean().transpose();
  centered_ = covariates_.rowwise() - mean_.transpose();
  covariance_ = (centered_.transpose() * centered_) / static_cast<double>(n - 1);
  covariance_ = 0.5 * (covariance_ + covariance_.transpose());
  covariance_pinv_ = pseudo_inverse(covariance_);
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(indices.size()), covariates_.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= size()) fail(ErrorCode::InvalidArgument, "subset index out of range");
    x.row(static_cast<Eigen::Index>(r)) = covariates_.row(static_cast<Eigen::Index>(indices[r]));
  }
  return Dataset(std::move(x), responses_.subset(indices));
}

Dataset Dataset::without(std::size_t index) const {
  std::vector<std::size_t> keep;
  keep.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (i != index) keep.push_back(i);
  }
  return subset(keep);
}

Dataset Dataset::with_responses(ResponseSet responses) const {
  return Dataset(covariates_, std::move(responses));
}

std::vector<double> leverage(const Dataset& data, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != data.covariate_dim()) {
    fail(ErrorCode::DimensionMismatch,
         fmt::format("evaluation point has dimension {}, covariates have {}", x.size(),
                     data.covariate_dim()));
  }
  const Eigen::VectorXd direction = data.covariance_pinv_ * (x - data.mean_);
  const Eigen::VectorXd g = (data.centered_ * direction).array() + 1.0;
  return {g.data(), g.data() + g.size()};
}

}  // namespace robfrechet
