#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "robfrechet/responses.hpp"

namespace robfrechet {

// Singular values of the covariate covariance below this fraction of the
// largest one are dropped from its pseudo-inverse.
inline constexpr double kPseudoInverseCutoff = 1e-10;

// Paired covariates (n x p) and responses, with the covariate mean, the
// unbiased (n-1) covariance and its Moore-Penrose pseudo-inverse cached.
// Immutable once built.
class Dataset {
 public:
  Dataset(Eigen::MatrixXd covariates, ResponseSet responses);

  std::size_t size() const noexcept { return static_cast<std::size_t>(covariates_.rows()); }
  std::size_t covariate_dim() const noexcept { return static_cast<std::size_t>(covariates_.cols()); }

  const Eigen::MatrixXd& covariates() const noexcept { return covariates_; }
  Eigen::VectorXd covariate(std::size_t i) const { return covariates_.row(static_cast<Eigen::Index>(i)).transpose(); }
  const ResponseSet& responses() const noexcept { return responses_; }

  const Eigen::VectorXd& covariate_mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& covariate_covariance() const noexcept { return covariance_; }
  const Eigen::MatrixXd& covariance_pinv() const noexcept { return covariance_pinv_; }

  Dataset subset(std::span<const std::size_t> indices) const;
  Dataset without(std::size_t index) const;
  Dataset with_responses(ResponseSet responses) const;

 private:
  Eigen::MatrixXd covariates_;
  ResponseSet responses_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd centered_;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd covariance_pinv_;

  friend std::vector<double> leverage(const Dataset& data, const Eigen::VectorXd& x);
};

// g_i = 1 + (X_i - mean)^T Sigma^+ (x - mean). Entries may be negative and
// sum to n.
std::vector<double> leverage(const Dataset& data, const Eigen::VectorXd& x);

}  // namespace robfrechet
