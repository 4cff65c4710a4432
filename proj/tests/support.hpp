#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "robfrechet/dataset.hpp"
#include "robfrechet/metric.hpp"
#include "robfrechet/responses.hpp"

namespace testsupport {

using robfrechet::Dataset;
using robfrechet::QuantileGrid;
using robfrechet::ResponseSet;

inline Eigen::MatrixXd random_covariates(std::size_t n, std::size_t p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index k = 0; k < x.cols(); ++k) x(i, k) = u(rng);
  return x;
}

// Symmetric q x q matrices whose entries drift linearly with the first covariate.
inline Dataset random_matrix_data(std::size_t n, std::size_t q, std::size_t p, std::mt19937_64& rng,
                                  double noise = 0.3) {
  Eigen::MatrixXd x = random_covariates(n, p, rng);
  std::normal_distribution<double> z(0.0, noise);
  std::vector<double> values;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x(static_cast<Eigen::Index>(i), 0);
    std::vector<double> m(q * q);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = a; b < q; ++b) {
        const double v = (a == b ? 1.0 : t) + z(rng);
        m[a * q + b] = v;
        m[b * q + a] = v;
      }
    values.insert(values.end(), m.begin(), m.end());
  }
  return Dataset(std::move(x), ResponseSet::matrices(q, std::move(values)));
}

// Normal quantile functions with covariate-driven location and scale, on a
// coarse grid.
inline Dataset random_distribution_data(std::size_t n, std::size_t p, std::mt19937_64& rng) {
  const QuantileGrid grid = QuantileGrid::uniform(0.1, 0.1, 9);
  Eigen::MatrixXd x = random_covariates(n, p, rng);
  std::normal_distribution<double> z(0.0, 0.5);
  std::uniform_real_distribution<double> s(0.5, 1.5);
  std::vector<double> values;
  for (std::size_t i = 0; i < n; ++i) {
    const double mu = 3.0 * x(static_cast<Eigen::Index>(i), 0) + z(rng);
    const double sigma = s(rng);
    for (double level : grid.levels()) {
      // logit as a cheap monotone stand-in for the normal quantile
      values.push_back(mu + sigma * std::log(level / (1.0 - level)));
    }
  }
  return Dataset(std::move(x), ResponseSet::distributions(grid, std::move(values)));
}

}  // namespace testsupport
