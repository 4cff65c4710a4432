#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "robfrechet/dataset.hpp"
#include "robfrechet/metric.hpp"

namespace robfrechet {

// Elastic-net penalty parameters: lambda multiplies |1 - W|, gamma (1 - W)^2.
struct TuningPair {
  double lambda = 0.0;
  double gamma = 0.0;

  // Throws InvalidArgument unless both are finite and non-negative.
  void validate() const;
  friend bool operator==(const TuningPair&, const TuningPair&) = default;
};

struct FitConfig {
  double epsilon = 1e-6;  // stop once d(u_next, u) < epsilon
  int max_iterations = 100;
  // A weight counts as "below one" when W < 1 - weight_floor_tolerance.
  double weight_floor_tolerance = 1e-10;

  void validate() const;
};

struct FitResult {
  Eigen::VectorXd evaluation_point;
  MetricObject estimate;
  std::vector<double> weights;                // W~_i(estimate), each in [0,1]
  std::vector<double> leverages;              // g(X_i, x)
  std::vector<double> weighted_sq_distances;  // g(X_i, x) d^2(Y_i, estimate)
  int iterations = 0;                         // number of mean updates
  bool converged = false;
  std::vector<double> step_sizes;             // d(u_{s+1}, u_s)
  // Q(u_0, 1), Q(u_0, w_1), Q(u_1, w_1), Q(u_1, w_2), ... in evaluation order.
  std::vector<double> objective_trace;
  // d(u_s, u_final) for s = 0..iterations.
  std::vector<double> distances_to_final;
  // sum_i W_i / n after each weight update, the final one included.
  std::vector<double> weight_fractions;
};

// Closed-form minimiser over W in [0,1] of W r + lambda |1-W| + gamma (1-W)^2:
// 1 for r <= lambda, 0 for r >= lambda + 2 gamma, linear in between.
double adaptive_weight(double r, const TuningPair& t) noexcept;

// sum_i lambda |1-W_i| + gamma (1-W_i)^2
double profiled_penalty(std::span<const double> weights, const TuningPair& t);

// Q(u, w) = sum_i W_i g(X_i,x) d^2(Y_i,u) + lambda |1-W_i| + gamma (1-W_i)^2
double objective(const Dataset& data, const Eigen::VectorXd& x, const MetricObject& u,
                 std::span<const double> weights, const TuningPair& t);

// Standard global Frechet regression at x (all weights one).
FitResult fit_standard(const Dataset& data, const Eigen::VectorXd& x);

// Alternates the weight update and the weighted-mean update starting from the
// standard fit. Non-convergence is reported through FitResult::converged.
FitResult fit_robust(const Dataset& data, const Eigen::VectorXd& x, const TuningPair& t,
                     const FitConfig& cfg = {});

// Independent robust fits at each point, returned in input order.
std::vector<FitResult> predict(const Dataset& data, const TuningPair& t, const FitConfig& cfg,
                               std::span<const Eigen::VectorXd> points);

}  // namespace robfrechet
