#include "robfrechet/regression.hpp"

#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "robfrechet/errors.hpp"
#include "robfrechet/parallel.hpp"

namespace robfrechet {
namespace {

double penalty_term(double w, const TuningPair& t) noexcept {
  const double slack = 1.0 - w;
  return t.lambda * std::abs(slack) + t.gamma * slack * slack;
}

double weighted_objective(std::span<const double> leverages, std::span<const double> sq_dist,
                          std::span<const double> weights, const TuningPair& t) {
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i] * leverages[i] * sq_dist[i] + penalty_term(weights[i], t);
  }
  return total;
}

void update_weights(std::span<const double> leverages, std::span<const double> sq_dist,
                    const TuningPair& t, std::span<double> weights) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = adaptive_weight(leverages[i] * sq_dist[i], t);
  }
}

void check_weights(std::span<const double> weights, std::size_t n) {
  if (weights.size() != n) {
    fail(ErrorCode::DimensionMismatch,
         fmt::format("{} weights for {} observations", weights.size(), n));
  }
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) fail(ErrorCode::InvalidArgument, "weights must lie in [0,1]");
  }
}

}  // namespace

void TuningPair::validate() const {
  if (!(std::isfinite(lambda) && lambda >= 0.0 && std::isfinite(gamma) && gamma >= 0.0)) {
    fail(ErrorCode::InvalidArgument,
         fmt::format("tuning pair needs finite lambda, gamma >= 0 (got {}, {})", lambda, gamma));
  }
}

void FitConfig::validate() const {
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (max_iterations < 1) fail(ErrorCode::InvalidArgument, "max_iterations must be at least 1");
  if (!(weight_floor_tolerance >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "weight_floor_tolerance must be non-negative");
  }
}

double adaptive_weight(double r, const TuningPair& t) noexcept {
  if (r <= t.lambda) return 1.0;
  if (r >= t.lambda + 2.0 * t.gamma) return 0.0;
  return 1.0 - (r - t.lambda) / (2.0 * t.gamma);
}

double profiled_penalty(std::span<const double> weights, const TuningPair& t) {
  double total = 0.0;
  for (double w : weights) total += penalty_term(w, t);
  return total;
}

double objective(const Dataset& data, const Eigen::VectorXd& x, const MetricObject& u,
                 std::span<const double> weights, const TuningPair& t) {
  const ResponseSet& ys = data.responses();
  check_weights(weights, ys.size());
  const std::vector<double> g = leverage(data, x);
  const std::vector<double> flat_u = ys.flatten(u);
  std::vector<double> sq(ys.size());
  ys.squared_distances_to(flat_u, sq);
  return weighted_objective(g, sq, weights, t);
}

FitResult fit_standard(const Dataset& data, const Eigen::VectorXd& x) {
  const ResponseSet& ys = data.responses();
  std::vector<double> g = leverage(data, x);
  std::vector<double> u = ys.weighted_mean(g);
  std::vector<double> sq(ys.size());
  ys.squared_distances_to(u, sq);
  std::vector<double> r(ys.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = g[i] * sq[i];

  return FitResult{
      .evaluation_point = x,
      .estimate = ys.make_object(std::move(u)),
      .weights = std::vector<double>(ys.size(), 1.0),
      .leverages = std::move(g),
      .weighted_sq_distances = std::move(r),
      .iterations = 0,
      .converged = true,
      .step_sizes = {},
      .objective_trace = {},
      .distances_to_final = {},
      .weight_fractions = {1.0},
  };
}

FitResult fit_robust(const Dataset& data, const Eigen::VectorXd& x, const TuningPair& t,
                     const FitConfig& cfg) {
  t.validate();
  cfg.validate();
  const ResponseSet& ys = data.responses();
  const std::size_t n = ys.size();

  std::vector<double> g = leverage(data, x);
  std::vector<double> u = ys.weighted_mean(g);
  std::vector<double> sq(n);
  ys.squared_distances_to(u, sq);

  std::vector<double> weights(n, 1.0);
  std::vector<double> coeffs(n);
  std::vector<double> step_sizes;
  std::vector<double> trace{weighted_objective(g, sq, weights, t)};
  std::vector<std::vector<double>> path{u};
  std::vector<double> fractions;
  const auto weight_fraction = [&] {
    double total = 0.0;
    for (double w : weights) total += w;
    return total / static_cast<double>(n);
  };
  bool converged = false;
  int iterations = 0;

  while (iterations < cfg.max_iterations) {
    update_weights(g, sq, t, weights);
    fractions.push_back(weight_fraction());
    trace.push_back(weighted_objective(g, sq, weights, t));

    double coeff_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      coeffs[i] = weights[i] * g[i];
      coeff_sum += coeffs[i];
    }
    // With a non-positive sum the mean update has no minimiser: the closed
    // form is then a stationary maximiser and the iteration climbs.
    if (!(coeff_sum > kDenominatorGuard)) {
      fail(ErrorCode::NearSingularDenominator,
           fmt::format("weighted coefficient sum {} is not above {}; lambda and gamma zero out "
                       "too much positive-leverage mass",
                       coeff_sum, kDenominatorGuard));
    }
    std::vector<double> next = ys.weighted_mean(coeffs);
    ys.squared_distances_to(next, sq);
    trace.push_back(weighted_objective(g, sq, weights, t));

    const double step = ys.distance(next, u);
    step_sizes.push_back(step);
    ++iterations;
    u = std::move(next);
    path.push_back(u);
    if (step < cfg.epsilon) {
      converged = true;
      break;
    }
  }

  // Report the weights that belong to the returned estimate.
  update_weights(g, sq, t, weights);
  fractions.push_back(weight_fraction());
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = g[i] * sq[i];

  std::vector<double> to_final;
  to_final.reserve(path.size());
  for (const auto& iterate : path) to_final.push_back(ys.distance(iterate, u));

  return FitResult{
      .evaluation_point = x,
      .estimate = ys.make_object(std::move(u)),
      .weights = std::move(weights),
      .leverages = std::move(g),
      .weighted_sq_distances = std::move(r),
      .iterations = iterations,
      .converged = converged,
      .step_sizes = std::move(step_sizes),
      .objective_trace = std::move(trace),
      .distances_to_final = std::move(to_final),
      .weight_fractions = std::move(fractions),
  };
}

std::vector<FitResult> predict(const Dataset& data, const TuningPair& t, const FitConfig& cfg,
                               std::span<const Eigen::VectorXd> points) {
  t.validate();
  cfg.validate();
  std::vector<std::optional<FitResult>> slots(points.size());
  parallel_for(points.size(), [&](std::size_t k) { slots[k] = fit_robust(data, points[k], t, cfg); });
  std::vector<FitResult> out;
  out.reserve(points.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace robfrechet
