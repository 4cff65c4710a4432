#pragma once

// Synthetic data generators, contamination, error metrics and the seeded
// Monte Carlo / leave-one-out harnesses.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "robfrechet/dataset.hpp"
#include "robfrechet/metric.hpp"
#include "robfrechet/regression.hpp"
#include "robfrechet/tuning.hpp"

namespace robfrechet {

using Rng = std::mt19937_64;

// Generator for replicate `replicate` of a run seeded with `seed`:
// mt19937_64 seeded through seed_seq{seed_lo, seed_hi, rep_lo, rep_hi}
// (32-bit halves). Streams for different replicates are independent of how
// replicates are scheduled.
Rng replicate_rng(std::uint64_t seed, std::uint64_t replicate);

enum class Dgp { MatrixBeta, MatrixLogNormal, DistributionNormal };

std::string_view dgp_name(Dgp dgp) noexcept;
// Accepts "matrix-beta", "matrix-lognormal", "distribution-normal".
Dgp parse_dgp(std::string_view name);

// Distribution DGP: mu ~ N(mu0 + beta x, v1); sigma ~ Gamma(shape =
// (sigma0 + gamma_sigma x)^2 / v2, scale = v2 / (sigma0 + gamma_sigma x)), so
// E[sigma | x] = sigma0 + gamma_sigma x and Var[sigma | x] = v2.
struct DistributionParams {
  double mu0 = 0.0;
  double beta = 3.0;
  double v1 = 0.25;
  double sigma0 = 3.0;
  double gamma_sigma = 0.5;
  double v2 = 0.25;

  void validate() const;
};

struct DgpParams {
  // Coefficients of the log-normal matrix DGP; its length is the covariate
  // dimension p.
  std::vector<double> beta{0.1, 0.2, 0.3, 0.4, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0};
  DistributionParams distribution;
};

// Covariates with the regression targets at them: the conditional Frechet
// mean for matrix DGPs, the realised quantile function for the distribution
// DGP (whose latent mu_i, sigma_i are kept alongside).
struct TruthBundle {
  Eigen::MatrixXd covariates;
  std::vector<MetricObject> targets;
  std::vector<double> mu;
  std::vector<double> sigma;
};

struct GeneratedSample {
  Dataset data;
  TruthBundle truth;
};

// Conditional mean of the Beta DGP: diagonal 1, off-diagonal x.
SymMatrix dgp1_truth(double x, std::size_t q);
// Entrywise conditional mean of the log-normal DGP: diagonal exp(1.02),
// off-diagonal exp(0.01) (e^c - 1)/c with c = cos(4 pi beta^T x).
SymMatrix dgp2_truth(const Eigen::VectorXd& x, std::span<const double> beta, std::size_t q);

GeneratedSample gen_dgp1(std::size_t n, std::size_t q, Rng& rng);
GeneratedSample gen_dgp2(std::size_t n, std::size_t q, std::span<const double> beta, Rng& rng);
GeneratedSample gen_dist_dgp(std::size_t n, const DistributionParams& params, Rng& rng);

struct Contamination {
  Dataset data;
  std::vector<std::size_t> indices;  // sorted
};

// round-half-up of proportion * n
std::size_t contamination_count(double proportion, std::size_t n);

// Adds `shift` to every value of round(proportion * n) responses chosen
// uniformly without replacement. Covariates are untouched.
Contamination contaminate(const Dataset& data, double proportion, double shift, Rng& rng);

// (1/n) sum_i ||est_i - truth_i||_F^2
double mse_matrix(std::span<const SymMatrix> estimates, std::span<const SymMatrix> truths);
// (1/n) sum_i trapezoid integral of (est_i - truth_i)^2 over the grid
double mise_distribution(std::span<const QuantileFunction> estimates,
                         std::span<const QuantileFunction> truths);
// Mean squared metric distance; mse_matrix or mise_distribution by kind.
double mean_squared_error(std::span<const MetricObject> estimates,
                          std::span<const MetricObject> truths);

struct ScenarioSpec {
  Dgp dgp = Dgp::MatrixBeta;
  std::size_t n = 50;
  std::size_t q = 8;
  std::size_t p = 1;  // forced to 1 for the Beta and distribution DGPs
  double contamination_proportion = 0.0;
  double shift = 0.0;
  std::size_t n_test = 0;  // 0 means n
  std::size_t replications = 100;
  std::uint64_t seed = 1;
  DgpParams params;
  GridSpec grid;
  FitConfig fit;

  void validate() const;
  std::size_t test_count() const noexcept { return n_test == 0 ? n : n_test; }
};

GeneratedSample generate(const ScenarioSpec& spec, Rng& rng);
// Fresh covariates from the covariate law with their targets.
TruthBundle draw_test_truth(const ScenarioSpec& spec, std::size_t count, Rng& rng);

struct ReplicateReport {
  std::size_t replicate = 0;
  bool failed = false;  // tuning found no feasible pair
  double error_standard = 0.0;  // MSE or MISE
  double error_robust = 0.0;
  TuningPair selected;
  int k_hat = 0;
  std::size_t contaminated = 0;
  // Contaminated observations whose own-covariate weight is exactly zero.
  std::size_t contaminated_zero_weight = 0;
  // Test points where the robust fit had a non-positive coefficient sum and
  // the standard fit was used instead.
  std::size_t robust_fallbacks = 0;
  double runtime_seconds = 0.0;
};

struct Summary {
  double mean = 0.0;
  double standard_error = 0.0;  // sample sd / sqrt(count)
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

struct ScenarioResult {
  ScenarioSpec spec;
  std::vector<ReplicateReport> replicates;
  Summary standard;
  Summary robust;
  Summary lambda;
  Summary gamma;
  std::size_t failed = 0;
};

ReplicateReport run_replicate(const ScenarioSpec& spec, std::size_t replicate);
ScenarioResult run_scenario(const ScenarioSpec& spec);

struct HoldoutPolicy {
  // Indices that may not be held out (e.g. contaminated observations).
  std::vector<std::size_t> excluded;
};

struct LooPoint {
  std::size_t index = 0;
  double error_standard = 0.0;  // d^2(Y_i, prediction)
  double error_robust = 0.0;
  TuningPair selected;
  // No feasible pair on the training fold; the robust prediction falls back
  // to the standard fit.
  bool tuning_failed = false;
  // The robust fit at the held-out point had no minimiser; standard fit used.
  bool robust_fallback = false;
  MetricObject standard_prediction;
  MetricObject robust_prediction;
};

struct LooResult {
  std::vector<LooPoint> points;
  Summary standard;
  Summary robust;
};

LooResult leave_one_out(const Dataset& data, const GridSpec& spec, const FitConfig& cfg,
                        const HoldoutPolicy& policy = {});

}  // namespace robfrechet
