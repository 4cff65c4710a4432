#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "robfrechet/dataset.hpp"
#include "robfrechet/regression.hpp"

namespace robfrechet {

// Mean weighted residual below this fraction of the mean squared response
// norm marks a BIC record degenerate.
inline constexpr double kExactFitTolerance = 1e-20;

// At most this fraction of the sample may be flagged for a pair to be feasible.
inline constexpr double kMaxOutlierFraction = 0.3;

struct GridSpec {
  int lambda_count = 20;
  double exponent = 0.8;
  // gamma = ratio * lambda for each ratio.
  std::vector<double> gamma_ratios{0.0, 0.25, 0.5, 1.0, 2.0};
  // Adds ratio 0 when it is not already listed.
  bool include_zero_gamma = true;

  void validate() const;
};

struct BICRecord {
  TuningPair pair;
  double bic = 0.0;  // +infinity when degenerate
  int k_hat = 0;     // observations with W_i < 1 - tolerance
  double mean_weighted_residual = 0.0;  // sum W_i d_i^2 / sum W_i
  bool feasible = false;
  // The log argument was not positive or the weight sum vanished (or a fit
  // hit a singular weighted mean).
  bool degenerate = false;
  // Per observation: W_i and d^2(Y_i, u(X_i)) from the fit at X_i.
  std::vector<double> observation_weights;
  std::vector<double> residuals;
};

struct TuningSelection {
  TuningPair pair;
  std::size_t selected = 0;  // index into records
  std::vector<BICRecord> records;
};

// floor(0.3 n)
int max_outliers(std::size_t n) noexcept;

// Largest weighted squared distance g(X_j, X_i) d^2(Y_j, u_std(X_i)) over all
// standard fits at training covariates. At or above it no weight drops below
// one in any of those fits.
double lambda_max(const Dataset& data, const FitConfig& cfg = {});

// lambda_max * x_k^exponent for x_k equally spaced on [1e-7, 1], crossed with
// gamma = ratio * lambda; sorted by (lambda, gamma) and deduplicated.
std::vector<TuningPair> build_grid(const Dataset& data, const GridSpec& spec,
                                   const FitConfig& cfg = {});
std::vector<TuningPair> build_grid(double lambda_max_value, const GridSpec& spec);

// Fits at every X_i and scores
//   n log(sum W_i d_i^2 / sum W_i) + k_hat (log n + 1)
// with W_i, d_i taken from the fit at the observation's own covariate.
BICRecord bic_score(const Dataset& data, const TuningPair& t, const FitConfig& cfg = {});

// bic_score for every pair, in grid order.
std::vector<BICRecord> evaluate_grid(const Dataset& data, std::span<const TuningPair> grid,
                                     const FitConfig& cfg = {});

// Index of the feasible BIC minimiser, if any (same tie rule as select_tuning).
std::optional<std::size_t> best_record(std::span<const BICRecord> records);

// Feasible BIC minimiser; ties go to the larger lambda, then the larger gamma.
// Throws NoFeasiblePair if no candidate is feasible.
TuningSelection select_tuning(const Dataset& data, std::span<const TuningPair> grid,
                              const FitConfig& cfg = {});
TuningSelection select_tuning(const Dataset& data, const GridSpec& spec,
                              const FitConfig& cfg = {});

}  // namespace robfrechet
