#include "robfrechet/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "robfrechet/errors.hpp"
#include "robfrechet/parallel.hpp"

namespace robfrechet {
namespace {

constexpr double kGridStart = 1e-7;

// True when a should be preferred over b.
bool better(const BICRecord& a, const BICRecord& b) {
  if (a.bic != b.bic) return a.bic < b.bic;
  if (a.pair.lambda != b.pair.lambda) return a.pair.lambda > b.pair.lambda;
  return a.pair.gamma > b.pair.gamma;
}

}  // namespace

void GridSpec::validate() const {
  if (lambda_count < 2) fail(ErrorCode::InvalidArgument, "grid needs at least two lambda values");
  if (!(exponent > 0.0 && std::isfinite(exponent))) {
    fail(ErrorCode::InvalidArgument, "grid exponent must be positive");
  }
  for (double r : gamma_ratios) {
    if (!(r >= 0.0 && std::isfinite(r))) {
      fail(ErrorCode::InvalidArgument, "gamma ratios must be finite and non-negative");
    }
  }
  if (gamma_ratios.empty() && !include_zero_gamma) {
    fail(ErrorCode::InvalidArgument, "grid has no gamma ratios");
  }
}

int max_outliers(std::size_t n) noexcept { return static_cast<int>((3 * n) / 10); }

double lambda_max(const Dataset& data, const FitConfig& cfg) {
  cfg.validate();
  const std::size_t n = data.size();
  std::vector<double> per_fit(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const FitResult fit = fit_standard(data, data.covariate(i));
    per_fit[i] = *std::max_element(fit.weighted_sq_distances.begin(),
                                   fit.weighted_sq_distances.end());
  });
  return std::max(0.0, *std::max_element(per_fit.begin(), per_fit.end()));
}

std::vector<TuningPair> build_grid(double lambda_max_value, const GridSpec& spec) {
  spec.validate();
  if (!(lambda_max_value >= 0.0 && std::isfinite(lambda_max_value))) {
    fail(ErrorCode::InvalidArgument, "lambda_max must be finite and non-negative");
  }
  std::vector<double> ratios = spec.gamma_ratios;
  if (spec.include_zero_gamma && std::find(ratios.begin(), ratios.end(), 0.0) == ratios.end()) {
    ratios.push_back(0.0);
  }

  const int count = spec.lambda_count;
  const double step = (1.0 - kGridStart) / static_cast<double>(count - 1);
  std::vector<TuningPair> grid;
  grid.reserve(static_cast<std::size_t>(count) * ratios.size());
  for (int k = 0; k < count; ++k) {
    const double x = (k == count - 1) ? 1.0 : kGridStart + step * static_cast<double>(k);
    const double lambda = lambda_max_value * std::pow(x, spec.exponent);
    for (double ratio : ratios) grid.push_back({lambda, ratio * lambda});
  }
  std::sort(grid.begin(), grid.end(), [](const TuningPair& a, const TuningPair& b) {
    return a.lambda != b.lambda ? a.lambda < b.lambda : a.gamma < b.gamma;
  });
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<TuningPair> build_grid(const Dataset& data, const GridSpec& spec,
                                   const FitConfig& cfg) {
  spec.validate();
  return build_grid(lambda_max(data, cfg), spec);
}

BICRecord bic_score(const Dataset& data, const TuningPair& t, const FitConfig& cfg) {
  t.validate();
  cfg.validate();
  const std::size_t n = data.size();
  const ResponseSet& ys = data.responses();

  BICRecord rec;
  rec.pair = t;
  rec.observation_weights.assign(n, 0.0);
  rec.residuals.assign(n, 0.0);
  std::vector<char> singular(n, 0);

  parallel_for(n, [&](std::size_t i) {
    try {
      const FitResult fit = fit_robust(data, data.covariate(i), t, cfg);
      rec.observation_weights[i] = fit.weights[i];
      rec.residuals[i] = ys.squared_distance(ys.row(i), ys.flatten(fit.estimate));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearSingularDenominator) throw;
      singular[i] = 1;
    }
  });

  const double threshold = 1.0 - cfg.weight_floor_tolerance;
  double weight_sum = 0.0;
  double weighted_residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weight_sum += rec.observation_weights[i];
    weighted_residual += rec.observation_weights[i] * rec.residuals[i];
    if (rec.observation_weights[i] < threshold) ++rec.k_hat;
  }

  // Residuals at round-off level relative to the response scale count as an
  // exact fit: log of the mean residual is then meaningless.
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : ys.row(i)) scale += v * v;
  }
  scale = 1.0 + scale / static_cast<double>(n);
  const bool any_singular = std::find(singular.begin(), singular.end(), 1) != singular.end();
  rec.degenerate = any_singular || !(weight_sum > kDenominatorGuard) ||
                   !(weighted_residual > kExactFitTolerance * scale * weight_sum);
  rec.mean_weighted_residual = weight_sum > 0.0 ? weighted_residual / weight_sum : 0.0;
  if (rec.degenerate) {
    rec.bic = std::numeric_limits<double>::infinity();
    rec.feasible = false;
    return rec;
  }
  const double nn = static_cast<double>(n);
  rec.bic = nn * std::log(rec.mean_weighted_residual) +
            static_cast<double>(rec.k_hat) * (std::log(nn) + 1.0);
  rec.feasible = rec.k_hat <= max_outliers(n);
  return rec;
}

std::vector<BICRecord> evaluate_grid(const Dataset& data, std::span<const TuningPair> grid,
                                     const FitConfig& cfg) {
  std::vector<BICRecord> records(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) { records[k] = bic_score(data, grid[k], cfg); });
  return records;
}

std::optional<std::size_t> best_record(std::span<const BICRecord> records) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (!records[k].feasible) continue;
    if (!best || better(records[k], records[*best])) best = k;
  }
  return best;
}

TuningSelection select_tuning(const Dataset& data, std::span<const TuningPair> grid,
                              const FitConfig& cfg) {
  if (grid.empty()) fail(ErrorCode::InvalidArgument, "tuning grid is empty");
  std::vector<BICRecord> records = evaluate_grid(data, grid, cfg);
  const auto best = best_record(records);
  if (!best) {
    fail(ErrorCode::NoFeasiblePair,
         fmt::format("none of the {} tuning pairs keeps at most {} outliers with a finite BIC",
                     grid.size(), max_outliers(data.size())));
  }
  TuningSelection out;
  out.pair = records[*best].pair;
  out.selected = *best;
  out.records = std::move(records);
  return out;
}

TuningSelection select_tuning(const Dataset& data, const GridSpec& spec, const FitConfig& cfg) {
  const std::vector<TuningPair> grid = build_grid(data, spec, cfg);
  return select_tuning(data, grid, cfg);
}

}  // namespace robfrechet
