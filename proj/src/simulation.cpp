#include "robfrechet/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "robfrechet/errors.hpp"
#include "robfrechet/parallel.hpp"

namespace robfrechet {
namespace {

double uniform_open01(Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double x = unif(rng);
  while (x <= 0.0 || x >= 1.0) x = unif(rng);
  return x;
}

double beta_draw(double a, double b, Rng& rng) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  for (;;) {
    const double x = ga(rng);
    const double y = gb(rng);
    if (x + y > 0.0) return x / (x + y);
  }
}

// Fill the upper triangle (row-major order) with draw(j, k) and mirror it.
template <typename Draw>
std::vector<double> symmetric_matrix(std::size_t q, Draw&& draw) {
  std::vector<double> m(q * q);
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t k = j; k < q; ++k) {
      const double v = draw(j, k);
      m[j * q + k] = v;
      m[k * q + j] = v;
    }
  }
  return m;
}

double normal_quantile(double z) {
  static const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, z);
}

const std::vector<double>& standard_normal_quantiles() {
  static const std::vector<double> values = [] {
    const auto levels = QuantileGrid::standard().levels();
    std::vector<double> out(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) out[j] = normal_quantile(levels[j]);
    return out;
  }();
  return values;
}

struct LatentDistribution {
  double mu;
  double sigma;
};

LatentDistribution draw_latent(double x, const DistributionParams& p, Rng& rng) {
  std::normal_distribution<double> mu_dist(p.mu0 + p.beta * x, std::sqrt(p.v1));
  const double mean_sigma = p.sigma0 + p.gamma_sigma * x;
  std::gamma_distribution<double> sigma_dist(mean_sigma * mean_sigma / p.v2, p.v2 / mean_sigma);
  const double mu = mu_dist(rng);
  double sigma = sigma_dist(rng);
  while (!(sigma > 0.0)) sigma = sigma_dist(rng);
  return {mu, sigma};
}

std::vector<double> quantile_values(const LatentDistribution& lat) {
  const auto& phi = standard_normal_quantiles();
  std::vector<double> v(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) v[j] = lat.mu + lat.sigma * phi[j];
  return v;
}

double dot_beta(const Eigen::VectorXd& x, std::span<const double> beta) {
  if (static_cast<std::size_t>(x.size()) != beta.size()) {
    fail(ErrorCode::DimensionMismatch, "covariate and beta lengths differ");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) s += beta[k] * x(static_cast<Eigen::Index>(k));
  return s;
}

Eigen::MatrixXd uniform_covariates(std::size_t n, std::size_t p, Rng& rng) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < x.cols(); ++k) x(i, k) = uniform_open01(rng);
  }
  return x;
}

std::vector<double> dgp2_response(const Eigen::VectorXd& x, std::span<const double> beta,
                                  std::size_t q, Rng& rng) {
  const double c = std::cos(4.0 * std::numbers::pi * dot_beta(x, beta));
  std::normal_distribution<double> z_diag(0.0, 1.0);
  std::normal_distribution<double> z_off(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return symmetric_matrix(q, [&](std::size_t j, std::size_t k) {
    if (j == k) return std::exp(0.2 * z_diag(rng) + 1.0);
    const double z = z_off(rng);
    const double u = unif(rng);
    return std::exp(0.2 * z + u * c);
  });
}

}  // namespace

Rng replicate_rng(std::uint64_t seed, std::uint64_t replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replicate),
                    static_cast<std::uint32_t>(replicate >> 32)};
  return Rng(seq);
}

std::string_view dgp_name(Dgp dgp) noexcept {
  switch (dgp) {
    case Dgp::MatrixBeta: return "matrix-beta";
    case Dgp::MatrixLogNormal: return "matrix-lognormal";
    case Dgp::DistributionNormal: return "distribution-normal";
  }
  return "unknown";
}

Dgp parse_dgp(std::string_view name) {
  for (Dgp d : {Dgp::MatrixBeta, Dgp::MatrixLogNormal, Dgp::DistributionNormal}) {
    if (name == dgp_name(d)) return d;
  }
  fail(ErrorCode::InvalidArgument, fmt::format("unknown DGP '{}'", name));
}

void DistributionParams::validate() const {
  const bool ok = std::isfinite(mu0) && std::isfinite(beta) && v1 > 0.0 && v2 > 0.0 &&
                  std::isfinite(v1) && std::isfinite(v2) && sigma0 > 0.0 &&
                  sigma0 + gamma_sigma > 0.0 && std::isfinite(gamma_sigma);
  if (!ok) {
    fail(ErrorCode::InvalidArgument,
         "distribution DGP needs v1, v2 > 0 and sigma0 + gamma_sigma * x > 0 on [0,1]");
  }
}

// --- generators -----------------------------------------------------------

SymMatrix dgp1_truth(double x, std::size_t q) {
  return SymMatrix::from_row_major(
      q, symmetric_matrix(q, [&](std::size_t j, std::size_t k) { return j == k ? 1.0 : x; }));
}

SymMatrix dgp2_truth(const Eigen::VectorXd& x, std::span<const double> beta, std::size_t q) {
  const double c = std::cos(4.0 * std::numbers::pi * dot_beta(x, beta));
  const double off = std::exp(0.01) * (c == 0.0 ? 1.0 : std::expm1(c) / c);
  const double diag = std::exp(1.02);
  return SymMatrix::from_row_major(
      q, symmetric_matrix(q, [&](std::size_t j, std::size_t k) { return j == k ? diag : off; }));
}

GeneratedSample gen_dgp1(std::size_t n, std::size_t q, Rng& rng) {
  if (q < 2) fail(ErrorCode::InvalidArgument, "matrix DGPs need q >= 2");
  Eigen::MatrixXd x = uniform_covariates(n, 1, rng);
  std::vector<double> values;
  values.reserve(n * q * q);
  TruthBundle truth;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x(static_cast<Eigen::Index>(i), 0);
    auto m = symmetric_matrix(
        q, [&](std::size_t j, std::size_t k) { return j == k ? 1.0 : beta_draw(xi, 1.0 - xi, rng); });
    values.insert(values.end(), m.begin(), m.end());
    truth.targets.emplace_back(dgp1_truth(xi, q));
  }
  truth.covariates = x;
  return {Dataset(std::move(x), ResponseSet::matrices(q, std::move(values))), std::move(truth)};
}

GeneratedSample gen_dgp2(std::size_t n, std::size_t q, std::span<const double> beta, Rng& rng) {
  if (q < 2) fail(ErrorCode::InvalidArgument, "matrix DGPs need q >= 2");
  if (beta.size() < 5) fail(ErrorCode::InvalidArgument, "log-normal DGP needs p >= 5");
  Eigen::MatrixXd x = uniform_covariates(n, beta.size(), rng);
  std::vector<double> values;
  values.reserve(n * q * q);
  TruthBundle truth;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = x.row(static_cast<Eigen::Index>(i)).transpose();
    auto m = dgp2_response(xi, beta, q, rng);
    values.insert(values.end(), m.begin(), m.end());
    truth.targets.emplace_back(dgp2_truth(xi, beta, q));
  }
  truth.covariates = x;
  return {Dataset(std::move(x), ResponseSet::matrices(q, std::move(values))), std::move(truth)};
}

GeneratedSample gen_dist_dgp(std::size_t n, const DistributionParams& params, Rng& rng) {
  params.validate();
  const QuantileGrid& grid = QuantileGrid::standard();
  Eigen::MatrixXd x = uniform_covariates(n, 1, rng);
  std::vector<double> values;
  values.reserve(n * grid.size());
  TruthBundle truth;
  for (std::size_t i = 0; i < n; ++i) {
    const LatentDistribution lat = draw_latent(x(static_cast<Eigen::Index>(i), 0), params, rng);
    auto v = quantile_values(lat);
    values.insert(values.end(), v.begin(), v.end());
    truth.targets.emplace_back(QuantileFunction(grid, std::move(v)));
    truth.mu.push_back(lat.mu);
    truth.sigma.push_back(lat.sigma);
  }
  truth.covariates = x;
  return {Dataset(std::move(x), ResponseSet::distributions(grid, std::move(values))),
          std::move(truth)};
}

// --- contamination --------------------------------------------------------

std::size_t contamination_count(double proportion, std::size_t n) {
  if (!(proportion >= 0.0 && proportion < 1.0)) {
    fail(ErrorCode::InvalidArgument, "contamination proportion must lie in [0,1)");
  }
  return static_cast<std::size_t>(std::floor(proportion * static_cast<double>(n) + 0.5));
}

Contamination contaminate(const Dataset& data, double proportion, double shift, Rng& rng) {
  if (!(shift >= 0.0 && std::isfinite(shift))) {
    fail(ErrorCode::InvalidArgument, "contamination shift must be finite and non-negative");
  }
  const std::size_t n = data.size();
  const std::size_t k = contamination_count(proportion, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first k slots are a uniform sample.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(chosen.begin(), chosen.end());
  if (k == 0) return {data, {}};
  return {data.with_responses(data.responses().shifted(chosen, shift)), std::move(chosen)};
}

// --- error metrics --------------------------------------------------------

double mse_matrix(std::span<const SymMatrix> estimates, std::span<const SymMatrix> truths) {
  if (estimates.size() != truths.size() || estimates.empty()) {
    fail(ErrorCode::DimensionMismatch, "mse_matrix: estimate and truth counts differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = frobenius_distance(estimates[i], truths[i]);
    total += d * d;
  }
  return total / static_cast<double>(estimates.size());
}

double mise_distribution(std::span<const QuantileFunction> estimates,
                         std::span<const QuantileFunction> truths) {
  if (estimates.size() != truths.size() || estimates.empty()) {
    fail(ErrorCode::DimensionMismatch, "mise_distribution: estimate and truth counts differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = wasserstein_distance(estimates[i], truths[i]);
    total += d * d;
  }
  return total / static_cast<double>(estimates.size());
}

double mean_squared_error(std::span<const MetricObject> estimates,
                          std::span<const MetricObject> truths) {
  if (estimates.size() != truths.size() || estimates.empty()) {
    fail(ErrorCode::DimensionMismatch, "mean_squared_error: estimate and truth counts differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = distance(estimates[i], truths[i]);
    total += d * d;
  }
  return total / static_cast<double>(estimates.size());
}

// --- scenarios ------------------------------------------------------------

void ScenarioSpec::validate() const {
  if (n < 2) fail(ErrorCode::InvalidArgument, "scenario needs n >= 2");
  if (replications < 1) fail(ErrorCode::InvalidArgument, "scenario needs at least one replicate");
  (void)contamination_count(contamination_proportion, n);
  if (!(shift >= 0.0 && std::isfinite(shift))) {
    fail(ErrorCode::InvalidArgument, "contamination shift must be finite and non-negative");
  }
  if (dgp != Dgp::DistributionNormal && q < 2) {
    fail(ErrorCode::InvalidArgument, "matrix DGPs need q >= 2");
  }
  if (dgp == Dgp::MatrixLogNormal && params.beta.size() < 5) {
    fail(ErrorCode::InvalidArgument, "log-normal DGP needs p >= 5");
  }
  if (dgp == Dgp::DistributionNormal) params.distribution.validate();
  grid.validate();
  fit.validate();
}

GeneratedSample generate(const ScenarioSpec& spec, Rng& rng) {
  switch (spec.dgp) {
    case Dgp::MatrixBeta: return gen_dgp1(spec.n, spec.q, rng);
    case Dgp::MatrixLogNormal: return gen_dgp2(spec.n, spec.q, spec.params.beta, rng);
    case Dgp::DistributionNormal: return gen_dist_dgp(spec.n, spec.params.distribution, rng);
  }
  fail(ErrorCode::InvalidArgument, "unknown DGP");
}

TruthBundle draw_test_truth(const ScenarioSpec& spec, std::size_t count, Rng& rng) {
  TruthBundle truth;
  switch (spec.dgp) {
    case Dgp::MatrixBeta: {
      truth.covariates = uniform_covariates(count, 1, rng);
      for (std::size_t i = 0; i < count; ++i) {
        truth.targets.emplace_back(dgp1_truth(truth.covariates(static_cast<Eigen::Index>(i), 0), spec.q));
      }
      break;
    }
    case Dgp::MatrixLogNormal: {
      truth.covariates = uniform_covariates(count, spec.params.beta.size(), rng);
      for (std::size_t i = 0; i < count; ++i) {
        const Eigen::VectorXd xi = truth.covariates.row(static_cast<Eigen::Index>(i)).transpose();
        truth.targets.emplace_back(dgp2_truth(xi, spec.params.beta, spec.q));
      }
      break;
    }
    case Dgp::DistributionNormal: {
      truth.covariates = uniform_covariates(count, 1, rng);
      for (std::size_t i = 0; i < count; ++i) {
        const LatentDistribution lat = draw_latent(
            truth.covariates(static_cast<Eigen::Index>(i), 0), spec.params.distribution, rng);
        truth.targets.emplace_back(QuantileFunction(QuantileGrid::standard(), quantile_values(lat)));
        truth.mu.push_back(lat.mu);
        truth.sigma.push_back(lat.sigma);
      }
      break;
    }
  }
  return truth;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    s.standard_error = sd / std::sqrt(static_cast<double>(values.size()));
  }
  return s;
}

namespace {

// Robust fit at x, or `standard` when the mean update has no minimiser there.
MetricObject robust_or_standard(const Dataset& data, const Eigen::VectorXd& x,
                                const TuningPair& t, const FitConfig& cfg,
                                const MetricObject& standard, bool& fell_back) {
  try {
    return fit_robust(data, x, t, cfg).estimate;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NearSingularDenominator) throw;
    fell_back = true;
    return standard;
  }
}

}  // namespace

ReplicateReport run_replicate(const ScenarioSpec& spec, std::size_t replicate) {
  const auto started = std::chrono::steady_clock::now();
  Rng rng = replicate_rng(spec.seed, replicate);
  const GeneratedSample sample = generate(spec, rng);
  const Contamination cont =
      contaminate(sample.data, spec.contamination_proportion, spec.shift, rng);
  const TruthBundle test = draw_test_truth(spec, spec.test_count(), rng);

  ReplicateReport report;
  report.replicate = replicate;
  report.contaminated = cont.indices.size();

  std::optional<TuningSelection> selection;
  try {
    selection = select_tuning(cont.data, spec.grid, spec.fit);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoFeasiblePair) throw;
    report.failed = true;
  }

  if (selection) {
    const BICRecord& rec = selection->records[selection->selected];
    report.selected = selection->pair;
    report.k_hat = rec.k_hat;
    for (std::size_t i : cont.indices) {
      if (rec.observation_weights[i] == 0.0) ++report.contaminated_zero_weight;
    }

    std::vector<MetricObject> standard;
    std::vector<MetricObject> robust;
    standard.reserve(test.targets.size());
    robust.reserve(test.targets.size());
    for (std::size_t i = 0; i < test.targets.size(); ++i) {
      const Eigen::VectorXd x = test.covariates.row(static_cast<Eigen::Index>(i)).transpose();
      standard.push_back(fit_standard(cont.data, x).estimate);
      bool fell_back = false;
      robust.push_back(
          robust_or_standard(cont.data, x, selection->pair, spec.fit, standard.back(), fell_back));
      if (fell_back) ++report.robust_fallbacks;
    }
    report.error_standard = mean_squared_error(standard, test.targets);
    report.error_robust = mean_squared_error(robust, test.targets);
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

ScenarioResult run_scenario(const ScenarioSpec& spec) {
  ScenarioSpec effective = spec;
  if (effective.dgp == Dgp::MatrixLogNormal) {
    effective.p = effective.params.beta.size();
  } else {
    effective.p = 1;
  }
  effective.validate();

  ScenarioResult result;
  result.spec = effective;
  result.replicates.resize(effective.replications);
  parallel_for(effective.replications,
               [&](std::size_t r) { result.replicates[r] = run_replicate(effective, r); });

  std::vector<double> standard, robust, lambda, gamma;
  for (const ReplicateReport& rep : result.replicates) {
    if (rep.failed) {
      ++result.failed;
      continue;
    }
    standard.push_back(rep.error_standard);
    robust.push_back(rep.error_robust);
    lambda.push_back(rep.selected.lambda);
    gamma.push_back(rep.selected.gamma);
  }
  result.standard = summarize(standard);
  result.robust = summarize(robust);
  result.lambda = summarize(lambda);
  result.gamma = summarize(gamma);
  return result;
}

// --- leave-one-out --------------------------------------------------------

LooResult leave_one_out(const Dataset& data, const GridSpec& spec, const FitConfig& cfg,
                        const HoldoutPolicy& policy) {
  if (data.size() < 3) fail(ErrorCode::InvalidArgument, "leave-one-out needs n >= 3");
  spec.validate();
  cfg.validate();

  std::vector<std::size_t> holdouts;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (std::find(policy.excluded.begin(), policy.excluded.end(), i) == policy.excluded.end()) {
      holdouts.push_back(i);
    }
  }

  const ResponseSet& ys = data.responses();
  std::vector<LooPoint> points(holdouts.size());
  parallel_for(holdouts.size(), [&](std::size_t k) {
    const std::size_t i = holdouts[k];
    const Dataset train = data.without(i);
    const Eigen::VectorXd x = data.covariate(i);
    LooPoint pt;
    pt.index = i;

    const FitResult standard = fit_standard(train, x);
    pt.standard_prediction = standard.estimate;
    pt.error_standard = ys.squared_distance(ys.row(i), ys.flatten(standard.estimate));

    try {
      const TuningSelection sel = select_tuning(train, spec, cfg);
      pt.selected = sel.pair;
      pt.robust_prediction =
          robust_or_standard(train, x, sel.pair, cfg, standard.estimate, pt.robust_fallback);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoFeasiblePair) throw;
      pt.tuning_failed = true;
      pt.robust_prediction = standard.estimate;
    }
    pt.error_robust = ys.squared_distance(ys.row(i), ys.flatten(pt.robust_prediction));
    points[k] = std::move(pt);
  });

  LooResult out;
  std::vector<double> es, er;
  for (const LooPoint& pt : points) {
    es.push_back(pt.error_standard);
    er.push_back(pt.error_robust);
  }
  out.standard = summarize(es);
  out.robust = summarize(er);
  out.points = std::move(points);
  return out;
}

}  // namespace robfrechet
