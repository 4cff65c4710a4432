#include "robfrechet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robfrechet/errors.hpp"

namespace robfrechet {
namespace {

constexpr double kTiny = 1e-14;

// Random convex combination of the response rows (flat values).
std::vector<double> random_combination(const ResponseSet& ys, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> a(ys.size());
  for (double& v : a) v = expo(rng);
  return ys.weighted_mean(a);
}

std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> w(n);
  for (double& v : w) v = unif(rng);
  return w;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

double contraction_factor(std::size_t n, double c_u, double l_d, double d_g, double gamma) {
  const double product = std::sqrt(static_cast<double>(n)) * c_u * l_d * d_g;
  if (product == 0.0) return 0.0;
  if (gamma == 0.0) return std::numeric_limits<double>::infinity();
  return product / (2.0 * gamma);
}

RegularityReport estimate_regularity(const Dataset& data, const Eigen::VectorXd& x,
                                     const TuningPair& t, const FitConfig& cfg,
                                     std::size_t probes, Rng& rng) {
  if (probes < 10) fail(ErrorCode::InvalidArgument, "estimate_regularity needs at least 10 probes");
  t.validate();
  cfg.validate();
  const ResponseSet& ys = data.responses();
  const std::size_t n = ys.size();

  RegularityReport rep;
  rep.probes = probes;

  const FitResult fit = fit_robust(data, x, t, cfg);
  rep.iterations = fit.iterations;
  rep.converged = fit.converged;
  for (double g : fit.leverages) rep.D_g_hat = std::max(rep.D_g_hat, std::abs(g));
  for (double f : fit.weight_fractions) rep.xi_hat = std::min(rep.xi_hat, f);
  rep.xi_hat = std::clamp(rep.xi_hat, 0.0, 1.0);
  if (fit.iterations > 0) rep.rho_empirical = contraction_trace(fit).max_ratio;

  const auto spread_to = [&](std::span<const double> u) {
    double far = 0.0;
    for (std::size_t i = 0; i < n; ++i) far = std::max(far, ys.distance(ys.row(i), u));
    return far;
  };

  for (std::size_t i = 0; i < n; ++i) rep.D_u_hat = std::max(rep.D_u_hat, spread_to(ys.row(i)));
  rep.D_u_hat = std::max(rep.D_u_hat, spread_to(ys.flatten(fit.estimate)));

  std::vector<double> sq1(n);
  std::vector<double> sq2(n);
  for (std::size_t k = 0; k < probes; ++k) {
    const std::vector<double> u1 = random_combination(ys, rng);
    const std::vector<double> u2 = random_combination(ys, rng);
    rep.D_u_hat = std::max({rep.D_u_hat, spread_to(u1), spread_to(u2), ys.distance(u1, u2)});
    const double gap = ys.distance(u1, u2);
    if (gap <= kTiny) continue;
    ys.squared_distances_to(u1, sq1);
    ys.squared_distances_to(u2, sq2);
    for (std::size_t i = 0; i < n; ++i) {
      rep.L_d_hat = std::max(rep.L_d_hat, std::abs(sq1[i] - sq2[i]) / gap);
    }
  }

  const std::vector<double>& g = fit.leverages;
  std::vector<double> c1(n);
  std::vector<double> c2(n);
  for (std::size_t k = 0; k < probes; ++k) {
    const std::vector<double> w1 = random_weights(n, rng);
    const std::vector<double> w2 = random_weights(n, rng);
    const double wgap = euclidean(w1, w2);
    if (wgap <= kTiny) continue;
    for (std::size_t i = 0; i < n; ++i) {
      c1[i] = w1[i] * g[i];
      c2[i] = w2[i] * g[i];
    }
    try {
      const double ugap = ys.distance(ys.weighted_mean(c1), ys.weighted_mean(c2));
      rep.C_u_hat = std::max(rep.C_u_hat, ugap / wgap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearSingularDenominator) throw;
    }
  }

  rep.rho_hat = contraction_factor(n, rep.C_u_hat, rep.L_d_hat, rep.D_g_hat, t.gamma);
  return rep;
}

ContractionTrace contraction_trace(const FitResult& fit) {
  const std::vector<double>& d = fit.distances_to_final;
  if (d.size() < 2) {
    fail(ErrorCode::InsufficientIterations,
         "contraction_trace needs a robust fit with at least one iteration");
  }
  ContractionTrace out;
  const std::size_t last = d.size() - 1;  // d[last] is zero by construction
  for (std::size_t s = 0; s + 1 < last; ++s) {
    double ratio;
    if (d[s] > 0.0) {
      ratio = d[s + 1] / d[s];
    } else {
      ratio = d[s + 1] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    out.ratios.push_back(ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  if (d[0] > 0.0) {
    for (std::size_t s = 1; s < last; ++s) {
      const double rate = std::pow(d[s] / d[0], 1.0 / static_cast<double>(s));
      out.envelope_rate = std::max(out.envelope_rate, rate);
    }
  }
  out.geometric_envelope = out.envelope_rate < 1.0;
  return out;
}

}  // namespace robfrechet
