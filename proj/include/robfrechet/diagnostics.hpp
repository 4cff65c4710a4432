#pragma once

// Empirical estimates of the regularity constants behind the convergence
// analysis of the robust fit, and the contraction profile of a fit trace.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "robfrechet/dataset.hpp"
#include "robfrechet/regression.hpp"
#include "robfrechet/simulation.hpp"

namespace robfrechet {

// Every constant is a maximum (or, for xi, a minimum) over random probes, so
// it bounds the true supremum from below.
struct RegularityReport {
  double D_u_hat = 0.0;        // largest distance among responses, probes and the fit
  double D_g_hat = 0.0;        // max_i |g(X_i, x)|
  double xi_hat = 1.0;         // min over the fit's weight updates of sum W_i / n
  double L_d_hat = 0.0;        // max |d^2(Y,u1) - d^2(Y,u2)| / d(u1,u2)
  double C_u_hat = 0.0;        // max d(Phi(w1), Phi(w2)) / ||w1 - w2||
  double rho_hat = 0.0;        // sqrt(n) C_u L_d D_g / (2 gamma)
  double rho_empirical = 0.0;  // max contraction ratio of the fit trace
  int iterations = 0;
  bool converged = false;
  std::size_t probes = 0;
  std::string label = "empirical lower bounds";
};

// sqrt(n) c_u l_d d_g / (2 gamma); zero when the product vanishes, infinite
// when gamma is zero and the product does not.
double contraction_factor(std::size_t n, double c_u, double l_d, double d_g, double gamma);

// `probes` (>= 10) pairs of random convex combinations of the responses and
// `probes` pairs of random weight vectors in [0,1]^n, plus one robust fit at x.
RegularityReport estimate_regularity(const Dataset& data, const Eigen::VectorXd& x,
                                     const TuningPair& t, const FitConfig& cfg,
                                     std::size_t probes, Rng& rng);

struct ContractionTrace {
  // d(u_{s+1}, u*) / d(u_s, u*) for s = 0..S-2, u* the final iterate.
  std::vector<double> ratios;
  double max_ratio = 0.0;
  // max_s (d(u_s,u*) / d(u_0,u*))^(1/s); below one means the distances stay
  // under a geometric envelope d_0 rate^s.
  double envelope_rate = 0.0;
  bool geometric_envelope = true;
};

// Throws InsufficientIterations when the fit carries no iterate trace.
ContractionTrace contraction_trace(const FitResult& fit);

}  // namespace robfrechet
