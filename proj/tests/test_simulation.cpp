#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "robfrechet/errors.hpp"
#include "robfrechet/simulation.hpp"

using namespace robfrechet;
using Catch::Approx;

TEST_CASE("beta DGP truth interpolates identity and all-ones") {
  REQUIRE(dgp1_truth(0.0, 4) == SymMatrix::identity(4));
  REQUIRE(dgp1_truth(1.0, 4) == SymMatrix::ones(4));
  const SymMatrix m = dgp1_truth(0.3, 3);
  REQUIRE(m(0, 0) == 1.0);
  REQUIRE(m(1, 2) == 0.3);
}

TEST_CASE("log-normal DGP truth") {
  const std::vector<double> beta{0.1, 0.2, 0.3, 0.4, 0.5};
  // beta^T x = 0.125 puts cos(4 pi . ) at zero, where (e^c - 1)/c -> 1.
  Eigen::VectorXd x = Eigen::VectorXd::Constant(5, 0.125 / 1.5);
  const SymMatrix m = dgp2_truth(x, beta, 3);
  REQUIRE(m(0, 0) == Approx(std::exp(1.02)));
  REQUIRE(m(0, 1) == Approx(std::exp(0.01)).epsilon(1e-9));
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(5);
  REQUIRE(dgp2_truth(zero, beta, 3)(0, 2) == Approx(std::exp(0.01) * std::expm1(1.0)));
}

TEST_CASE("beta DGP draws have the truth as conditional mean") {
  Rng rng(1);
  const auto sample = gen_dgp1(4000, 3, rng);
  const auto& ys = sample.data.responses();
  // Regress the off-diagonal entry on x: slope 1, intercept 0.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = 4000.0;
  for (std::size_t i = 0; i < 4000; ++i) {
    const double x = sample.data.covariates()(static_cast<Eigen::Index>(i), 0);
    const double y = ys.row(i)[1];
    REQUIRE(ys.row(i)[0] == 1.0);
    REQUIRE(y >= 0.0);
    REQUIRE(y <= 1.0);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (sxy - sx * sy / n) / (sxx - sx * sx / n);
  REQUIRE(slope == Approx(1.0).margin(0.05));
  REQUIRE((sy - slope * sx) / n == Approx(0.0).margin(0.03));
}

TEST_CASE("distribution DGP draws are valid quantile functions") {
  Rng rng(2);
  const auto sample = gen_dist_dgp(50, DistributionParams{}, rng);
  REQUIRE(sample.truth.mu.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) {
    REQUIRE(sample.truth.sigma[i] > 0.0);
    const auto row = sample.data.responses().row(i);
    for (std::size_t j = 1; j < row.size(); ++j) REQUIRE(row[j] > row[j - 1]);
    // median level 0.5 sits at mu
    REQUIRE(row[40] == Approx(sample.truth.mu[i]).margin(1e-12));
  }
  DistributionParams bad;
  bad.v2 = 0.0;
  REQUIRE_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("log-normal DGP uses p = 10 covariates") {
  Rng rng(3);
  const DgpParams params;
  const auto sample = gen_dgp2(20, 10, params.beta, rng);
  REQUIRE(sample.data.covariate_dim() == 10);
  REQUIRE(sample.data.responses().dim() == 10);
  for (double v : sample.data.responses().values()) REQUIRE(v > 0.0);
}

TEST_CASE("contamination count rounds half up") {
  REQUIRE(contamination_count(0.1, 25) == 3);
  REQUIRE(contamination_count(0.2, 50) == 10);
  REQUIRE(contamination_count(0.0, 50) == 0);
  REQUIRE_THROWS_AS(contamination_count(1.0, 50), Error);
}

TEST_CASE("contamination shifts exactly the chosen rows") {
  Rng rng(4);
  const auto sample = gen_dgp1(50, 4, rng);
  const Contamination c = contaminate(sample.data, 0.2, 100.0, rng);
  REQUIRE(c.indices.size() == 10);
  REQUIRE(std::is_sorted(c.indices.begin(), c.indices.end()));
  REQUIRE(std::set<std::size_t>(c.indices.begin(), c.indices.end()).size() == 10);
  for (std::size_t i = 0; i < 50; ++i) {
    const bool hit = std::binary_search(c.indices.begin(), c.indices.end(), i);
    const auto before = sample.data.responses().row(i);
    const auto after = c.data.responses().row(i);
    for (std::size_t j = 0; j < before.size(); ++j) {
      REQUIRE(after[j] == (hit ? before[j] + 100.0 : before[j]));
    }
  }
  REQUIRE(c.data.covariates() == sample.data.covariates());
}

TEST_CASE("error metrics") {
  const std::vector<SymMatrix> a{SymMatrix::identity(2), SymMatrix::identity(2)};
  const std::vector<SymMatrix> b{SymMatrix::ones(2), SymMatrix::identity(2)};
  REQUIRE(mse_matrix(a, b) == Approx(1.0));
  REQUIRE_THROWS_AS(mse_matrix(a, std::span<const SymMatrix>(b).first(1)), Error);
}

TEST_CASE("summary statistics") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const Summary s = summarize(v);
  REQUIRE(s.mean == 2.5);
  REQUIRE(s.standard_error == Approx(std::sqrt(5.0 / 3.0) / 2.0));
  REQUIRE(summarize(std::vector<double>{}).count == 0);
}

TEST_CASE("replicate streams are reproducible and distinct") {
  Rng a = replicate_rng(7, 3);
  Rng b = replicate_rng(7, 3);
  Rng c = replicate_rng(7, 4);
  const auto x = a();
  REQUIRE(x == b());
  REQUIRE(x != c());
  REQUIRE(parse_dgp("matrix-beta") == Dgp::MatrixBeta);
  REQUIRE_THROWS_AS(parse_dgp("nope"), Error);
}

TEST_CASE("scenario runs are deterministic and independent of worker count") {
  ScenarioSpec spec;
  spec.n = 20;
  spec.q = 3;
  spec.replications = 3;
  spec.contamination_proportion = 0.1;
  spec.shift = 50.0;
  spec.grid.lambda_count = 5;
  const ScenarioResult r1 = run_scenario(spec);
  const ScenarioResult r2 = run_scenario(spec);
  REQUIRE(r1.replicates.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    REQUIRE(r1.replicates[k].error_standard == r2.replicates[k].error_standard);
    REQUIRE(r1.replicates[k].error_robust == r2.replicates[k].error_robust);
    REQUIRE(r1.replicates[k].selected == r2.replicates[k].selected);
    REQUIRE(r1.replicates[k].contaminated == 2);
  }
  // A single replicate reproduces its slot of the full run.
  const ReplicateReport solo = run_replicate(r1.spec, 1);
  REQUIRE(solo.error_robust == r1.replicates[1].error_robust);
}

TEST_CASE("leave-one-out skips excluded indices") {
  Rng rng(5);
  const auto sample = gen_dgp1(12, 3, rng);
  GridSpec grid;
  grid.lambda_count = 4;
  const LooResult res = leave_one_out(sample.data, grid, FitConfig{}, HoldoutPolicy{{0, 5}});
  REQUIRE(res.points.size() == 10);
  for (const LooPoint& p : res.points) {
    REQUIRE(p.index != 0);
    REQUIRE(p.index != 5);
    REQUIRE(p.error_standard >= 0.0);
  }
  REQUIRE(res.standard.count == 10);
}

TEST_CASE("leave-one-out falls back to the standard fit without a feasible pair") {
  Eigen::MatrixXd x(4, 1);
  x << 0.0, 1.0, 2.0, 3.0;
  std::vector<double> values;
  for (int i = 0; i < 4; ++i) values.insert(values.end(), {1.0, 0.5, 0.5, 1.0});
  const Dataset data(x, ResponseSet::matrices(2, values));
  const LooResult res = leave_one_out(data, GridSpec{}, FitConfig{});
  for (const LooPoint& p : res.points) {
    REQUIRE(p.tuning_failed);
    REQUIRE(p.error_robust == p.error_standard);
  }
}
