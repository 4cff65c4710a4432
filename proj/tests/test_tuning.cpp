#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "robfrechet/errors.hpp"
#include "robfrechet/tuning.hpp"
#include "support.hpp"

using namespace robfrechet;
using Catch::Approx;

TEST_CASE("outlier budget is floor(0.3 n)") {
  REQUIRE(max_outliers(10) == 3);
  REQUIRE(max_outliers(50) == 15);
  REQUIRE(max_outliers(9) == 2);
  REQUIRE(max_outliers(3) == 0);
}

TEST_CASE("grid layout") {
  const GridSpec spec;
  const auto grid = build_grid(10.0, spec);
  REQUIRE(grid.size() == 100);
  REQUIRE(grid.back().lambda == 10.0);
  REQUIRE(grid.back().gamma == 20.0);
  REQUIRE(grid.front().lambda == Approx(10.0 * std::pow(1e-7, 0.8)));
  REQUIRE(grid.front().gamma == 0.0);
  REQUIRE(std::is_sorted(grid.begin(), grid.end(), [](const TuningPair& a, const TuningPair& b) {
    return a.lambda != b.lambda ? a.lambda < b.lambda : a.gamma < b.gamma;
  }));
}

TEST_CASE("grid collapses to a single pair when lambda_max is zero") {
  const auto grid = build_grid(0.0, GridSpec{});
  REQUIRE(grid.size() == 1);
  REQUIRE(grid[0] == TuningPair{0.0, 0.0});
}

TEST_CASE("zero gamma ratio is added unless disabled") {
  GridSpec spec;
  spec.lambda_count = 3;
  spec.gamma_ratios = {1.0};
  REQUIRE(build_grid(1.0, spec).size() == 6);
  spec.include_zero_gamma = false;
  REQUIRE(build_grid(1.0, spec).size() == 3);
  spec.gamma_ratios = {};
  REQUIRE_THROWS_AS(build_grid(1.0, spec), Error);
  spec.lambda_count = 1;
  REQUIRE_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("lambda_max leaves every weight at one") {
  std::mt19937_64 rng(4);
  const auto data = testsupport::random_distribution_data(20, 1, rng);
  const double lmax = lambda_max(data);
  const BICRecord rec = bic_score(data, TuningPair{lmax, 0.0});
  REQUIRE(rec.k_hat == 0);
  REQUIRE(rec.feasible);
  REQUIRE_FALSE(rec.degenerate);
}

TEST_CASE("bic matches its definition") {
  std::mt19937_64 rng(5);
  auto data = testsupport::random_matrix_data(30, 3, 1, rng);
  const std::vector<std::size_t> bad{3, 11};
  data = data.with_responses(data.responses().shifted(bad, 20.0));
  const double lmax = lambda_max(data);
  const BICRecord rec = bic_score(data, TuningPair{0.05 * lmax, 0.05 * lmax});
  REQUIRE_FALSE(rec.degenerate);
  double sw = 0.0, swr = 0.0;
  int k = 0;
  for (std::size_t i = 0; i < 30; ++i) {
    sw += rec.observation_weights[i];
    swr += rec.observation_weights[i] * rec.residuals[i];
    if (rec.observation_weights[i] < 1.0 - 1e-10) ++k;
  }
  REQUIRE(rec.k_hat == k);
  REQUIRE(rec.bic == Approx(30.0 * std::log(swr / sw) + k * (std::log(30.0) + 1.0)));
  REQUIRE(rec.observation_weights[3] == 0.0);
  REQUIRE(rec.observation_weights[11] == 0.0);
}

TEST_CASE("identical responses give a degenerate record") {
  Eigen::MatrixXd x(4, 1);
  x << 0.0, 1.0, 2.0, 3.0;
  std::vector<double> values;
  for (int i = 0; i < 4; ++i) values.insert(values.end(), {1.0, 0.2, 0.2, 1.0});
  const Dataset data(x, ResponseSet::matrices(2, values));
  const BICRecord rec = bic_score(data, TuningPair{0.0, 0.0});
  REQUIRE(rec.degenerate);
  REQUIRE(std::isinf(rec.bic));
  REQUIRE_FALSE(rec.feasible);
  try {
    (void)select_tuning(data, GridSpec{});
    FAIL("expected NoFeasiblePair");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::NoFeasiblePair);
  }
}

TEST_CASE("ties go to the larger lambda then the larger gamma") {
  auto make = [](double l, double g, double bic) {
    BICRecord r;
    r.pair = {l, g};
    r.bic = bic;
    r.feasible = true;
    return r;
  };
  std::vector<BICRecord> recs{make(1, 0, 5.0), make(2, 0, 5.0), make(2, 1, 5.0), make(3, 3, 6.0)};
  REQUIRE(*best_record(recs) == 2);
  recs[2].feasible = false;
  REQUIRE(*best_record(recs) == 1);
  for (auto& r : recs) r.feasible = false;
  REQUIRE_FALSE(best_record(recs).has_value());
}

TEST_CASE("selection flags planted outliers on contaminated data") {
  std::mt19937_64 rng(6);
  auto data = testsupport::random_matrix_data(40, 4, 1, rng, 0.2);
  const std::vector<std::size_t> bad{0, 5, 10, 15};
  data = data.with_responses(data.responses().shifted(bad, 30.0));
  const TuningSelection sel = select_tuning(data, GridSpec{});
  const BICRecord& rec = sel.records[sel.selected];
  REQUIRE(rec.pair == sel.pair);
  REQUIRE(rec.k_hat <= max_outliers(40));
  for (std::size_t i : bad) REQUIRE(rec.observation_weights[i] == 0.0);
  for (const BICRecord& r : sel.records) {
    if (r.feasible) REQUIRE(r.bic >= rec.bic);
  }
}

TEST_CASE("select_tuning rejects an empty grid") {
  std::mt19937_64 rng(7);
  const auto data = testsupport::random_matrix_data(10, 2, 1, rng);
  REQUIRE_THROWS_AS(select_tuning(data, std::span<const TuningPair>{}), Error);
}
