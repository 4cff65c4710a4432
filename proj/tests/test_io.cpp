#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <fmt/format.h>

#include "robfrechet/cli.hpp"
#include "robfrechet/errors.hpp"
#include "robfrechet/io.hpp"
#include "robfrechet/simulation.hpp"

using namespace robfrechet;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("robfrechet_test_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

int run_cli(const std::string& args, const fs::path& stderr_file) {
  const std::string cmd = fmt::format("{} {} 2> {}", ROBFRECHET_CLI, args, stderr_file.string());
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

bool same_files(const fs::path& a, const fs::path& b) {
  std::vector<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(a)) names_a.push_back(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(b)) names_b.push_back(e.path().filename().string());
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_b.begin(), names_b.end());
  if (names_a != names_b) return false;
  for (const auto& n : names_a) {
    if (read_text(a / n) != read_text(b / n)) return false;
  }
  return true;
}

// Writes a small contaminated Beta-DGP dataset and returns the directory.
fs::path write_toy(const std::string& name, std::size_t n = 20) {
  const fs::path dir = scratch(name);
  Rng rng(42);
  const auto sample = gen_dgp1(n, 3, rng);
  const Contamination c = contaminate(sample.data, 0.1, 50.0, rng);
  save_dataset(dir / "x.csv", dir / "y.csv", c.data);
  return dir;
}

}  // namespace

TEST_CASE("matrix dataset round-trips bit-exactly") {
  const fs::path dir = scratch("roundtrip");
  Eigen::MatrixXd x(2, 1);
  x << 0.1, 1.0 / 3.0;
  const Dataset data(x, ResponseSet::matrices(2, {1.0, 0.1 + 0.2, 0.1 + 0.2, 2.0 / 7.0, 1e-300,
                                                    -3.5, -3.5, 123456789.123456789}));
  save_dataset(dir / "x.csv", dir / "y.csv", data);
  const Dataset back = load_dataset(dir / "x.csv", dir / "y.csv", ResponseKind::Matrix);
  REQUIRE(back.covariates() == data.covariates());
  REQUIRE(std::equal(back.responses().values().begin(), back.responses().values().end(),
                     data.responses().values().begin()));
}

TEST_CASE("distribution dataset round-trips") {
  const fs::path dir = scratch("roundtrip_dist");
  Rng rng(1);
  const auto sample = gen_dist_dgp(6, DistributionParams{}, rng);
  save_dataset(dir / "x.csv", dir / "y.csv", sample.data);
  const Dataset back = load_dataset(dir / "x.csv", dir / "y.csv", ResponseKind::Distribution);
  REQUIRE(*back.responses().grid() == QuantileGrid::standard());
  REQUIRE(std::equal(back.responses().values().begin(), back.responses().values().end(),
                     sample.data.responses().values().begin()));
}

TEST_CASE("matrix rows must have a square length") {
  const fs::path dir = scratch("shape");
  write_text(dir / "y.csv", "1,2,3,4,5\n1,2,3,4,5\n");
  REQUIRE(code_of([&] { (void)load_responses(dir / "y.csv", ResponseKind::Matrix); }) ==
          ErrorCode::ShapeError);
  write_text(dir / "y2.csv", "1,0,0,1\n1,0,0\n");
  REQUIRE(code_of([&] { (void)load_responses(dir / "y2.csv", ResponseKind::Matrix); }) ==
          ErrorCode::ShapeError);
}

TEST_CASE("asymmetric matrices are rejected") {
  const fs::path dir = scratch("asym");
  write_text(dir / "y.csv", "1,0,0,1\n1,0.5,0.2,1\n");
  REQUIRE(code_of([&] { (void)load_responses(dir / "y.csv", ResponseKind::Matrix); }) ==
          ErrorCode::InvariantError);
}

TEST_CASE("decreasing quantiles name the offending row") {
  const fs::path dir = scratch("monotone");
  write_text(dir / "y.csv", "0.25,0.5,0.75\n0,1,2\n0,2,1\n");
  const auto f = [&] { (void)load_responses(dir / "y.csv", ResponseKind::Distribution); };
  REQUIRE(code_of(f) == ErrorCode::InvariantError);
  REQUIRE(message_of(f).find("observation 2") != std::string::npos);
}

TEST_CASE("parse errors report line and column") {
  const fs::path dir = scratch("parse");
  write_text(dir / "x.csv", "a,b\n1,2\n3,oops\n");
  const auto f = [&] { (void)load_covariates(dir / "x.csv"); };
  REQUIRE(code_of(f) == ErrorCode::ParseError);
  REQUIRE(message_of(f).find("line 3 column 2") != std::string::npos);
  REQUIRE(code_of([&] { (void)load_covariates(dir / "missing.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("covariate header is optional") {
  const fs::path dir = scratch("header");
  write_text(dir / "a.csv", "t,s\n1,2\n3,4\n");
  write_text(dir / "b.csv", "1,2\n3,4\n");
  REQUIRE(load_covariates(dir / "a.csv") == load_covariates(dir / "b.csv"));
}

TEST_CASE("quadratic transform appends squares") {
  Eigen::MatrixXd x(2, 2);
  x << 1, 2, 3, 4;
  const Eigen::MatrixXd q = apply_transform(x, CovariateTransform::Quadratic);
  REQUIRE(q.cols() == 4);
  REQUIRE(q(1, 2) == 9.0);
  REQUIRE(q(1, 3) == 16.0);
  REQUIRE(apply_transform(x, CovariateTransform::None) == x);
}

TEST_CASE("doubles are written with 17 significant digits") {
  REQUIRE(format_double(0.1) == "0.10000000000000001");
  REQUIRE(format_double(0.0) == "0");
  REQUIRE(format_double(std::numeric_limits<double>::infinity()) == "inf");
  const Json j = Json{{"gamma", 0.0}, {"bic", std::numeric_limits<double>::infinity()}};
  const std::string text = dump_json(j);
  REQUIRE(text.find("\"gamma\": 0,") != std::string::npos);
  REQUIRE(text.find("\"bic\": \"inf\"") != std::string::npos);
  REQUIRE(nlohmann::json::parse(text).is_object());
}

TEST_CASE("config echo round-trips") {
  RunConfig a;
  a.set("command", "simulate");
  a.set("gamma-ratios", "0,0.5,3");
  a.set("lambda", "0.25");
  a.set("gamma", "0.125");
  a.set("exclude", "1,4");
  a.set("dgp", "distribution-normal");
  a.set("v1", "0.3");
  const fs::path dir = scratch("echo");
  write_text(dir / "c.txt", "# comment\n" + a.echo());
  RunConfig b;
  b.load_file(dir / "c.txt");
  REQUIRE(b.echo() == a.echo());
  REQUIRE(b.grid.gamma_ratios == std::vector<double>{0.0, 0.5, 3.0});
  REQUIRE(code_of([&] { b.set("nonsense", "1"); }) == ErrorCode::InvalidArgument);
  REQUIRE(code_of([&] { b.set("seed", "-1"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("cli tune writes the BIC trace and the selected pair") {
  const fs::path dir = write_toy("tune");
  const std::string base = fmt::format("tune --covariates {} --responses {} --grid-lambda-count 6",
                                       (dir / "x.csv").string(), (dir / "y.csv").string());
  REQUIRE(run_cli(base + " -o " + (dir / "a").string(), dir / "err.txt") == 0);
  REQUIRE(run_cli(base + " -o " + (dir / "b").string(), dir / "err.txt") == 0);
  REQUIRE(same_files(dir / "a", dir / "b"));

  const auto selected = nlohmann::json::parse(read_text(dir / "a" / "selected.json"));
  REQUIRE(selected.contains("gamma"));
  REQUIRE(selected["gamma"].is_number());
  REQUIRE(selected["k_hat"].get<int>() <= 6);

  const std::string trace = read_text(dir / "a" / "bic_trace.csv");
  std::size_t lines = 0;
  std::size_t pos = 0;
  while ((pos = trace.find('\n', pos)) != std::string::npos) {
    ++lines;
    ++pos;
  }
  REQUIRE(lines == 1 + 6 * 5);
}

TEST_CASE("cli flags override the config file") {
  const fs::path dir = write_toy("override");
  write_text(dir / "run.cfg", fmt::format("covariates={}\nresponses={}\nseed=5\nlambda=1000\ngamma=1000\n",
                                          (dir / "x.csv").string(), (dir / "y.csv").string()));
  REQUIRE(run_cli(fmt::format("fit --config {} --seed 9 -o {}", (dir / "run.cfg").string(),
                              (dir / "out").string()),
                  dir / "err.txt") == 0);
  const std::string echo = read_text(dir / "out" / "config.txt");
  REQUIRE(echo.find("seed=9\n") != std::string::npos);
  REQUIRE(echo.find("lambda=1000\n") != std::string::npos);

  // Re-running from the echo reproduces the artifacts.
  REQUIRE(run_cli(fmt::format("fit --config {} -o {}", (dir / "out" / "config.txt").string(),
                              (dir / "again").string()),
                  dir / "err.txt") == 0);
  REQUIRE(same_files(dir / "out", dir / "again"));
  const auto fits = nlohmann::json::parse(read_text(dir / "out" / "fits.json"));
  REQUIRE(fits["points"].size() == 20);
  REQUIRE(fits["tuning"]["source"] == "given");
}

TEST_CASE("cli predict emits absolute error matrices with a truth file") {
  const fs::path dir = write_toy("predict");
  Rng rng(3);
  const auto test = gen_dgp1(3, 3, rng);
  save_dataset(dir / "px.csv", dir / "truth.csv",
               test.data.with_responses(ResponseSet::from_objects(test.truth.targets)));
  REQUIRE(run_cli(fmt::format("predict --covariates {} --responses {} --points {} --truth {} "
                              "--lambda 1000 --gamma 1000 -o {}",
                              (dir / "x.csv").string(), (dir / "y.csv").string(),
                              (dir / "px.csv").string(), (dir / "truth.csv").string(),
                              (dir / "out").string()),
                  dir / "err.txt") == 0);
  for (int k = 0; k < 3; ++k) {
    const std::string csv = read_text(dir / "out" / fmt::format("abs_error_{}.csv", k));
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 3);
  }
  const auto fits = nlohmann::json::parse(read_text(dir / "out" / "fits.json"));
  REQUIRE(fits["points"][0].contains("squared_error"));
}

TEST_CASE("cli simulate sweep has five cells") {
  const fs::path dir = scratch("simulate");
  const std::string args = "simulate --scenarios sweep --n 12 --q 3 --replications 2 "
                           "--grid-lambda-count 4 -o ";
  REQUIRE(run_cli(args + (dir / "a").string(), dir / "err.txt") == 0);
  REQUIRE(run_cli(args + (dir / "b").string() + " --threads 1", dir / "err.txt") == 0);
  REQUIRE(read_text(dir / "a" / "aggregate.json") == read_text(dir / "b" / "aggregate.json"));
  REQUIRE(read_text(dir / "a" / "replicates.csv") == read_text(dir / "b" / "replicates.csv"));
  const auto agg = nlohmann::json::parse(read_text(dir / "a" / "aggregate.json"));
  REQUIRE(agg["cells"].size() == 5);
  REQUIRE(agg["cells"][4]["shift"] == 100);
}

TEST_CASE("cli loo and diagnose") {
  const fs::path dir = write_toy("loo");
  const std::string data = fmt::format("--covariates {} --responses {} --grid-lambda-count 4",
                                       (dir / "x.csv").string(), (dir / "y.csv").string());
  REQUIRE(run_cli("loo " + data + " --exclude 0,1 -o " + (dir / "loo").string(), dir / "err.txt") == 0);
  const auto loo = nlohmann::json::parse(read_text(dir / "loo" / "loo_summary.json"));
  REQUIRE(loo["held_out"] == 18);
  REQUIRE(run_cli("diagnose " + data + " --probes 20 -o " + (dir / "diag").string(), dir / "err.txt") == 0);
  const auto diag = nlohmann::json::parse(read_text(dir / "diag" / "diagnostics.json"));
  REQUIRE(diag["label"] == "empirical lower bounds");
  REQUIRE(diag["L_d_hat"].get<double>() <= 2.0 * diag["D_u_hat"].get<double>() + 1e-9);
}

TEST_CASE("cli failures exit nonzero with a JSON error record") {
  const fs::path dir = scratch("errors");
  REQUIRE(run_cli(fmt::format("fit --covariates {} --responses {} -o {}", (dir / "nope.csv").string(),
                              (dir / "nope.csv").string(), (dir / "out").string()),
                  dir / "err.txt") == static_cast<int>(ErrorCode::IoError));
  const auto rec = nlohmann::json::parse(read_text(dir / "err.txt"));
  REQUIRE(rec["error"] == "IoError");
  REQUIRE(rec["code"] == 12);

  write_text(dir / "x.csv", "1\n2\n");
  write_text(dir / "y.csv", "1,2,3,4,5\n1,2,3,4,5\n");
  REQUIRE(run_cli(fmt::format("tune --covariates {} --responses {} -o {}", (dir / "x.csv").string(),
                              (dir / "y.csv").string(), (dir / "out").string()),
                  dir / "err.txt") == static_cast<int>(ErrorCode::ShapeError));
  REQUIRE(run_cli("fit --lambda abc", dir / "err.txt") == static_cast<int>(ErrorCode::InvalidArgument));
  REQUIRE(nlohmann::json::parse(read_text(dir / "err.txt"))["error"] == "InvalidArgument");
}
