#include <cstdio>
#include <exception>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "robfrechet/cli.hpp"
#include "robfrechet/errors.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--covariates", "covariates", "covariate CSV"},
    {"--responses", "responses", "response CSV"},
    {"--kind", "kind", "matrix | distribution"},
    {"--covariate-transform", "covariate_transform", "none | quadratic"},
    {"--points", "points", "evaluation covariates CSV (predict)"},
    {"--truth", "truth", "responses at the evaluation points (predict)"},
    {"--lambda", "lambda", "penalty on |1 - W|"},
    {"--gamma", "gamma", "penalty on (1 - W)^2"},
    {"--epsilon", "epsilon", "convergence threshold on d(u_next, u)"},
    {"--max-iter", "max_iter", "iteration cap"},
    {"--grid-lambda-count", "grid_lambda_count", "lambda values in the tuning grid"},
    {"--grid-exponent", "grid_exponent", "exponent of the lambda grid"},
    {"--gamma-ratios", "gamma_ratios", "comma-separated gamma / lambda ratios"},
    {"--seed", "seed", "random seed"},
    {"--dgp", "dgp", "matrix-beta | matrix-lognormal | distribution-normal"},
    {"--n", "n", "sample size (simulate)"},
    {"--q", "q", "matrix dimension (simulate)"},
    {"--n-test", "n_test", "test points per replicate, 0 means n"},
    {"--replications", "replications", "Monte Carlo replicates"},
    {"--contamination", "contamination", "contaminated proportion"},
    {"--shift", "shift", "additive outlier shift"},
    {"--scenarios", "scenarios", "single | sweep"},
    {"--exclude", "exclude", "indices never held out (loo)"},
    {"--point", "point", "comma-separated covariate vector (diagnose)"},
    {"--probes", "probes", "probe count (diagnose)"},
    {"--threads", "threads", "worker threads"},
    {"--output,-o", "output", "output directory"},
};

int report(robfrechet::ErrorCode code, const std::string& message) {
  std::fprintf(stderr, "%s\n", robfrechet::error_record(code, message).c_str());
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust global Frechet regression"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::vector<std::string> extra;
  app.add_option("--config,-c", config_file, "key=value settings file (flags win)");
  app.add_option("--set", extra, "extra key=value setting, repeatable");

  std::map<std::string, CLI::Option*> options;
  std::vector<std::string> storage(std::size(kFlags));
  for (std::size_t i = 0; i < std::size(kFlags); ++i) {
    options[kFlags[i].key] = app.add_option(kFlags[i].flag, storage[i], kFlags[i].help);
  }
  for (const char* name : {"fit", "predict", "tune", "simulate", "loo", "diagnose"}) {
    app.add_subcommand(name);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(robfrechet::ErrorCode::InvalidArgument, e.what());
  }

  try {
    robfrechet::RunConfig config;
    if (!config_file.empty()) config.load_file(config_file);
    config.set("command", app.get_subcommands().front()->get_name());
    for (const std::string& kv : extra) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        return report(robfrechet::ErrorCode::InvalidArgument, "--set expects key=value, got " + kv);
      }
      config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
      if (options[kFlags[i].key]->count() > 0) config.set(kFlags[i].key, storage[i]);
    }
    robfrechet::run(config);
  } catch (const robfrechet::Error& e) {
    return report(e.code(), e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n",
                 nlohmann::json{{"error", "InternalError"}, {"code", 1}, {"message", e.what()}}
                     .dump()
                     .c_str());
    return 1;
  }
  return 0;
}
