#pragma once

// Run configuration and the command driver behind the robfrechet executable.
//
// A configuration is a set of key=value settings. They come from an optional
// file (one setting per line, '#' starts a comment) and then from command-line
// flags, which win. Every run echoes its effective settings to config.txt in
// the output directory; feeding that file back reproduces the run.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robfrechet/errors.hpp"
#include "robfrechet/io.hpp"
#include "robfrechet/regression.hpp"
#include "robfrechet/simulation.hpp"
#include "robfrechet/tuning.hpp"

namespace robfrechet {

enum class Command { Fit, Predict, Tune, Simulate, Loo, Diagnose };

std::string_view command_name(Command c) noexcept;
Command parse_command(std::string_view name);

struct RunConfig {
  Command command = Command::Fit;

  // Data files (fit, predict, tune, loo, diagnose).
  std::filesystem::path covariates;
  std::filesystem::path responses;
  ResponseKind response_kind = ResponseKind::Matrix;
  CovariateTransform covariate_transform = CovariateTransform::None;
  std::filesystem::path points;  // predict: evaluation covariates
  std::filesystem::path truth;   // predict: responses at those covariates
  std::filesystem::path output = ".";

  // Tuning pair; when absent fit/predict/diagnose select it by BIC.
  std::optional<double> lambda;
  std::optional<double> gamma;
  FitConfig fit;
  GridSpec grid;

  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0 keeps the default worker count

  // simulate
  ScenarioSpec scenario;
  std::string scenarios = "single";  // single | sweep

  // loo: indices (0-based) never held out
  std::vector<std::size_t> exclude;

  // diagnose
  std::vector<double> point;  // empty means the covariate mean
  std::size_t probes = 200;

  // Applies one setting; unknown keys and malformed values throw
  // InvalidArgument.
  void set(const std::string& key, const std::string& value);
  // key=value lines; blank lines and '#' comments are ignored.
  void load_file(const std::filesystem::path& path);
  // Effective settings in key=value form (output and threads excluded, as
  // they do not change results).
  std::string echo() const;
  void validate() const;
};

// Keys accepted by RunConfig::set, in echo order.
const std::vector<std::string>& config_keys();

// Executes the command and writes its artifacts under config.output.
void run(const RunConfig& config);

// JSON error record written to stderr by the executable.
std::string error_record(ErrorCode code, const std::string& message);

}  // namespace robfrechet
