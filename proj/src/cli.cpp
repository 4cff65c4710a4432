#include "robfrechet/cli.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "robfrechet/diagnostics.hpp"
#include "robfrechet/errors.hpp"
#include "robfrechet/parallel.hpp"

namespace robfrechet {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  if (value.empty()) return out;
  for (;;) {
    const std::size_t comma = value.find(',', start);
    out.push_back(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    return parse_double(value, key);
  } catch (const Error& e) {
    fail(ErrorCode::InvalidArgument, e.what());
  }
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    fail(ErrorCode::InvalidArgument,
         fmt::format("{}: expected a non-negative integer, got '{}'", key, value));
  }
  return v;
}

std::vector<double> to_doubles(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split_list(value)) out.push_back(to_double(key, item));
  return out;
}

std::string join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

Json to_json(std::span<const double> values) {
  Json a = Json::array();
  for (double v : values) a.push_back(v);
  return a;
}

Json to_json(const Eigen::VectorXd& v) {
  return to_json(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

Json to_json(const Summary& s) {
  return Json{{"mean", s.mean}, {"standard_error", s.standard_error}, {"count", s.count}};
}

fs::path prepare_output(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec) {
    fail(ErrorCode::IoError,
         fmt::format("cannot create output directory {}: {}", config.output.string(), ec.message()));
  }
  write_text(config.output / "config.txt", config.echo());
  return config.output;
}

Dataset load(const RunConfig& c) {
  return load_dataset(c.covariates, c.responses, c.response_kind, c.covariate_transform);
}

struct ResolvedPair {
  TuningPair pair;
  std::string source;
};

ResolvedPair resolve_pair(const RunConfig& c, const Dataset& data) {
  if (c.lambda && c.gamma) {
    TuningPair t{*c.lambda, *c.gamma};
    t.validate();
    return {t, "given"};
  }
  return {select_tuning(data, c.grid, c.fit).pair, "bic"};
}

Json tuning_json(const ResolvedPair& r) {
  return Json{{"lambda", r.pair.lambda}, {"gamma", r.pair.gamma}, {"source", r.source}};
}

Json fit_json(std::size_t index, const FitResult& fit, const ResponseSet& ys) {
  Json j;
  j["index"] = index;
  j["x"] = to_json(fit.evaluation_point);
  j["estimate"] = to_json(ys.flatten(fit.estimate));
  j["weights"] = to_json(fit.weights);
  j["leverages"] = to_json(fit.leverages);
  j["r"] = to_json(fit.weighted_sq_distances);
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  return j;
}

Json response_shape(const ResponseSet& ys) {
  Json j;
  j["kind"] = std::string(kind_name(ys.kind()));
  if (ys.kind() == ResponseKind::Matrix) {
    j["dim"] = ys.dim();
  } else {
    j["grid"] = to_json(ys.grid()->levels());
  }
  return j;
}

void cmd_fit(const RunConfig& c, const fs::path& out) {
  const Dataset data = load(c);
  const ResolvedPair pair = resolve_pair(c, data);
  std::vector<Eigen::VectorXd> points;
  for (std::size_t i = 0; i < data.size(); ++i) points.push_back(data.covariate(i));
  const std::vector<FitResult> fits = predict(data, pair.pair, c.fit, points);

  Json doc;
  doc["tuning"] = tuning_json(pair);
  doc["response"] = response_shape(data.responses());
  Json records = Json::array();
  for (std::size_t i = 0; i < fits.size(); ++i) records.push_back(fit_json(i, fits[i], data.responses()));
  doc["points"] = std::move(records);
  write_text(out / "fits.json", dump_json(doc));
}

void cmd_predict(const RunConfig& c, const fs::path& out) {
  if (c.points.empty()) fail(ErrorCode::InvalidArgument, "predict needs points=<covariate csv>");
  const Dataset data = load(c);
  const ResponseSet& ys = data.responses();
  const Eigen::MatrixXd px = apply_transform(load_covariates(c.points), c.covariate_transform);
  if (static_cast<std::size_t>(px.cols()) != data.covariate_dim()) {
    fail(ErrorCode::DimensionMismatch,
         fmt::format("points have {} columns but the covariates have {}", px.cols(),
                     data.covariate_dim()));
  }
  std::optional<ResponseSet> truth;
  if (!c.truth.empty()) {
    truth = load_responses(c.truth, c.response_kind);
    if (truth->size() != static_cast<std::size_t>(px.rows()) || truth->width() != ys.width()) {
      fail(ErrorCode::ShapeError, "truth file does not match the points and response shape");
    }
    if (ys.kind() == ResponseKind::Distribution && !(*truth->grid() == *ys.grid())) {
      fail(ErrorCode::GridMismatch, "truth file uses a different quantile grid");
    }
  }

  const ResolvedPair pair = resolve_pair(c, data);
  std::vector<Eigen::VectorXd> points;
  for (Eigen::Index i = 0; i < px.rows(); ++i) points.push_back(px.row(i).transpose());
  const std::vector<FitResult> fits = predict(data, pair.pair, c.fit, points);

  Json doc;
  doc["tuning"] = tuning_json(pair);
  doc["response"] = response_shape(ys);
  Json records = Json::array();
  double total = 0.0;
  for (std::size_t k = 0; k < fits.size(); ++k) {
    Json rec = fit_json(k, fits[k], ys);
    if (truth) {
      const std::vector<double> est = ys.flatten(fits[k].estimate);
      const auto t = truth->row(k);
      const double sq = ys.squared_distance(est, t);
      total += sq;
      rec["squared_error"] = sq;

      std::string csv;
      if (ys.kind() == ResponseKind::Matrix) {
        const std::size_t q = ys.dim();
        for (std::size_t a = 0; a < q; ++a) {
          for (std::size_t b = 0; b < q; ++b) {
            if (b) csv += ",";
            csv += format_double(std::abs(est[a * q + b] - t[a * q + b]));
          }
          csv += "\n";
        }
      } else {
        csv += join(ys.grid()->levels()) + "\n";
        for (std::size_t j = 0; j < est.size(); ++j) {
          if (j) csv += ",";
          csv += format_double(std::abs(est[j] - t[j]));
        }
        csv += "\n";
      }
      write_text(out / fmt::format("abs_error_{}.csv", k), csv);
    }
    records.push_back(std::move(rec));
  }
  doc["points"] = std::move(records);
  if (truth && !fits.empty()) doc["mean_squared_error"] = total / static_cast<double>(fits.size());
  write_text(out / "fits.json", dump_json(doc));
}

void cmd_tune(const RunConfig& c, const fs::path& out) {
  const Dataset data = load(c);
  const double lmax = lambda_max(data, c.fit);
  const std::vector<TuningPair> grid = build_grid(lmax, c.grid);
  const std::vector<BICRecord> records = evaluate_grid(data, grid, c.fit);

  std::string csv = "lambda,gamma,bic,k_hat,mean_weighted_residual,feasible,degenerate\n";
  for (const BICRecord& r : records) {
    csv += fmt::format("{},{},{},{},{},{},{}\n", format_double(r.pair.lambda),
                       format_double(r.pair.gamma), format_double(r.bic), r.k_hat,
                       format_double(r.mean_weighted_residual), r.feasible ? 1 : 0,
                       r.degenerate ? 1 : 0);
  }
  write_text(out / "bic_trace.csv", csv);

  const auto best = best_record(records);
  if (!best) {
    fail(ErrorCode::NoFeasiblePair,
         fmt::format("none of the {} tuning pairs keeps at most {} outliers with a finite BIC",
                     records.size(), max_outliers(data.size())));
  }
  const BICRecord& r = records[*best];
  Json doc;
  doc["lambda"] = r.pair.lambda;
  doc["gamma"] = r.pair.gamma;
  doc["bic"] = r.bic;
  doc["k_hat"] = r.k_hat;
  doc["lambda_max"] = lmax;
  doc["grid_size"] = records.size();
  doc["n"] = data.size();
  doc["max_outliers"] = max_outliers(data.size());
  Json flagged = Json::array();
  for (std::size_t i = 0; i < r.observation_weights.size(); ++i) {
    if (r.observation_weights[i] < 1.0 - c.fit.weight_floor_tolerance) flagged.push_back(i);
  }
  doc["flagged"] = std::move(flagged);
  write_text(out / "selected.json", dump_json(doc));
}

void cmd_simulate(const RunConfig& c, const fs::path& out) {
  std::vector<std::pair<double, double>> cells;
  if (c.scenarios == "sweep") {
    cells = {{0.0, 0.0}, {0.1, 50.0}, {0.1, 100.0}, {0.2, 50.0}, {0.2, 100.0}};
  } else {
    cells = {{c.scenario.contamination_proportion, c.scenario.shift}};
  }

  std::string csv =
      "cell,proportion,shift,replicate,failed,error_standard,error_robust,lambda,gamma,k_hat,"
      "contaminated,contaminated_zero_weight,robust_fallbacks\n";
  Json doc;
  doc["dgp"] = std::string(dgp_name(c.scenario.dgp));
  doc["n"] = c.scenario.n;
  if (c.scenario.dgp != Dgp::DistributionNormal) doc["q"] = c.scenario.q;
  doc["n_test"] = c.scenario.test_count();
  doc["replications"] = c.scenario.replications;
  doc["seed"] = c.seed;
  doc["error"] = c.scenario.dgp == Dgp::DistributionNormal ? "MISE" : "MSE";
  Json cell_docs = Json::array();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    ScenarioSpec spec = c.scenario;
    spec.contamination_proportion = cells[k].first;
    spec.shift = cells[k].second;
    const ScenarioResult res = run_scenario(spec);
    for (const ReplicateReport& r : res.replicates) {
      csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", k, format_double(spec.contamination_proportion),
                         format_double(spec.shift), r.replicate, r.failed ? 1 : 0,
                         format_double(r.error_standard), format_double(r.error_robust),
                         format_double(r.selected.lambda), format_double(r.selected.gamma), r.k_hat,
                         r.contaminated, r.contaminated_zero_weight, r.robust_fallbacks);
    }
    Json cell;
    cell["proportion"] = spec.contamination_proportion;
    cell["shift"] = spec.shift;
    cell["standard"] = to_json(res.standard);
    cell["robust"] = to_json(res.robust);
    cell["lambda"] = to_json(res.lambda);
    cell["gamma"] = to_json(res.gamma);
    cell["failed"] = res.failed;
    std::size_t fallbacks = 0;
    for (const ReplicateReport& r : res.replicates) fallbacks += r.robust_fallbacks;
    cell["robust_fallbacks"] = fallbacks;
    cell_docs.push_back(std::move(cell));
  }
  doc["cells"] = std::move(cell_docs);
  write_text(out / "replicates.csv", csv);
  write_text(out / "aggregate.json", dump_json(doc));
}

void cmd_loo(const RunConfig& c, const fs::path& out) {
  const Dataset data = load(c);
  const LooResult res = leave_one_out(data, c.grid, c.fit, HoldoutPolicy{c.exclude});
  std::string csv =
      "index,error_standard,error_robust,lambda,gamma,tuning_failed,robust_fallback\n";
  std::size_t failed = 0;
  std::size_t fallbacks = 0;
  for (const LooPoint& p : res.points) {
    failed += p.tuning_failed ? 1 : 0;
    fallbacks += p.robust_fallback ? 1 : 0;
    csv += fmt::format("{},{},{},{},{},{},{}\n", p.index, format_double(p.error_standard),
                       format_double(p.error_robust), format_double(p.selected.lambda),
                       format_double(p.selected.gamma), p.tuning_failed ? 1 : 0,
                       p.robust_fallback ? 1 : 0);
  }
  write_text(out / "loo_points.csv", csv);
  Json doc;
  doc["n"] = data.size();
  doc["held_out"] = res.points.size();
  doc["standard"] = to_json(res.standard);
  doc["robust"] = to_json(res.robust);
  doc["tuning_failed"] = failed;
  doc["robust_fallbacks"] = fallbacks;
  write_text(out / "loo_summary.json", dump_json(doc));
}

void cmd_diagnose(const RunConfig& c, const fs::path& out) {
  const Dataset data = load(c);
  Eigen::VectorXd x = data.covariate_mean();
  if (!c.point.empty()) {
    if (c.point.size() != data.covariate_dim()) {
      fail(ErrorCode::DimensionMismatch,
           fmt::format("point has {} values but the covariates have {} columns", c.point.size(),
                       data.covariate_dim()));
    }
    x = Eigen::Map<const Eigen::VectorXd>(c.point.data(), static_cast<Eigen::Index>(c.point.size()));
  }
  const ResolvedPair pair = resolve_pair(c, data);
  Rng rng = replicate_rng(c.seed, 0);
  const RegularityReport rep = estimate_regularity(data, x, pair.pair, c.fit, c.probes, rng);

  Json doc;
  doc["label"] = rep.label;
  doc["tuning"] = tuning_json(pair);
  doc["x"] = to_json(x);
  doc["n"] = data.size();
  doc["probes"] = rep.probes;
  doc["D_u_hat"] = rep.D_u_hat;
  doc["D_g_hat"] = rep.D_g_hat;
  doc["xi_hat"] = rep.xi_hat;
  doc["L_d_hat"] = rep.L_d_hat;
  doc["C_u_hat"] = rep.C_u_hat;
  doc["rho_hat"] = rep.rho_hat;
  doc["rho_empirical"] = rep.rho_empirical;
  doc["iterations"] = rep.iterations;
  doc["converged"] = rep.converged;
  const FitResult fit = fit_robust(data, x, pair.pair, c.fit);
  if (fit.iterations > 0) {
    const ContractionTrace trace = contraction_trace(fit);
    doc["contraction_ratios"] = to_json(trace.ratios);
    doc["envelope_rate"] = trace.envelope_rate;
    doc["geometric_envelope"] = trace.geometric_envelope;
  }
  write_text(out / "diagnostics.json", dump_json(doc));
}

}  // namespace

std::string_view command_name(Command c) noexcept {
  switch (c) {
    case Command::Fit: return "fit";
    case Command::Predict: return "predict";
    case Command::Tune: return "tune";
    case Command::Simulate: return "simulate";
    case Command::Loo: return "loo";
    case Command::Diagnose: return "diagnose";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::Fit, Command::Predict, Command::Tune, Command::Simulate, Command::Loo,
                    Command::Diagnose}) {
    if (name == command_name(c)) return c;
  }
  fail(ErrorCode::InvalidArgument, fmt::format("unknown command '{}'", name));
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "command",     "covariates",  "responses",   "kind",         "covariate_transform",
      "points",      "truth",       "lambda",      "gamma",        "epsilon",
      "max_iter",    "weight_tolerance",           "grid_lambda_count", "grid_exponent",
      "gamma_ratios", "seed",       "dgp",         "n",            "q",
      "n_test",      "replications", "contamination", "shift",     "beta",
      "mu0",         "dist_beta",   "v1",          "sigma0",       "gamma_sigma",
      "v2",          "scenarios",   "exclude",     "point",        "probes",
      "output",      "threads"};
  return keys;
}

void RunConfig::set(const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '-', '_');
  DistributionParams& dist = scenario.params.distribution;

  if (key == "command") command = parse_command(value);
  else if (key == "covariates") covariates = value;
  else if (key == "responses") responses = value;
  else if (key == "kind") response_kind = parse_kind(value);
  else if (key == "covariate_transform") covariate_transform = parse_transform(value);
  else if (key == "points") points = value;
  else if (key == "truth") truth = value;
  else if (key == "output") output = value.empty() ? fs::path(".") : fs::path(value);
  else if (key == "lambda") lambda = value.empty() ? std::nullopt : std::optional(to_double(key, value));
  else if (key == "gamma") gamma = value.empty() ? std::nullopt : std::optional(to_double(key, value));
  else if (key == "epsilon") fit.epsilon = to_double(key, value);
  else if (key == "max_iter") fit.max_iterations = static_cast<int>(to_unsigned(key, value));
  else if (key == "weight_tolerance") fit.weight_floor_tolerance = to_double(key, value);
  else if (key == "grid_lambda_count") grid.lambda_count = static_cast<int>(to_unsigned(key, value));
  else if (key == "grid_exponent") grid.exponent = to_double(key, value);
  else if (key == "gamma_ratios") grid.gamma_ratios = to_doubles(key, value);
  else if (key == "seed") seed = to_unsigned(key, value);
  else if (key == "threads") threads = to_unsigned(key, value);
  else if (key == "dgp") scenario.dgp = parse_dgp(value);
  else if (key == "n") scenario.n = to_unsigned(key, value);
  else if (key == "q") scenario.q = to_unsigned(key, value);
  else if (key == "n_test") scenario.n_test = to_unsigned(key, value);
  else if (key == "replications") scenario.replications = to_unsigned(key, value);
  else if (key == "contamination") scenario.contamination_proportion = to_double(key, value);
  else if (key == "shift") scenario.shift = to_double(key, value);
  else if (key == "beta") scenario.params.beta = to_doubles(key, value);
  else if (key == "mu0") dist.mu0 = to_double(key, value);
  else if (key == "dist_beta") dist.beta = to_double(key, value);
  else if (key == "v1") dist.v1 = to_double(key, value);
  else if (key == "sigma0") dist.sigma0 = to_double(key, value);
  else if (key == "gamma_sigma") dist.gamma_sigma = to_double(key, value);
  else if (key == "v2") dist.v2 = to_double(key, value);
  else if (key == "scenarios") {
    if (value != "single" && value != "sweep") {
      fail(ErrorCode::InvalidArgument, "scenarios must be single or sweep");
    }
    scenarios = value;
  } else if (key == "exclude") {
    exclude.clear();
    for (const std::string& item : split_list(value)) exclude.push_back(to_unsigned(key, item));
  } else if (key == "point") point = to_doubles(key, value);
  else if (key == "probes") probes = to_unsigned(key, value);
  else fail(ErrorCode::InvalidArgument, fmt::format("unknown setting '{}'", raw_key));
}

void RunConfig::load_file(const fs::path& path) {
  const std::string text = read_text(path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::ParseError,
           fmt::format("{} line {}: expected key=value", path.string(), line_no));
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    try {
      set(key, value);
    } catch (const Error& e) {
      fail(e.code(), fmt::format("{} line {}: {}", path.string(), line_no, e.what()));
    }
  }
}

std::string RunConfig::echo() const {
  const DistributionParams& dist = scenario.params.distribution;
  std::string out;
  const auto put = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{}={}\n", key, value);
  };
  std::string ex;
  for (std::size_t i = 0; i < exclude.size(); ++i) ex += (i ? "," : "") + std::to_string(exclude[i]);

  put("command", std::string(command_name(command)));
  put("covariates", covariates.string());
  put("responses", responses.string());
  put("kind", std::string(kind_name(response_kind)));
  put("covariate_transform", std::string(transform_name(covariate_transform)));
  put("points", points.string());
  put("truth", truth.string());
  put("lambda", lambda ? format_double(*lambda) : "");
  put("gamma", gamma ? format_double(*gamma) : "");
  put("epsilon", format_double(fit.epsilon));
  put("max_iter", std::to_string(fit.max_iterations));
  put("weight_tolerance", format_double(fit.weight_floor_tolerance));
  put("grid_lambda_count", std::to_string(grid.lambda_count));
  put("grid_exponent", format_double(grid.exponent));
  put("gamma_ratios", join(grid.gamma_ratios));
  put("seed", std::to_string(seed));
  put("dgp", std::string(dgp_name(scenario.dgp)));
  put("n", std::to_string(scenario.n));
  put("q", std::to_string(scenario.q));
  put("n_test", std::to_string(scenario.n_test));
  put("replications", std::to_string(scenario.replications));
  put("contamination", format_double(scenario.contamination_proportion));
  put("shift", format_double(scenario.shift));
  put("beta", join(scenario.params.beta));
  put("mu0", format_double(dist.mu0));
  put("dist_beta", format_double(dist.beta));
  put("v1", format_double(dist.v1));
  put("sigma0", format_double(dist.sigma0));
  put("gamma_sigma", format_double(dist.gamma_sigma));
  put("v2", format_double(dist.v2));
  put("scenarios", scenarios);
  put("exclude", ex);
  put("point", join(point));
  put("probes", std::to_string(probes));
  return out;
}

void RunConfig::validate() const {
  fit.validate();
  grid.validate();
  if (lambda.has_value() != gamma.has_value()) {
    fail(ErrorCode::InvalidArgument, "lambda and gamma must be given together");
  }
  if (lambda) TuningPair{*lambda, *gamma}.validate();
  if (command == Command::Simulate) {
    ScenarioSpec spec = scenario;
    if (scenarios == "sweep") spec.contamination_proportion = 0.2, spec.shift = 100.0;
    spec.validate();
    return;
  }
  if (covariates.empty() || responses.empty()) {
    fail(ErrorCode::InvalidArgument,
         fmt::format("{} needs covariates=<csv> and responses=<csv>", command_name(command)));
  }
  for (const fs::path& p : {covariates, responses}) {
    if (!fs::exists(p)) fail(ErrorCode::IoError, fmt::format("{} does not exist", p.string()));
  }
  if (command == Command::Predict) {
    if (points.empty()) fail(ErrorCode::InvalidArgument, "predict needs points=<csv>");
    if (!fs::exists(points)) fail(ErrorCode::IoError, fmt::format("{} does not exist", points.string()));
    if (!truth.empty() && !fs::exists(truth)) {
      fail(ErrorCode::IoError, fmt::format("{} does not exist", truth.string()));
    }
  }
  if (command == Command::Diagnose && probes < 10) {
    fail(ErrorCode::InvalidArgument, "diagnose needs probes >= 10");
  }
}

void run(const RunConfig& input) {
  RunConfig config = input;
  config.scenario.seed = config.seed;
  config.scenario.grid = config.grid;
  config.scenario.fit = config.fit;
  config.validate();
  if (config.threads > 0) set_worker_count(config.threads);

  const fs::path out = prepare_output(config);
  switch (config.command) {
    case Command::Fit: cmd_fit(config, out); break;
    case Command::Predict: cmd_predict(config, out); break;
    case Command::Tune: cmd_tune(config, out); break;
    case Command::Simulate: cmd_simulate(config, out); break;
    case Command::Loo: cmd_loo(config, out); break;
    case Command::Diagnose: cmd_diagnose(config, out); break;
  }
}

std::string error_record(ErrorCode code, const std::string& message) {
  Json j;
  j["error"] = std::string(error_code_name(code));
  j["code"] = static_cast<int>(code);
  j["message"] = message;
  return j.dump();
}

}  // namespace robfrechet
