#include "epsrw/cli_commands.hpp"

#include <ostream>
#include <stdexcept>

#include "epsrw/coupling.hpp"
#include "epsrw/estimators.hpp"
#include "epsrw/verification.hpp"

namespace epsrw {

namespace {

bool oracle_admissible(const EnvironmentSpec& env) {
  if (env.kind == EnvKind::frozen_bernoulli) return false;
  const bool east = env.kind == EnvKind::east_random_scan || env.kind == EnvKind::east_skew_test;
  return env.L <= (east ? 8 : 7);
}

std::optional<double> oracle_speed(const EnvironmentSpec& env, double epsilon) {
  if (!oracle_admissible(env)) return std::nullopt;
  try {
    return exact_speed(env, epsilon).exact_speed;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

RunManifest start_manifest(const SimConfig& config) {
  RunManifest m;
  m.config = config;
  m.seed = config.seed;
  m.started = iso8601_now();
  return m;
}

void finish_and_write(RunManifest& manifest, const std::filesystem::path& out_dir,
                      EstimateOutput& out) {
  manifest.finished = iso8601_now();
  std::filesystem::create_directories(out_dir);
  out.report_path = out_dir / "report.json";
  out.manifest_path = out_dir / "manifest.json";
  write_text_file(out.report_path, dump_json(out.report));
  write_text_file(out.manifest_path, dump_json(nlohmann::json(manifest)));
}

SweepRow make_row(double epsilon, const SpeedEstimate& est, std::optional<double> exact) {
  return SweepRow{epsilon, est.mean, est.std_error, est.ci_low, est.ci_high, exact};
}

}  // namespace

void require_reporting_trials(const SimConfig& config) {
  if (config.trials < 1000) {
    throw std::invalid_argument(
        "M: at least 1000 trials are required for reporting (the 95% intervals "
        "use the normal approximation)");
  }
}

EstimateOutput cmd_estimate(const SimConfig& config, const std::filesystem::path& out_dir,
                            const ExecPolicy& policy, std::int64_t dump_paths) {
  config.validate();
  require_reporting_trials(config);

  RunManifest manifest = start_manifest(config);
  const SpeedEstimate estimate = estimate_speed(config, policy);
  const std::optional<double> exact = oracle_speed(config.env, config.epsilon);

  EstimateOutput out;
  out.report = nlohmann::json{{"estimate", estimate}};
  if (exact) {
    out.report["exact_speed"] = *exact;
    out.report["oracle_gap"] = estimate.mean - *exact;
  }
  manifest.result = out.report;

  std::filesystem::create_directories(out_dir);
  out.csv_path = out_dir / "estimate.csv";
  write_text_file(out.csv_path, sweep_csv({make_row(config.epsilon, estimate, exact)}));

  if (dump_paths > 0) {
    const std::int64_t count = std::min<std::int64_t>(dump_paths, config.trials);
    std::string csv = trajectory_csv_header(config.mode) + "\n";
    for (std::int64_t i = 0; i < count; ++i) {
      const SourceBundle sources = bundle_for_trial(config.seed, i);
      if (config.mode == TimeMode::discrete) {
        const OccupancyField field =
            evolve_discrete(config.env, sources.environment, config.steps(),
                            sample_stationary(config.env, sources.initial));
        append_trajectory_csv(csv, i, run_discrete(field, sources.walk, config.epsilon, 0,
                                                   config.steps()));
      } else {
        append_trajectory_csv(
            csv, i, run_continuous(config.env, sources, config.epsilon, 0, config.horizon).traj);
      }
    }
    write_text_file(out_dir / "paths.csv", csv);
  }

  finish_and_write(manifest, out_dir, out);
  return out;
}

EstimateOutput cmd_sweep(const SimConfig& base, const std::vector<double>& grid,
                         const std::filesystem::path& out_dir, const ExecPolicy& policy) {
  if (grid.empty()) {
    throw std::invalid_argument("sweep: epsilon grid must not be empty");
  }
  for (double eps : grid) {
    SimConfig probe = base;
    probe.epsilon = eps;
    probe.validate();
  }
  SimConfig reported = base;
  reported.validate();
  require_reporting_trials(base);

  RunManifest manifest = start_manifest(reported);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SimConfig point = base;
    point.epsilon = grid[i];
    point.seed = trial_seed(base.seed, static_cast<std::int64_t>(i));
    const SpeedEstimate est = estimate_speed(point, policy);
    rows.push_back(make_row(grid[i], est, oracle_speed(point.env, point.epsilon)));
  }

  EstimateOutput out;
  out.report = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"epsilon", r.epsilon}, {"mean", r.mean},       {"se", r.se},
                       {"ci_low", r.ci_low},   {"ci_high", r.ci_high}};
    if (r.exact) row["exact_speed"] = *r.exact;
    out.report.push_back(row);
  }
  out.report = nlohmann::json{{"sweep", out.report}};
  manifest.result = out.report;

  std::filesystem::create_directories(out_dir);
  out.csv_path = out_dir / "sweep.csv";
  write_text_file(out.csv_path, sweep_csv(rows));
  finish_and_write(manifest, out_dir, out);
  return out;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const ExecPolicy& policy,
               std::ostream& log, std::int64_t dump_pairs, const std::filesystem::path& out_dir) {
  SuiteResult result;
  if (suite == "non-crossing") {
    result = verify_non_crossing(seed, policy);
    if (dump_pairs > 0) {
      std::filesystem::create_directories(out_dir);
      write_text_file(out_dir / "pairs.csv", dump_non_crossing_pairs(seed, dump_pairs));
      log << "[" << result.name << "] wrote " << (out_dir / "pairs.csv").string() << "\n";
    }
  } else if (suite == "backward-law") {
    result = verify_backward_law(seed, policy);
  } else if (suite == "detailed-balance") {
    result = verify_detailed_balance();
  } else if (suite == "oracle-antisymmetry") {
    result = verify_oracle_antisymmetry();
  } else if (suite == "continuous-reduction") {
    result = verify_continuous_reduction(seed, policy);
  } else {
    throw std::invalid_argument(
        "verify: unknown suite '" + suite +
        "' (expected non-crossing | backward-law | detailed-balance | "
        "oracle-antisymmetry | continuous-reduction)");
  }
  for (const auto& line : result.lines) {
    log << "[" << result.name << "] " << line << "\n";
  }
  log << "[" << result.name << "] " << (result.pass ? "PASS" : "FAIL") << "\n";
  return result.pass ? 0 : 1;
}

}  // namespace epsrw
