// epsrw: simulate and verify the epsilon-random walk in dynamic reversible
// environments. Subcommands: estimate, sweep, verify.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsrw/cli_commands.hpp"
#include "epsrw/manifest.hpp"

namespace {

struct CommonFlags {
  std::string env_kind = "east";
  std::int64_t L = 32;
  double p = 0.5;
  std::int64_t substeps = 1;
  double eps = 0.1;
  double N = 1000;
  std::int64_t M = 1000;
  std::uint64_t seed = 1;
  std::string mode = "discrete";
  std::string out = ".";
  int workers = 0;
  bool serial = false;
  std::string config_path;
};

epsrw::SimConfig build_config(const CommonFlags& flags, const CLI::App& cmd) {
  epsrw::SimConfig config;
  if (!flags.config_path.empty()) {
    config = nlohmann::json::parse(epsrw::read_text_file(flags.config_path))
                 .get<epsrw::SimConfig>();
  }
  // flags override the config file
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (flags.config_path.empty() || given("--env")) {
    config.env.kind = epsrw::env_kind_from_string(flags.env_kind);
  }
  if (flags.config_path.empty() || given("--L")) config.env.L = flags.L;
  if (flags.config_path.empty() || given("--p")) config.env.p = flags.p;
  if (flags.config_path.empty() || given("--substeps")) config.env.substeps_k = flags.substeps;
  if (flags.config_path.empty() || given("--eps")) config.epsilon = flags.eps;
  if (flags.config_path.empty() || given("--N")) config.horizon = flags.N;
  if (flags.config_path.empty() || given("--M")) config.trials = flags.M;
  if (flags.config_path.empty() || given("--seed")) config.seed = flags.seed;
  if (flags.config_path.empty() || given("--mode")) {
    config.mode = epsrw::time_mode_from_string(flags.mode);
  }
  config.validate();
  return config;
}

epsrw::ExecPolicy build_policy(const CommonFlags& flags) {
  epsrw::ExecPolicy policy;
  policy.mode = flags.serial ? epsrw::ExecMode::serial : epsrw::ExecMode::openmp;
  policy.workers = flags.workers;
  return policy;
}

void add_common_flags(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("--config", flags.config_path, "JSON config file; flags override its fields");
  cmd.add_option("--env", flags.env_kind,
                 "environment kind: frozen-bernoulli | iid-refresh | ssep-random-scan | "
                 "east-random-scan (short: frozen | iid | ssep | east)");
  cmd.add_option("--L", flags.L, "ring size");
  cmd.add_option("--p", flags.p, "occupation density in [0,1]");
  cmd.add_option("--substeps", flags.substeps, "environment sub-updates per walker step");
  cmd.add_option("--eps", flags.eps, "walk bias epsilon in [-1/2, 1/2]");
  cmd.add_option("--N", flags.N, "horizon: steps (discrete) or time (continuous)");
  cmd.add_option("--M", flags.M, "number of Monte Carlo trials");
  cmd.add_option("--seed", flags.seed, "master seed, recorded in the manifest");
  cmd.add_option("--mode", flags.mode, "discrete | continuous");
  cmd.add_option("--out", flags.out, "output directory");
  cmd.add_option("--workers", flags.workers, "worker threads (0 = machine parallelism)");
  cmd.add_flag("--serial", flags.serial, "run on the serial reference path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epsilon-random-walk simulator and verification lab"};
  app.require_subcommand(1);

  CommonFlags est_flags;
  std::int64_t dump_paths = 0;
  CLI::App* est = app.add_subcommand("estimate", "Monte Carlo speed estimate with manifest");
  add_common_flags(*est, est_flags);
  est->add_option("--dump-paths", dump_paths, "also write the first K trial trajectories");

  CommonFlags sweep_flags;
  std::vector<double> eps_list;
  std::string eps_range;
  CLI::App* sweep = app.add_subcommand("sweep", "speed estimates over an epsilon grid");
  add_common_flags(*sweep, sweep_flags);
  sweep->add_option("--eps-list", eps_list, "explicit epsilon grid")->delimiter(',');
  sweep->add_option("--eps-range", eps_range, "grid as min:max:step, e.g. -0.4:0.4:0.1");

  std::string suite;
  std::uint64_t verify_seed = 1;
  int verify_workers = 0;
  bool verify_serial = false;
  std::int64_t dump_pairs = 0;
  std::string verify_out = ".";
  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite,
                     "non-crossing | backward-law | detailed-balance | oracle-antisymmetry | "
                     "continuous-reduction")
      ->required();
  verify->add_option("--seed", verify_seed, "suite seed");
  verify->add_option("--workers", verify_workers, "worker threads (0 = machine parallelism)");
  verify->add_flag("--serial", verify_serial, "run on the serial reference path");
  verify->add_option("--dump-pairs", dump_pairs,
                     "non-crossing only: write the first K coupled pairs to pairs.csv");
  verify->add_option("--out", verify_out, "output directory for dumps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (est->parsed()) {
      const auto config = build_config(est_flags, *est);
      const auto out = epsrw::cmd_estimate(config, est_flags.out, build_policy(est_flags), dump_paths);
      std::cout << epsrw::dump_json(out.report);
      return 0;
    }
    if (sweep->parsed()) {
      const auto base = build_config(sweep_flags, *sweep);
      std::vector<double> grid = eps_list;
      if (!eps_range.empty()) {
        double lo, hi, step;
        if (std::sscanf(eps_range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0) {
          throw std::invalid_argument("sweep: --eps-range must be min:max:step with step > 0");
        }
        for (double e = lo; e <= hi + 1e-12; e += step) grid.push_back(e);
      }
      const auto out = epsrw::cmd_sweep(base, grid, sweep_flags.out, build_policy(sweep_flags));
      std::cout << epsrw::dump_json(out.report);
      return 0;
    }
    if (verify->parsed()) {
      epsrw::ExecPolicy policy;
      policy.mode = verify_serial ? epsrw::ExecMode::serial : epsrw::ExecMode::openmp;
      policy.workers = verify_workers;
      return epsrw::cmd_verify(suite, verify_seed, policy, std::cout, dump_pairs, verify_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
