#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "epsrw/manifest.hpp"
#include "epsrw/parallel.hpp"
#include "epsrw/walker.hpp"

namespace epsrw {

// Command bodies behind the CLI, factored out so tests can drive them
// directly. They write their artifacts under out_dir and return the result
// payload. Exit-code mapping lives in the CLI main: 0 success,
// 1 verification failure, 2 usage/config error.

struct EstimateOutput {
  nlohmann::json report;
  std::filesystem::path report_path;
  std::filesystem::path manifest_path;
  std::filesystem::path csv_path;
};

// Speed estimate: report.json, manifest.json and a one-row sweep-format CSV.
// dump_paths > 0 additionally writes the first trajectories to paths.csv.
EstimateOutput cmd_estimate(const SimConfig& config, const std::filesystem::path& out_dir,
                            const ExecPolicy& policy = {}, std::int64_t dump_paths = 0);

// One row per epsilon; exact oracle column filled where admissible.
EstimateOutput cmd_sweep(const SimConfig& base, const std::vector<double>& grid,
                         const std::filesystem::path& out_dir, const ExecPolicy& policy = {});

// Runs one named verification suite, logging one line per case.
// Returns the process exit code (0 pass, 1 fail); unknown suite throws
// std::invalid_argument. dump_pairs > 0 writes the first coupled pairs of
// the non-crossing suite to out_dir/pairs.csv.
int cmd_verify(const std::string& suite, std::uint64_t seed, const ExecPolicy& policy,
               std::ostream& log, std::int64_t dump_pairs = 0,
               const std::filesystem::path& out_dir = ".");

// Reporting floor from the normal-approximation design: CI fields are only
// published for M >= 1000.
void require_reporting_trials(const SimConfig& config);

}  // namespace epsrw
