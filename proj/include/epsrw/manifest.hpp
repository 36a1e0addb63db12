#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsrw/walker.hpp"

namespace epsrw {

inline constexpr const char* kCodeVersion = "epsrw 0.1.0";

// Everything needed to reproduce a run: replaying config + seed yields the
// identical result payload, byte for byte. Timestamps live outside the
// payload for exactly that reason.
struct RunManifest {
  SimConfig config;
  std::uint64_t seed = 0;
  std::string code_version = kCodeVersion;
  std::string started;
  std::string finished;
  nlohmann::json result;
};

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

std::string iso8601_now();

// Canonical serialization used for every emitted JSON document: sorted keys
// (nlohmann object order), two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

// Shortest round-trip decimal formatting, stable across runs.
std::string format_double(double v);

// CSV rows "trial,step,position" (discrete) or "trial,time,position"
// (continuous, jump events; the start is reported at time 0).
void append_trajectory_csv(std::string& out, std::int64_t trial, const Trajectory& traj);
std::string trajectory_csv_header(TimeMode mode);

// Coupled pairs share the trajectory format with a pair id and a role
// column: "pair,role,step,position", role in {forward, backward}.
void append_pair_csv(std::string& out, std::int64_t pair_id, const Trajectory& forward,
                     const Trajectory& backward);
inline constexpr const char* kPairCsvHeader = "pair,role,step,position";

struct SweepRow {
  double epsilon = 0.0;
  double mean = 0.0;
  double se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<double> exact;  // oracle speed where admissible
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace epsrw
