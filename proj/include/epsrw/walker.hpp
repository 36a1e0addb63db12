#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsrw/environment.hpp"
#include "epsrw/rng.hpp"

namespace epsrw {

enum class TimeMode { discrete, continuous };

std::string to_string(TimeMode mode);
TimeMode time_mode_from_string(const std::string& name);

// Full experiment description.
struct SimConfig {
  double epsilon = 0.0;
  EnvironmentSpec env;
  double horizon = 1;          // steps (discrete) or real time (continuous)
  std::int64_t trials = 1;     // M
  std::uint64_t seed = 1;
  TimeMode mode = TimeMode::discrete;

  // Discrete-mode horizon as a step count; requires an integral value.
  std::int64_t steps() const;
  void validate() const;
};

void to_json(nlohmann::json& j, const SimConfig& c);
void from_json(const nlohmann::json& j, SimConfig& c);

struct Trajectory {
  std::int64_t start = 0;
  std::vector<std::int64_t> positions;  // index = step; positions[0] == start
  std::vector<double> jump_times;       // continuous mode only; one per jump

  std::int64_t steps() const { return static_cast<std::int64_t>(positions.size()) - 1; }
  std::int64_t end() const { return positions.back(); }
};

// The direction an epsilon-walk takes on a site of the given occupancy:
// +1 iff (occupied and u <= 1/2 + eps) or (empty and u <= 1/2 - eps).
inline int direction(bool occupied, double u, double epsilon) noexcept {
  const double threshold = occupied ? 0.5 + epsilon : 0.5 - epsilon;
  return u <= threshold ? +1 : -1;
}

// Discrete-time walk on a prebuilt field. The step at time n reads the
// environment and the uniform at the walker's current site:
//   X_{n+1} = X_n + direction(eta_n(X_n), U_{X_n, n}, eps).
// walk_src must be the walk-uniforms stream; x0 may be any integer.
Trajectory run_discrete(const OccupancyField& field, const RandomSource& walk_src, double epsilon,
                        std::int64_t x0, std::int64_t N);

// Endpoint-only variant that evolves the environment in lockstep with the
// walker instead of materialising the field. Consumes the exact same
// randomness as evolve_discrete + run_discrete (counter-based streams), so
// the result is bit-identical; unit tests pin that equality.
std::int64_t final_position_discrete(const EnvironmentSpec& spec, const SourceBundle& sources,
                                     double epsilon, std::int64_t x0, std::int64_t N);

struct ContinuousRun {
  Trajectory traj;            // jump_times[k] = T_k, positions[k+1] = X_{T_k}
  std::vector<Config> sigma;  // environment configuration seen at each jump
  double horizon = 0.0;
};

// Continuous-time walk: the walker jumps at the times of a PPP(1) drawn from
// the poisson stream; the environment runs on its own event clock (rate
// substeps_k per site/edge) from the environment stream; directions use the
// per-event uniforms U_n of the walk stream.
ContinuousRun run_continuous(const EnvironmentSpec& spec, const SourceBundle& sources,
                             double epsilon, std::int64_t x0, double horizon);

struct EmbeddedChain {
  Trajectory traj;            // discrete-time view: one step per jump
  std::vector<Config> sigma;  // sigma[k] drives step k
};

// Jump-time embedding: positions at event times plus the observed
// environment chain sigma_n. The result obeys all discrete Trajectory
// invariants (nearest-neighbor steps, parity).
EmbeddedChain embed_at_jump_times(const ContinuousRun& run);

// Environment alone, run in continuous time and observed at the walker's
// PPP(1) event times: rows are sigma_0 .. sigma_N. This is the embedded
// environment process, usable anywhere an OccupancyField is.
OccupancyField embedded_environment_field(const EnvironmentSpec& spec, const SourceBundle& sources,
                                          std::int64_t N);

}  // namespace epsrw
