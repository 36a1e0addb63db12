#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "epsrw/parallel.hpp"
#include "epsrw/walker.hpp"

namespace epsrw {

struct SpeedEstimate {
  double mean = 0.0;       // displacement per step (discrete) or per unit time
  double std_error = 0.0;  // sample std / sqrt(M)
  double ci_low = 0.0;     // 95% normal interval
  double ci_high = 0.0;
  std::int64_t trials = 0;
  double horizon = 0.0;
};

void to_json(nlohmann::json& j, const SpeedEstimate& e);

// Monte Carlo speed: M independent trials, each from a fresh stationary
// environment, averaging X_N / N (or X_T / T). Deterministic in
// (config, seed) for either execution mode and any worker count.
SpeedEstimate estimate_speed(const SimConfig& config, const ExecPolicy& policy = {});

// Stationary distribution of the joint (environment, walker position mod L)
// chain and the exact speed 2 eps (2 P[site under walker occupied] - 1).
struct ExactChainResult {
  std::vector<double> stationary;  // over (config index, position) pairs
  double exact_speed = 0.0;
  double occupied_under_walker = 0.0;
  std::int64_t dimension = 0;  // (2^L - [east]) * L
  double residual = 0.0;       // max-norm stationarity defect
};

// Joint step = walker move reading the current configuration, then one
// environment kernel application -- the same sequencing the simulator uses.
// Guards: east L <= 8, other kinds L <= 7; frozen-bernoulli is rejected
// (the joint chain is reducible across field configurations; use
// static_env_solomon_check for static fields).
ExactChainResult exact_speed(const EnvironmentSpec& env, double epsilon);

struct AntisymmetryReport {
  SpeedEstimate v_plus;
  SpeedEstimate v_minus;
  double sum = 0.0;
  double sum_se = 0.0;
  bool pass = false;  // |sum| <= 4 sum_se
};

void to_json(nlohmann::json& j, const AntisymmetryReport& r);

struct AntisymmetryOptions {
  // Run the -eps leg on a different environment. Breaking the pairing like
  // this is the negative control: the test is then expected to fail.
  std::optional<EnvironmentSpec> minus_env;
};

// v(eps) + v(-eps) from two estimate_speed runs with independent seeds.
AntisymmetryReport antisymmetry_test(const SimConfig& config, const ExecPolicy& policy = {},
                                     const AntisymmetryOptions& options = {});

struct SolomonReport {
  double p = 0.0;
  double epsilon = 0.0;
  double expected_rho = 0.0;      // E[(1-omega)/omega], omega = P(step right)
  double expected_inv_rho = 0.0;
  bool ballistic = false;         // nonzero closed-form speed
  bool zero_speed_regime = false;
  double formula_speed = 0.0;     // Solomon speed; 0 in the zero-speed regime
  SpeedEstimate v_plus;
  SpeedEstimate v_minus;
  bool speed_match = false;       // |v_plus - formula| <= 4 SE
  double sum = 0.0;               // v_plus + v_minus
  double sum_se = 0.0;
  bool antisym_pass = false;
};

void to_json(nlohmann::json& j, const SolomonReport& r);

// Walk on a frozen Bernoulli(p) field realized lazily on the infinite
// lattice (no ring), checked against the closed-form static-RWRE speed and
// the antisymmetry identity. Non-ballistic parameters yield a
// zero-speed-regime report rather than an error.
SolomonReport static_env_solomon_check(double p, double epsilon, std::int64_t N, std::int64_t M,
                                       std::uint64_t seed, const ExecPolicy& policy = {});

}  // namespace epsrw
