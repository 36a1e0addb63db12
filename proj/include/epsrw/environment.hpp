#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsrw/rng.hpp"

namespace epsrw {

// Catalog of translation-invariant, reversible dynamic environments on a
// ring of L sites. A walker on Z reads site (x mod L).
//
// east_skew_test is a deliberately mismatched East variant (resample density
// 1-p instead of p) used as a negative control in tests; it is rejected by
// config parsing and never reachable from the CLI.
enum class EnvKind {
  frozen_bernoulli,
  iid_refresh,
  ssep_random_scan,
  east_random_scan,
  east_skew_test,
};

std::string to_string(EnvKind kind);
EnvKind env_kind_from_string(const std::string& name);

struct EnvironmentSpec {
  EnvKind kind = EnvKind::iid_refresh;
  std::int64_t L = 2;
  double p = 0.5;
  std::int64_t substeps_k = 1;

  // Throws std::invalid_argument with the offending field named.
  void validate() const;

  // iid-refresh already resamples every site once per step; extra substeps
  // are meaningless and forced to 1.
  std::int64_t effective_substeps() const {
    return kind == EnvKind::iid_refresh ? 1 : substeps_k;
  }
};

void to_json(nlohmann::json& j, const EnvironmentSpec& spec);
void from_json(const nlohmann::json& j, EnvironmentSpec& spec);

using Config = std::vector<std::uint8_t>;

// Space-time window of environment values; row n = configuration at step n.
struct OccupancyField {
  EnvironmentSpec spec;
  std::int64_t steps = 0;          // N; the field holds N+1 rows
  std::vector<std::uint8_t> bits;  // (N+1) x L, row-major

  std::int64_t rows() const { return steps + 1; }

  // eta_n(x), x any integer (read mod L).
  std::uint8_t at(std::int64_t n, std::int64_t x) const {
    const std::int64_t L = spec.L;
    std::int64_t r = x % L;
    if (r < 0) r += L;
    return bits[static_cast<std::size_t>(n * L + r)];
  }

  Config row(std::int64_t n) const {
    const auto* base = bits.data() + n * spec.L;
    return Config(base, base + spec.L);
  }
};

// One record per random-scan sub-update; lets tests verify the East
// constraint at the sub-update instant.
struct SubUpdateRecord {
  std::int64_t substep = 0;
  std::int64_t site = 0;  // site for east/iid, left edge endpoint for ssep
  std::uint8_t right_neighbor = 0;
  std::uint8_t before = 0;
  std::uint8_t after = 0;
};
using SubUpdateLog = std::vector<SubUpdateRecord>;

// Draw from the stationary measure: product Bernoulli(p); for East,
// conditioned on not being all-ones.
Config sample_stationary(const EnvironmentSpec& spec, const RandomSource& init_src);

// One walker-time-step of the environment: spec.effective_substeps()
// random-scan sub-updates. Pure in (spec, config, src, n).
Config step_kernel(const EnvironmentSpec& spec, const Config& config, const RandomSource& env_src,
                   std::int64_t n, SubUpdateLog* log = nullptr);

// In-place single sub-update; g is the global sub-update index
// (n * substeps + j). Exposed so streaming simulations consume the exact
// same randomness as evolve_discrete.
void apply_substep(const EnvironmentSpec& spec, Config& config, const RandomSource& env_src,
                   std::int64_t g, SubUpdateLog* log = nullptr);

// rows[0] = init, rows[n+1] = step_kernel(rows[n], src, n).
OccupancyField evolve_discrete(const EnvironmentSpec& spec, const RandomSource& env_src,
                               std::int64_t N, Config init);

}  // namespace epsrw
