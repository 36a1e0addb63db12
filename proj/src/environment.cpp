#include "epsrw/environment.hpp"

#include <stdexcept>
#include <utility>

namespace epsrw {

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::frozen_bernoulli: return "frozen-bernoulli";
    case EnvKind::iid_refresh: return "iid-refresh";
    case EnvKind::ssep_random_scan: return "ssep-random-scan";
    case EnvKind::east_random_scan: return "east-random-scan";
    case EnvKind::east_skew_test: return "east-skew-test";
  }
  throw std::invalid_argument("unknown EnvKind");
}

EnvKind env_kind_from_string(const std::string& name) {
  if (name == "frozen-bernoulli" || name == "frozen") return EnvKind::frozen_bernoulli;
  if (name == "iid-refresh" || name == "iid") return EnvKind::iid_refresh;
  if (name == "ssep-random-scan" || name == "ssep") return EnvKind::ssep_random_scan;
  if (name == "east-random-scan" || name == "east") return EnvKind::east_random_scan;
  // east-skew-test is test-only: a skewed (density 1-p) East used to break
  // the +/-eps pairing on purpose. Not constructible from configs.
  throw std::invalid_argument("env kind: unknown value '" + name +
                              "' (expected frozen-bernoulli | iid-refresh | "
                              "ssep-random-scan | east-random-scan)");
}

void EnvironmentSpec::validate() const {
  if (L < 2) {
    throw std::invalid_argument("env.L: ring size must be >= 2");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("env.p: density must lie in [0, 1]");
  }
  if (substeps_k < 1) {
    throw std::invalid_argument("env.substeps_k: must be >= 1");
  }
  if ((kind == EnvKind::east_random_scan || kind == EnvKind::east_skew_test) && p == 1.0) {
    throw std::invalid_argument(
        "env.p: east with p = 1 is invalid (the conditioned measure, which "
        "excludes the all-ones configuration, is empty)");
  }
}

void to_json(nlohmann::json& j, const EnvironmentSpec& spec) {
  j = nlohmann::json{{"kind", to_string(spec.kind)},
                     {"L", spec.L},
                     {"p", spec.p},
                     {"substeps_k", spec.substeps_k}};
}

void from_json(const nlohmann::json& j, EnvironmentSpec& spec) {
  spec.kind = env_kind_from_string(j.at("kind").get<std::string>());
  spec.L = j.at("L").get<std::int64_t>();
  spec.p = j.at("p").get<double>();
  spec.substeps_k = j.value("substeps_k", std::int64_t{1});
  spec.validate();
}

namespace {

inline bool all_ones(const Config& c) {
  for (auto b : c) {
    if (!b) return false;
  }
  return true;
}

// Coordinate scheme on the environment stream, per sub-update g:
//   (g, 0) site/edge pick, (g, 1) resample/swap coin.
// iid-refresh refreshes the whole row at once and uses (n, 2 + x).
constexpr std::int64_t kChanPick = 0;
constexpr std::int64_t kChanCoin = 1;
constexpr std::int64_t kChanRefreshBase = 2;

}  // namespace

Config sample_stationary(const EnvironmentSpec& spec, const RandomSource& init_src) {
  spec.validate();
  const bool east = spec.kind == EnvKind::east_random_scan || spec.kind == EnvKind::east_skew_test;
  Config c(static_cast<std::size_t>(spec.L));
  for (std::int64_t attempt = 0;; ++attempt) {
    for (std::int64_t x = 0; x < spec.L; ++x) {
      c[static_cast<std::size_t>(x)] = uniform_at(init_src, x, attempt) < spec.p ? 1 : 0;
    }
    if (!east || !all_ones(c)) return c;
    // east: exact conditioning on the not-all-ones event
  }
}

void apply_substep(const EnvironmentSpec& spec, Config& config, const RandomSource& env_src,
                   std::int64_t g, SubUpdateLog* log) {
  const std::int64_t L = spec.L;
  switch (spec.kind) {
    case EnvKind::frozen_bernoulli:
      return;
    case EnvKind::iid_refresh: {
      for (std::int64_t x = 0; x < L; ++x) {
        const std::uint8_t before = config[static_cast<std::size_t>(x)];
        const std::uint8_t after = uniform_at(env_src, g, kChanRefreshBase + x) < spec.p ? 1 : 0;
        config[static_cast<std::size_t>(x)] = after;
        if (log) log->push_back({g, x, config[static_cast<std::size_t>((x + 1) % L)], before, after});
      }
      return;
    }
    case EnvKind::ssep_random_scan: {
      const std::int64_t e = static_cast<std::int64_t>(
          pick_below(bits_at(env_src, g, kChanPick), static_cast<std::uint64_t>(L)));
      const std::int64_t f = (e + 1) % L;
      const bool swap = uniform_at(env_src, g, kChanCoin) < 0.5;
      const std::uint8_t before = config[static_cast<std::size_t>(e)];
      if (swap) std::swap(config[static_cast<std::size_t>(e)], config[static_cast<std::size_t>(f)]);
      if (log) log->push_back({g, e, config[static_cast<std::size_t>(f)], before, config[static_cast<std::size_t>(e)]});
      return;
    }
    case EnvKind::east_random_scan:
    case EnvKind::east_skew_test: {
      const double density = spec.kind == EnvKind::east_random_scan ? spec.p : 1.0 - spec.p;
      const std::int64_t x = static_cast<std::int64_t>(
          pick_below(bits_at(env_src, g, kChanPick), static_cast<std::uint64_t>(L)));
      const std::uint8_t right = config[static_cast<std::size_t>((x + 1) % L)];
      const std::uint8_t before = config[static_cast<std::size_t>(x)];
      std::uint8_t after = before;
      if (right == 0) {
        after = uniform_at(env_src, g, kChanCoin) < density ? 1 : 0;
        config[static_cast<std::size_t>(x)] = after;
      }
      if (log) log->push_back({g, x, right, before, after});
      return;
    }
  }
}

Config step_kernel(const EnvironmentSpec& spec, const Config& config, const RandomSource& env_src,
                   std::int64_t n, SubUpdateLog* log) {
  spec.validate();
  if (static_cast<std::int64_t>(config.size()) != spec.L) {
    throw std::invalid_argument("step_kernel: config size does not match spec.L");
  }
  Config c = config;
  const std::int64_t k = spec.effective_substeps();
  for (std::int64_t j = 0; j < k; ++j) {
    apply_substep(spec, c, env_src, n * k + j, log);
  }
  return c;
}

OccupancyField evolve_discrete(const EnvironmentSpec& spec, const RandomSource& env_src,
                               std::int64_t N, Config init) {
  spec.validate();
  if (N < 0) {
    throw std::invalid_argument("evolve_discrete: horizon N must be >= 0");
  }
  if (static_cast<std::int64_t>(init.size()) != spec.L) {
    throw std::invalid_argument("evolve_discrete: init size does not match spec.L");
  }
  OccupancyField field;
  field.spec = spec;
  field.steps = N;
  field.bits.resize(static_cast<std::size_t>((N + 1) * spec.L));
  Config c = std::move(init);
  const std::int64_t k = spec.effective_substeps();
  for (std::int64_t n = 0; n <= N; ++n) {
    std::copy(c.begin(), c.end(), field.bits.begin() + static_cast<std::ptrdiff_t>(n * spec.L));
    if (n == N) break;
    for (std::int64_t j = 0; j < k; ++j) {
      apply_substep(spec, c, env_src, n * k + j, nullptr);
    }
  }
  return field;
}

}  // namespace epsrw
