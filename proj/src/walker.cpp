#include "epsrw/walker.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epsrw {

std::string to_string(TimeMode mode) {
  return mode == TimeMode::discrete ? "discrete" : "continuous";
}

TimeMode time_mode_from_string(const std::string& name) {
  if (name == "discrete") return TimeMode::discrete;
  if (name == "continuous") return TimeMode::continuous;
  throw std::invalid_argument("mode: unknown value '" + name +
                              "' (expected discrete | continuous)");
}

std::int64_t SimConfig::steps() const {
  const double r = std::nearbyint(horizon);
  if (!(horizon >= 1.0) || r != horizon || horizon > 0x1.0p62) {
    throw std::invalid_argument("N: discrete horizon must be an integer >= 1");
  }
  return static_cast<std::int64_t>(r);
}

void SimConfig::validate() const {
  if (!(epsilon >= -0.5 && epsilon <= 0.5)) {
    throw std::invalid_argument(
        "epsilon: must lie in [-1/2, 1/2]; the jump probabilities 1/2 +- epsilon "
        "are not probabilities otherwise");
  }
  env.validate();
  if (trials < 1) {
    throw std::invalid_argument("M: trial count must be >= 1");
  }
  if (mode == TimeMode::discrete) {
    steps();
  } else if (!(horizon > 0.0)) {
    throw std::invalid_argument("N: continuous horizon must be > 0");
  }
}

void to_json(nlohmann::json& j, const SimConfig& c) {
  j = nlohmann::json{{"epsilon", c.epsilon}, {"env", c.env},   {"N", c.horizon},
                     {"M", c.trials},        {"seed", c.seed}, {"mode", to_string(c.mode)}};
}

void from_json(const nlohmann::json& j, SimConfig& c) {
  c.epsilon = j.at("epsilon").get<double>();
  c.env = j.at("env").get<EnvironmentSpec>();
  c.horizon = j.at("N").get<double>();
  c.trials = j.at("M").get<std::int64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.mode = time_mode_from_string(j.value("mode", std::string("discrete")));
  c.validate();
}

Trajectory run_discrete(const OccupancyField& field, const RandomSource& walk_src, double epsilon,
                        std::int64_t x0, std::int64_t N) {
  if (N < 0 || N > field.steps) {
    throw std::invalid_argument("run_discrete: horizon exceeds the field rows");
  }
  Trajectory traj;
  traj.start = x0;
  traj.positions.resize(static_cast<std::size_t>(N) + 1);
  traj.positions[0] = x0;
  std::int64_t x = x0;
  for (std::int64_t n = 0; n < N; ++n) {
    x += direction(field.at(n, x) != 0, uniform_at(walk_src, x, n), epsilon);
    traj.positions[static_cast<std::size_t>(n + 1)] = x;
    assert(std::llabs(traj.positions[static_cast<std::size_t>(n + 1)] -
                      traj.positions[static_cast<std::size_t>(n)]) == 1);
    assert(((x - x0) - (n + 1)) % 2 == 0);
  }
  return traj;
}

std::int64_t final_position_discrete(const EnvironmentSpec& spec, const SourceBundle& sources,
                                     double epsilon, std::int64_t x0, std::int64_t N) {
  if (N < 0) {
    throw std::invalid_argument("final_position_discrete: N must be >= 0");
  }
  Config cfg = sample_stationary(spec, sources.initial);
  const std::int64_t L = spec.L;
  const std::int64_t k = spec.effective_substeps();
  std::int64_t x = x0;
  for (std::int64_t n = 0; n < N; ++n) {
    std::int64_t r = x % L;
    if (r < 0) r += L;
    x += direction(cfg[static_cast<std::size_t>(r)] != 0, uniform_at(sources.walk, x, n), epsilon);
    for (std::int64_t j = 0; j < k; ++j) {
      apply_substep(spec, cfg, sources.environment, n * k + j, nullptr);
    }
  }
  return x;
}

namespace {

// Environment stream coordinates for continuous-time event e:
// (e, 0) exponential gap, (e, 1) site/edge pick, (e, 2) coin.
struct EnvClock {
  const EnvironmentSpec& spec;
  const RandomSource& src;
  double rate;  // total event rate: substeps_k per site/edge
  std::int64_t event = 0;
  double time = 0.0;

  EnvClock(const EnvironmentSpec& s, const RandomSource& r)
      : spec(s), src(r), rate(s.kind == EnvKind::frozen_bernoulli
                                  ? 0.0
                                  : static_cast<double>(s.effective_substeps() * s.L)) {
    advance_clock();
  }

  void advance_clock() {
    if (rate == 0.0) {
      time = std::numeric_limits<double>::infinity();
      return;
    }
    time += -std::log(uniform_open_at(src, event, 0)) / rate;
  }

  void fire(Config& cfg) {
    const std::int64_t L = spec.L;
    const std::int64_t site =
        static_cast<std::int64_t>(pick_below(bits_at(src, event, 1), static_cast<std::uint64_t>(L)));
    const double coin = uniform_at(src, event, 2);
    switch (spec.kind) {
      case EnvKind::frozen_bernoulli:
        break;
      case EnvKind::iid_refresh:
        cfg[static_cast<std::size_t>(site)] = coin < spec.p ? 1 : 0;
        break;
      case EnvKind::ssep_random_scan:
        if (coin < 0.5) {
          std::swap(cfg[static_cast<std::size_t>(site)], cfg[static_cast<std::size_t>((site + 1) % L)]);
        }
        break;
      case EnvKind::east_random_scan:
      case EnvKind::east_skew_test: {
        const double density = spec.kind == EnvKind::east_random_scan ? spec.p : 1.0 - spec.p;
        if (cfg[static_cast<std::size_t>((site + 1) % L)] == 0) {
          cfg[static_cast<std::size_t>(site)] = coin < density ? 1 : 0;
        }
        break;
      }
    }
    ++event;
    advance_clock();
  }
};

}  // namespace

ContinuousRun run_continuous(const EnvironmentSpec& spec, const SourceBundle& sources,
                             double epsilon, std::int64_t x0, double horizon) {
  spec.validate();
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("run_continuous: horizon must be > 0");
  }
  ContinuousRun run;
  run.horizon = horizon;
  run.traj.start = x0;
  run.traj.positions.push_back(x0);

  Config cfg = sample_stationary(spec, sources.initial);
  EnvClock env(spec, sources.environment);
  const std::vector<double> jumps = poisson_times(sources.poisson, horizon);

  std::int64_t x = x0;
  const std::int64_t L = spec.L;
  for (std::int64_t n = 0; n < static_cast<std::int64_t>(jumps.size()); ++n) {
    const double t = jumps[static_cast<std::size_t>(n)];
    while (env.time <= t) env.fire(cfg);
    run.sigma.push_back(cfg);
    std::int64_t r = x % L;
    if (r < 0) r += L;
    x += direction(cfg[static_cast<std::size_t>(r)] != 0, walk_uniform(sources.walk, n), epsilon);
    run.traj.positions.push_back(x);
    run.traj.jump_times.push_back(t);
  }
  return run;
}

EmbeddedChain embed_at_jump_times(const ContinuousRun& run) {
  EmbeddedChain chain;
  chain.traj.start = run.traj.start;
  chain.traj.positions = run.traj.positions;
  chain.sigma = run.sigma;
  for (std::size_t n = 0; n + 1 < chain.traj.positions.size(); ++n) {
    assert(std::llabs(chain.traj.positions[n + 1] - chain.traj.positions[n]) == 1);
  }
  return chain;
}

OccupancyField embedded_environment_field(const EnvironmentSpec& spec, const SourceBundle& sources,
                                          std::int64_t N) {
  spec.validate();
  if (N < 0) {
    throw std::invalid_argument("embedded_environment_field: N must be >= 0");
  }
  OccupancyField field;
  field.spec = spec;
  field.steps = N;
  field.bits.resize(static_cast<std::size_t>((N + 1) * spec.L));

  Config cfg = sample_stationary(spec, sources.initial);
  EnvClock env(spec, sources.environment);
  double t = 0.0;
  for (std::int64_t k = 0; k <= N; ++k) {
    t += -std::log(uniform_open_at(sources.poisson, k, 0));  // same gaps as poisson_times
    while (env.time <= t) env.fire(cfg);
    std::copy(cfg.begin(), cfg.end(), field.bits.begin() + static_cast<std::ptrdiff_t>(k * spec.L));
  }
  return field;
}

}  // namespace epsrw
