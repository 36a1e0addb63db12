#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epsrw/walker.hpp"

using namespace epsrw;

namespace {

OccupancyField frozen_all_ones(std::int64_t L, std::int64_t N) {
  const EnvironmentSpec spec{EnvKind::frozen_bernoulli, L, 1.0, 1};
  const RandomSource env{1, Stream::environment};
  return evolve_discrete(spec, env, N, Config(static_cast<std::size_t>(L), 1));
}

}  // namespace

TEST_CASE("direction thresholds") {
  CHECK(direction(true, 0.6, 0.2) == +1);   // 0.6 <= 0.7
  CHECK(direction(false, 0.6, 0.2) == -1);  // 0.6 > 0.3
  CHECK(direction(true, 0.1, -0.5) == -1);  // threshold 0, u > 0
  CHECK(direction(true, 0.0, -0.5) == +1);  // boundary u = 0 <= 0
  CHECK(direction(false, 0.999, 0.5) == -1);
  CHECK(direction(true, 0.999, 0.5) == +1);
}

TEST_CASE("negating the direction equals the mirrored-uniform (-eps) direction") {
  // -A^eps(occ, u) == A^(-eps)(occ, 1-u) away from the threshold; checked on
  // all 8 combinations of occupancy, u side, sign of eps
  for (bool occ : {false, true}) {
    for (double eps : {0.25, -0.25}) {
      const double threshold = occ ? 0.5 + eps : 0.5 - eps;
      for (double u : {threshold - 0.01, threshold + 0.01}) {
        CHECK(-direction(occ, u, eps) == direction(occ, 1.0 - u, -eps));
      }
    }
  }
}

TEST_CASE("direction is monotone in eps on occupied sites") {
  for (int i = 0; i < 200; ++i) {
    const double u = (i + 0.5) / 200.0;
    for (double lo = -0.5; lo <= 0.5; lo += 0.1) {
      for (double hi = lo; hi <= 0.5; hi += 0.1) {
        CHECK(direction(true, u, hi) >= direction(true, u, lo));
      }
    }
  }
}

TEST_CASE("run_discrete on the all-ones frozen field with eps=1/2 marches right") {
  const OccupancyField field = frozen_all_ones(4, 32);
  const RandomSource walk{9, Stream::walk_uniforms};
  const Trajectory traj = run_discrete(field, walk, 0.5, 3, 32);
  REQUIRE(traj.positions.size() == 33);
  for (std::int64_t n = 0; n <= 32; ++n) {
    CHECK(traj.positions[static_cast<std::size_t>(n)] == 3 + n);
  }
}

TEST_CASE("run_discrete rejects horizons beyond the field") {
  const OccupancyField field = frozen_all_ones(4, 8);
  const RandomSource walk{9, Stream::walk_uniforms};
  CHECK_THROWS_AS(run_discrete(field, walk, 0.1, 0, 9), std::invalid_argument);
}

TEST_CASE("trajectories are nearest-neighbor with the parity of n") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 8, 0.7, 1};
  for (std::int64_t trial = 0; trial < 50; ++trial) {
    const SourceBundle sources = bundle_for_trial(123, trial);
    const OccupancyField field =
        evolve_discrete(spec, sources.environment, 64, sample_stationary(spec, sources.initial));
    const Trajectory traj = run_discrete(field, sources.walk, 0.25, -3, 64);
    for (std::int64_t n = 0; n < 64; ++n) {
      const std::int64_t step = traj.positions[static_cast<std::size_t>(n + 1)] -
                                traj.positions[static_cast<std::size_t>(n)];
      CHECK(std::llabs(step) == 1);
      CHECK(((traj.positions[static_cast<std::size_t>(n)] - traj.start) % 2 + 2) % 2 ==
            (n % 2 + 2) % 2);
    }
  }
}

TEST_CASE("symmetric walk endpoint mean sits near 0") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 8, 0.7, 1};
  const std::int64_t N = 100, M = 10000;
  double sum = 0.0;
  for (std::int64_t trial = 0; trial < M; ++trial) {
    const SourceBundle sources = bundle_for_trial(321, trial);
    sum += static_cast<double>(final_position_discrete(spec, sources, 0.0, 0, N));
  }
  // endpoint sd = sqrt(N); band 4 sqrt(N) / sqrt(M)
  CHECK(std::abs(sum / static_cast<double>(M)) <=
        4.0 * std::sqrt(static_cast<double>(N)) / std::sqrt(static_cast<double>(M)));
}

TEST_CASE("streaming endpoint equals the prebuilt-field walk bit for bit") {
  for (EnvKind kind : {EnvKind::iid_refresh, EnvKind::ssep_random_scan, EnvKind::east_random_scan}) {
    const EnvironmentSpec spec{kind, 6, 0.6, 2};
    for (std::int64_t trial = 0; trial < 20; ++trial) {
      const SourceBundle sources = bundle_for_trial(77, trial);
      const OccupancyField field =
          evolve_discrete(spec, sources.environment, 128, sample_stationary(spec, sources.initial));
      const Trajectory traj = run_discrete(field, sources.walk, 0.3, 0, 128);
      CHECK(traj.end() == final_position_discrete(spec, sources, 0.3, 0, 128));
    }
  }
}

TEST_CASE("translation covariance: rotated field + shifted uniforms = shifted path") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 8, 0.7, 1};
  const std::int64_t N = 64, shift = 5;
  const SourceBundle sources = bundle_for_trial(55, 0);
  const OccupancyField field =
      evolve_discrete(spec, sources.environment, N, sample_stationary(spec, sources.initial));

  // field rotated so that the walk started at 0 sees what the original walk
  // sees from `shift`
  OccupancyField rotated = field;
  for (std::int64_t n = 0; n <= N; ++n) {
    for (std::int64_t x = 0; x < spec.L; ++x) {
      rotated.bits[static_cast<std::size_t>(n * spec.L + x)] = field.at(n, x + shift);
    }
  }
  RandomSource shifted_walk = sources.walk;
  shifted_walk.site_offset = shift;

  const Trajectory base = run_discrete(field, sources.walk, 0.25, shift, N);
  const Trajectory moved = run_discrete(rotated, shifted_walk, 0.25, 0, N);
  REQUIRE(base.positions.size() == moved.positions.size());
  for (std::size_t n = 0; n < base.positions.size(); ++n) {
    CHECK(base.positions[n] == moved.positions[n] + shift);
  }
}

TEST_CASE("one-step drift on occupied sites is exactly 1/2 + eps") {
  const double eps = 0.25;
  const OccupancyField field = frozen_all_ones(4, 1);
  const std::int64_t n_steps = 1000000;
  std::int64_t right = 0;
  for (std::int64_t i = 0; i < n_steps; ++i) {
    const RandomSource walk{trial_seed(2024, i), Stream::walk_uniforms};
    if (run_discrete(field, walk, eps, 0, 1).end() == 1) ++right;
  }
  const double freq = static_cast<double>(right) / static_cast<double>(n_steps);
  const double band = 4.0 * std::sqrt(0.75 * 0.25 / static_cast<double>(n_steps));
  CHECK(std::abs(freq - (0.5 + eps)) <= band);
}

TEST_CASE("SimConfig validation and JSON round-trip") {
  SimConfig config;
  config.epsilon = 0.25;
  config.env = {EnvKind::east_random_scan, 16, 0.7, 2};
  config.horizon = 256;
  config.trials = 10;
  config.seed = 99;
  config.mode = TimeMode::discrete;
  CHECK_NOTHROW(config.validate());
  CHECK(config.steps() == 256);

  const nlohmann::json j = config;
  const SimConfig back = j.get<SimConfig>();
  CHECK(back.epsilon == config.epsilon);
  CHECK(back.horizon == config.horizon);
  CHECK(back.mode == config.mode);

  SimConfig bad = config;
  bad.epsilon = 0.51;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.horizon = 12.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("continuous run with a horizon too short for events stays put") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 6, 0.7, 1};
  // P(no walker event before 1e-6) ~ 1 - 1e-6; pinned seed
  const ContinuousRun run = run_continuous(spec, SourceBundle(64), 0.3, 4, 1e-6);
  CHECK(run.traj.positions.size() == 1);
  CHECK(run.traj.end() == 4);
  CHECK(run.sigma.empty());
}

TEST_CASE("continuous run on the all-ones frozen field drifts at 2 eps") {
  const EnvironmentSpec spec{EnvKind::frozen_bernoulli, 4, 1.0, 1};
  const double eps = 0.3, horizon = 1000.0;
  const std::int64_t M = 3000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t trial = 0; trial < M; ++trial) {
    const ContinuousRun run =
        run_continuous(spec, SourceBundle(trial_seed(808, trial)), eps, 0, horizon);
    const double rate = static_cast<double>(run.traj.end()) / horizon;
    sum += rate;
    sum_sq += rate * rate;
  }
  const double mean = sum / static_cast<double>(M);
  const double var = (sum_sq - sum * sum / static_cast<double>(M)) / static_cast<double>(M - 1);
  const double se = std::sqrt(var / static_cast<double>(M));
  CHECK(std::abs(mean - 2.0 * eps) <= 4.0 * se);
}

TEST_CASE("continuous trajectories satisfy their invariants") {
  const EnvironmentSpec spec{EnvKind::ssep_random_scan, 6, 0.5, 1};
  const ContinuousRun run = run_continuous(spec, SourceBundle(4242), 0.2, 0, 200.0);
  REQUIRE(!run.traj.jump_times.empty());
  CHECK(run.traj.positions.size() == run.traj.jump_times.size() + 1);
  CHECK(run.sigma.size() == run.traj.jump_times.size());
  for (std::size_t i = 1; i < run.traj.jump_times.size(); ++i) {
    CHECK(run.traj.jump_times[i] > run.traj.jump_times[i - 1]);
  }
  CHECK(run.traj.jump_times.back() <= 200.0);
}

TEST_CASE("embedding replays the discrete construction on sigma") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 8, 0.7, 1};
  const double eps = 0.25;
  const SourceBundle sources(5151);
  const ContinuousRun run = run_continuous(spec, sources, eps, 0, 300.0);
  const EmbeddedChain chain = embed_at_jump_times(run);
  REQUIRE(chain.traj.positions.size() == chain.sigma.size() + 1);
  for (std::size_t n = 0; n < chain.sigma.size(); ++n) {
    const std::int64_t x = chain.traj.positions[n];
    std::int64_t r = x % spec.L;
    if (r < 0) r += spec.L;
    const int step = direction(chain.sigma[n][static_cast<std::size_t>(r)] != 0,
                               walk_uniform(sources.walk, static_cast<std::int64_t>(n)), eps);
    CHECK(chain.traj.positions[n + 1] == x + step);
  }
}

TEST_CASE("embedded environment field has stationary rows and respects east conditioning") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 6, 0.8, 1};
  const OccupancyField field = embedded_environment_field(spec, SourceBundle(31337), 200);
  CHECK(field.rows() == 201);
  for (std::int64_t n = 0; n <= 200; ++n) {
    std::int64_t occupied = 0;
    for (std::int64_t x = 0; x < 6; ++x) occupied += field.at(n, x);
    CHECK(occupied < 6);  // all-ones unreachable under the east rule
  }
}
