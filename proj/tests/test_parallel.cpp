#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epsrw/coupling.hpp"
#include "epsrw/estimators.hpp"

using namespace epsrw;

// The OpenMP kernels must reproduce the serial reference bit for bit: every
// trial derives its randomness from (seed, trial index) and results are
// written per index, so scheduling cannot leak into the output.

namespace {

SimConfig mk(EnvKind kind, TimeMode mode) {
  SimConfig config;
  config.epsilon = 0.25;
  config.env = {kind, 8, 0.7, 1};
  config.horizon = mode == TimeMode::discrete ? 200 : 50.0;
  config.trials = 600;
  config.seed = 86420;
  config.mode = mode;
  return config;
}

}  // namespace

TEST_CASE("estimate_speed: serial and openmp agree bit for bit") {
  for (EnvKind kind : {EnvKind::iid_refresh, EnvKind::east_random_scan}) {
    for (TimeMode mode : {TimeMode::discrete, TimeMode::continuous}) {
      const SimConfig config = mk(kind, mode);
      const SpeedEstimate serial = estimate_speed(config, serial_policy());
      for (int workers : {1, 2, 4}) {
        const SpeedEstimate parallel = estimate_speed(config, {ExecMode::openmp, workers});
        CHECK(serial.mean == parallel.mean);
        CHECK(serial.std_error == parallel.std_error);
        CHECK(serial.ci_low == parallel.ci_low);
        CHECK(serial.ci_high == parallel.ci_high);
      }
    }
  }
}

TEST_CASE("estimate_speed is reproducible across repeated invocations") {
  const SimConfig config = mk(EnvKind::east_random_scan, TimeMode::discrete);
  const SpeedEstimate a = estimate_speed(config);
  const SpeedEstimate b = estimate_speed(config);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("backward_law_test: serial and openmp agree exactly") {
  SimConfig config = mk(EnvKind::east_random_scan, TimeMode::discrete);
  config.horizon = 64;
  const ChiSquareResult serial = backward_law_test(config, 0, 2000, serial_policy());
  const ChiSquareResult parallel = backward_law_test(config, 0, 2000, {ExecMode::openmp, 2});
  CHECK(serial.statistic == parallel.statistic);
  CHECK(serial.df == parallel.df);
  CHECK(serial.pass == parallel.pass);
}

TEST_CASE("antisymmetry_test: serial and openmp agree exactly") {
  const SimConfig config = mk(EnvKind::iid_refresh, TimeMode::discrete);
  const AntisymmetryReport serial = antisymmetry_test(config, serial_policy());
  const AntisymmetryReport parallel = antisymmetry_test(config, {ExecMode::openmp, 2});
  CHECK(serial.sum == parallel.sum);
  CHECK(serial.sum_se == parallel.sum_se);
}

TEST_CASE("solomon check: serial and openmp agree exactly") {
  const SolomonReport serial = static_env_solomon_check(0.9, 0.1, 500, 400, 11, serial_policy());
  const SolomonReport parallel = static_env_solomon_check(0.9, 0.1, 500, 400, 11, {ExecMode::openmp, 2});
  CHECK(serial.v_plus.mean == parallel.v_plus.mean);
  CHECK(serial.v_minus.mean == parallel.v_minus.mean);
}
