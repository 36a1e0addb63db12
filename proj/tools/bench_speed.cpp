// Serial reference vs OpenMP comparison for the trial-parallel kernels.
// The two paths must also agree bit for bit; that is asserted here and in
// the test suite.

#include <chrono>
#include <cstdio>

#include "epsrw/coupling.hpp"
#include "epsrw/estimators.hpp"
#include "epsrw/verification.hpp"

using namespace epsrw;

namespace {

template <class F>
double time_of(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* kernel, double serial_s, double parallel_s, bool identical) {
  std::printf("%-28s %9.3fs %9.3fs %7.2fx   %s\n", kernel, serial_s, parallel_s,
              serial_s / parallel_s, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("%-28s %10s %10s %8s   %s\n", "kernel", "serial", "openmp", "speedup",
              "outputs");

  {
    SimConfig config;
    config.epsilon = 0.25;
    config.env = {EnvKind::east_random_scan, 32, 0.7, 1};
    config.horizon = 2000;
    config.trials = 4000;
    config.seed = 42;
    SpeedEstimate a, b;
    const double ts = time_of([&] { a = estimate_speed(config, serial_policy()); });
    const double tp = time_of([&] { b = estimate_speed(config, {}); });
    report("estimate discrete east", ts, tp, a.mean == b.mean && a.std_error == b.std_error);
  }

  {
    SimConfig config;
    config.epsilon = 0.25;
    config.env = {EnvKind::east_random_scan, 16, 0.7, 1};
    config.horizon = 400;
    config.trials = 800;
    config.seed = 42;
    config.mode = TimeMode::continuous;
    SpeedEstimate a, b;
    const double ts = time_of([&] { a = estimate_speed(config, serial_policy()); });
    const double tp = time_of([&] { b = estimate_speed(config, {}); });
    report("estimate continuous east", ts, tp, a.mean == b.mean && a.std_error == b.std_error);
  }

  {
    SuiteResult a, b;
    const double ts = time_of([&] { a = verify_non_crossing(42, serial_policy()); });
    const double tp = time_of([&] { b = verify_non_crossing(42, {}); });
    report("non-crossing scan", ts, tp, a.pass == b.pass && a.lines == b.lines);
  }

  return 0;
}
