#pragma once

#include <cstdint>
#include <optional>

#include "epsrw/parallel.hpp"
#include "epsrw/stats.hpp"
#include "epsrw/walker.hpp"

namespace epsrw {

// Forward eps-walk and backward (-eps)-walk built on one shared direction
// field. The parity condition x == N (mod 2) makes the two walks comparable
// at time 0.
struct CoupledPair {
  Trajectory forward;   // started at 0, run to N
  Trajectory backward;  // pinned at backward.positions[N] == endpoint
  std::int64_t endpoint = 0;
  std::int64_t horizon = 0;
};

// Backward walk: positions[N] = x and, for m = N down to 1,
//   positions[m-1] = positions[m] - direction(eta_m(X_m), U_{X_m, m}, eps).
// Uses the same walk-uniform stream as the forward walk, which is what
// couples the two. Throws unless x == N (mod 2) and the field covers 0..N.
Trajectory run_backward(const OccupancyField& field, const RandomSource& walk_src, double epsilon,
                        std::int64_t x, std::int64_t N);

CoupledPair make_coupled_pair(const OccupancyField& field, const RandomSource& walk_src,
                              double epsilon, std::int64_t x, std::int64_t N);

// Endpoint selection used in the speed-contradiction walkthrough:
// xt = floor((v_eps - delta/2) * N), bumped by one if its parity differs
// from N.
std::int64_t choose_endpoint(double v_eps, double delta, std::int64_t N);

// (X^_0 - X_0) * (X^_N - X_N), exact integer arithmetic. Non-negative
// whenever the pair shares a direction field and satisfies the parity
// condition; the caller asserts >= 0.
std::int64_t check_non_crossing(const CoupledPair& pair);

struct BackwardLawOptions {
  // Direct-walk drift; defaults to -epsilon. Tests pass +epsilon as a
  // negative control, which the test must reject.
  std::optional<double> direct_epsilon;
  // Drive the walks on the embedded environment (continuous-time
  // environment observed at PPP(1) times) instead of the discrete kernel.
  bool embedded_environment = false;
};

// Lemma check: the time-reversed backward displacement (X^_0 - x) over M
// coupled pairs against the displacement of M direct (-eps)-walks, compared
// with a two-sample chi-square on endpoint bins at significance 0.01.
ChiSquareResult backward_law_test(const SimConfig& config, std::int64_t x, std::int64_t trials,
                                  const ExecPolicy& policy = {},
                                  const BackwardLawOptions& options = {});

}  // namespace epsrw
