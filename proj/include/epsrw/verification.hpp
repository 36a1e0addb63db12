#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epsrw/parallel.hpp"

namespace epsrw {

// Desk-scale verification suites behind `epsrw verify <suite>` and the
// acceptance harness. Every tolerance is pinned here, not configurable.
struct SuiteResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> lines;
};

// 1e5 coupled pairs over {frozen, iid, ssep, east} x eps {+-0.1, +-0.25,
// +-0.4} x N {16..512}; requires a non-negative product in every case.
SuiteResult verify_non_crossing(std::uint64_t seed, const ExecPolicy& policy = {});

// Endpoint-law equality of the time-reversed backward walk and the direct
// (-eps)-walk (east L=16, N=256, M=1e5, significance 0.01), plus the +eps
// negative control, which must reject.
SuiteResult verify_backward_law(std::uint64_t seed, const ExecPolicy& policy = {});

// Detailed balance of every cataloged kernel, L <= 6, against its
// stationary measure; max violation <= 1e-12.
SuiteResult verify_detailed_balance();

// |exact_speed(eps) + exact_speed(-eps)| <= 1e-10 over the full oracle grid
// (east, ssep, iid-refresh; L in 3..6, p in {0.3, 0.7}, eps in
// {0.1, 0.25, 0.4}, substeps in {1, L}).
SuiteResult verify_oracle_antisymmetry();

// Continuous-time reduction: T_n/n at n = 1e6, embedded-vs-continuous speed
// agreement over 1e3 trials, and the backward law on the embedded
// environment chain.
SuiteResult verify_continuous_reduction(std::uint64_t seed, const ExecPolicy& policy = {});

// CSV dump (pair,role,step,position) of the first `count` coupled pairs of
// the non-crossing suite, for inspection and plotting.
std::string dump_non_crossing_pairs(std::uint64_t seed, std::int64_t count);

}  // namespace epsrw
