#pragma once

#include <cstdint>
#include <vector>

namespace epsrw {

// Named randomness streams. Every random quantity in a run is a pure
// function of (master_seed, stream, x, n), so values can be read at any
// coordinate in any order -- the walker, the backward walk and the exact
// oracles all see identical bits.
enum class Stream : std::uint64_t {
  environment = 0,
  walk_uniforms = 1,
  poisson = 2,
  initial_config = 3,
};

struct RandomSource {
  std::uint64_t master_seed = 0;
  Stream stream = Stream::environment;
  // Added to the x coordinate on every lookup. Used by the translation
  // covariance tests, which compare a walk started at x against a walk
  // started at 0 on the shifted randomness.
  std::int64_t site_offset = 0;
};

// Raw 64-bit Philox4x32-10 output at integer coordinates (x, n).
std::uint64_t bits_at(const RandomSource& src, std::int64_t x, std::int64_t n) noexcept;

// Uniform in [0,1), 53-bit resolution.
double uniform_at(const RandomSource& src, std::int64_t x, std::int64_t n) noexcept;

// Uniform in (0,1); never returns 0, safe under log().
double uniform_open_at(const RandomSource& src, std::int64_t x, std::int64_t n) noexcept;

// Per-event uniform for the continuous-time walk (indexed by event only).
double walk_uniform(const RandomSource& src, std::int64_t n) noexcept;

// Strictly increasing PPP(1) event times in (0, horizon].
// Throws std::invalid_argument for horizon <= 0.
std::vector<double> poisson_times(const RandomSource& src, double horizon);

// Unbiased-to-2^-64 choice in [0, m) from one 64-bit word.
std::uint64_t pick_below(std::uint64_t bits, std::uint64_t m) noexcept;

// Independent child seed for trial fan-out; pure in (master_seed, trial).
std::uint64_t trial_seed(std::uint64_t master_seed, std::int64_t trial) noexcept;

// The four streams of one trial, sharing a seed.
struct SourceBundle {
  RandomSource environment;
  RandomSource walk;
  RandomSource poisson;
  RandomSource initial;

  explicit SourceBundle(std::uint64_t seed)
      : environment{seed, Stream::environment},
        walk{seed, Stream::walk_uniforms},
        poisson{seed, Stream::poisson},
        initial{seed, Stream::initial_config} {}
};

inline SourceBundle bundle_for_trial(std::uint64_t master_seed, std::int64_t trial) {
  return SourceBundle(trial_seed(master_seed, trial));
}

}  // namespace epsrw
