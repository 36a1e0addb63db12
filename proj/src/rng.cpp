// Counter-based randomness: Philox4x32-10 (Salmon et al., SC 2011).
// The counter holds the (x, n) coordinates, the key is derived from
// (master_seed, stream), so evaluation is pure and random-access.

#include "epsrw/rng.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epsrw {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) noexcept {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kPhiloxM0, ctr[0], hi0, lo0);
  mul_hi_lo(kPhiloxM1, ctr[2], hi1, lo1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> ctr,
                                                 std::array<std::uint32_t, 2> key) noexcept {
  for (int r = 0; r < 10; ++r) {
    philox_round(ctr, key);
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

// splitmix64 finalizer; folds the stream tag into the key.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t bits_at(const RandomSource& src, std::int64_t x, std::int64_t n) noexcept {
  const std::uint64_t key64 =
      mix64(src.master_seed ^ (0xA24BAED4963EE407ull * (static_cast<std::uint64_t>(src.stream) + 1)));
  const std::uint64_t ux = static_cast<std::uint64_t>(x + src.site_offset);
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(ux), static_cast<std::uint32_t>(ux >> 32),
      static_cast<std::uint32_t>(un), static_cast<std::uint32_t>(un >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(key64),
                                            static_cast<std::uint32_t>(key64 >> 32)};
  const auto out = philox_block(ctr, key);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double uniform_at(const RandomSource& src, std::int64_t x, std::int64_t n) noexcept {
  return static_cast<double>(bits_at(src, x, n) >> 11) * 0x1.0p-53;
}

double uniform_open_at(const RandomSource& src, std::int64_t x, std::int64_t n) noexcept {
  return (static_cast<double>(bits_at(src, x, n) >> 11) + 0.5) * 0x1.0p-53;
}

double walk_uniform(const RandomSource& src, std::int64_t n) noexcept {
  return uniform_at(src, 0, n);
}

std::vector<double> poisson_times(const RandomSource& src, double horizon) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("poisson_times: horizon must be > 0");
  }
  std::vector<double> times;
  double t = 0.0;
  for (std::int64_t k = 0;; ++k) {
    const double gap = -std::log(uniform_open_at(src, k, 0));
    double next = t + gap;
    if (next == t) {
      // gap below the resolution of t; keep strict monotonicity
      next = std::nextafter(t, std::numeric_limits<double>::infinity());
    }
    if (next > horizon) break;
    times.push_back(next);
    t = next;
  }
  return times;
}

std::uint64_t pick_below(std::uint64_t bits, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits) * m) >> 64);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::int64_t trial) noexcept {
  return mix64(mix64(master_seed) ^ (static_cast<std::uint64_t>(trial) * 0xD1342543DE82EF95ull));
}

}  // namespace epsrw
