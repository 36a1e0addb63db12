#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epsrw/environment.hpp"

using namespace epsrw;

namespace {

Config make_config(std::initializer_list<int> bits) {
  Config c;
  for (int b : bits) c.push_back(static_cast<std::uint8_t>(b));
  return c;
}

std::int64_t popcount(const Config& c) {
  return std::accumulate(c.begin(), c.end(), std::int64_t{0});
}

}  // namespace

TEST_CASE("spec validation names the offending field") {
  CHECK_THROWS_AS((EnvironmentSpec{EnvKind::iid_refresh, 1, 0.5, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((EnvironmentSpec{EnvKind::iid_refresh, 4, 1.5, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((EnvironmentSpec{EnvKind::iid_refresh, 4, -0.1, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((EnvironmentSpec{EnvKind::ssep_random_scan, 4, 0.5, 0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((EnvironmentSpec{EnvKind::east_random_scan, 4, 1.0, 1}.validate()),
                  std::invalid_argument);
  CHECK_NOTHROW((EnvironmentSpec{EnvKind::frozen_bernoulli, 4, 1.0, 1}.validate()));
}

TEST_CASE("kind names round-trip and aliases parse") {
  for (EnvKind kind : {EnvKind::frozen_bernoulli, EnvKind::iid_refresh, EnvKind::ssep_random_scan,
                       EnvKind::east_random_scan}) {
    CHECK(env_kind_from_string(to_string(kind)) == kind);
  }
  CHECK(env_kind_from_string("east") == EnvKind::east_random_scan);
  CHECK_THROWS_AS(env_kind_from_string("east-skew-test"), std::invalid_argument);
  CHECK_THROWS_AS(env_kind_from_string("parallel-east"), std::invalid_argument);
}

TEST_CASE("sample_stationary degenerate densities") {
  const RandomSource init{7, Stream::initial_config};
  const Config zeros = sample_stationary({EnvKind::iid_refresh, 8, 0.0, 1}, init);
  CHECK(popcount(zeros) == 0);
  const Config ones = sample_stationary({EnvKind::frozen_bernoulli, 8, 1.0, 1}, init);
  CHECK(popcount(ones) == 8);
}

TEST_CASE("sample_stationary empirical density at L=32, p=0.7") {
  const EnvironmentSpec spec{EnvKind::iid_refresh, 32, 0.7, 1};
  double occupied = 0.0;
  const std::int64_t samples = 10000;
  for (std::int64_t i = 0; i < samples; ++i) {
    const RandomSource init{trial_seed(11, i), Stream::initial_config};
    occupied += static_cast<double>(popcount(sample_stationary(spec, init)));
  }
  const double mean = occupied / static_cast<double>(samples * 32);
  CHECK(std::abs(mean - 0.7) <= 0.02);
}

TEST_CASE("east sampling conditions the all-ones configuration away") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 3, 0.9, 1};
  // p^L ~ 0.73: without conditioning, all-ones would dominate quickly
  for (std::int64_t i = 0; i < 3000; ++i) {
    const RandomSource init{trial_seed(13, i), Stream::initial_config};
    CHECK(popcount(sample_stationary(spec, init)) < 3);
  }
}

TEST_CASE("frozen kernel is the identity") {
  const EnvironmentSpec spec{EnvKind::frozen_bernoulli, 6, 0.5, 4};
  const RandomSource env{3, Stream::environment};
  const Config c = make_config({1, 0, 0, 1, 1, 0});
  for (std::int64_t n = 0; n < 50; ++n) {
    CHECK(step_kernel(spec, c, env, n) == c);
  }
}

TEST_CASE("east single sub-update from 1110 can only touch site 2") {
  // right neighbors: site 0 -> 1 (occupied), site 1 -> 1, site 2 -> 0
  // (updatable), site 3 -> wraps to occupied site 0
  const EnvironmentSpec spec{EnvKind::east_random_scan, 4, 0.5, 1};
  const RandomSource env{99, Stream::environment};
  const Config start = make_config({1, 1, 1, 0});
  bool saw_flip = false;
  for (std::int64_t n = 0; n < 400; ++n) {
    SubUpdateLog log;
    const Config next = step_kernel(spec, start, env, n, &log);
    REQUIRE(log.size() == 1);
    if (log[0].before != log[0].after) {
      CHECK(log[0].site == 2);
      saw_flip = true;
    }
    CHECK(next[0] == 1);
    CHECK(next[1] == 1);
    CHECK(next[3] == 0);
  }
  CHECK(saw_flip);
}

TEST_CASE("east never updates a site whose right neighbor is occupied") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 10, 0.6, 3};
  const RandomSource env{5, Stream::environment};
  const RandomSource init{5, Stream::initial_config};
  Config c = sample_stationary(spec, init);
  for (std::int64_t n = 0; n < 2000; ++n) {
    SubUpdateLog log;
    c = step_kernel(spec, c, env, n, &log);
    for (const auto& rec : log) {
      if (rec.before != rec.after) CHECK(rec.right_neighbor == 0);
    }
  }
}

TEST_CASE("ssep sub-updates conserve the particle multiset") {
  const EnvironmentSpec spec{EnvKind::ssep_random_scan, 9, 0.4, 2};
  const RandomSource env{17, Stream::environment};
  const RandomSource init{17, Stream::initial_config};
  Config c = sample_stationary(spec, init);
  const std::int64_t particles = popcount(c);
  for (std::int64_t n = 0; n < 3000; ++n) {
    c = step_kernel(spec, c, env, n);
    CHECK(popcount(c) == particles);
  }
}

TEST_CASE("evolve_discrete basics") {
  const RandomSource env{23, Stream::environment};

  SUBCASE("frozen: all rows equal the init") {
    const EnvironmentSpec spec{EnvKind::frozen_bernoulli, 5, 0.5, 1};
    const Config init = make_config({1, 0, 1, 1, 0});
    const OccupancyField field = evolve_discrete(spec, env, 20, init);
    CHECK(field.rows() == 21);
    for (std::int64_t n = 0; n <= 20; ++n) CHECK(field.row(n) == init);
  }

  SUBCASE("iid refresh with p=1: every later row is all-ones") {
    const EnvironmentSpec spec{EnvKind::iid_refresh, 5, 1.0, 1};
    const Config init = make_config({0, 0, 0, 0, 0});
    const OccupancyField field = evolve_discrete(spec, env, 10, init);
    CHECK(field.row(0) == init);
    for (std::int64_t n = 1; n <= 10; ++n) CHECK(popcount(field.row(n)) == 5);
  }

  SUBCASE("negative horizon rejected") {
    const EnvironmentSpec spec{EnvKind::iid_refresh, 5, 0.5, 1};
    CHECK_THROWS_AS(evolve_discrete(spec, env, -1, make_config({1, 0, 1, 0, 1})),
                    std::invalid_argument);
  }
}

TEST_CASE("east occupancy stays at the conditioned-Bernoulli marginal") {
  // exact single-site marginal of product-Bernoulli(p) conditioned on not
  // all-ones: (p - p^L) / (1 - p^L)
  const std::int64_t L = 6;
  const double p = 0.7;
  const double marginal = (p - std::pow(p, L)) / (1.0 - std::pow(p, L));
  const EnvironmentSpec spec{EnvKind::east_random_scan, L, p, 1};

  double occupied = 0.0;
  const std::int64_t runs = 2000;
  const std::int64_t N = 50;
  for (std::int64_t i = 0; i < runs; ++i) {
    const SourceBundle sources = bundle_for_trial(31, i);
    const OccupancyField field =
        evolve_discrete(spec, sources.environment, N, sample_stationary(spec, sources.initial));
    occupied += field.at(N, 0);
  }
  const double mean = occupied / static_cast<double>(runs);
  const double band = 4.0 * std::sqrt(marginal * (1.0 - marginal) / static_cast<double>(runs));
  CHECK(std::abs(mean - marginal) <= band);
}

TEST_CASE("iid refresh forces a single substep") {
  const EnvironmentSpec spec{EnvKind::iid_refresh, 4, 0.5, 9};
  CHECK(spec.effective_substeps() == 1);
  const RandomSource env{41, Stream::environment};
  const EnvironmentSpec one{EnvKind::iid_refresh, 4, 0.5, 1};
  const Config init = make_config({0, 1, 0, 1});
  CHECK(step_kernel(spec, init, env, 3) == step_kernel(one, init, env, 3));
}

TEST_CASE("OccupancyField resolves sites modulo L, including negatives") {
  const EnvironmentSpec spec{EnvKind::frozen_bernoulli, 4, 0.5, 1};
  const RandomSource env{1, Stream::environment};
  const OccupancyField field = evolve_discrete(spec, env, 0, make_config({1, 0, 0, 1}));
  CHECK(field.at(0, 0) == 1);
  CHECK(field.at(0, 4) == 1);
  CHECK(field.at(0, -1) == 1);
  CHECK(field.at(0, -4) == 1);
  CHECK(field.at(0, 5) == 0);
  CHECK(field.at(0, -3) == 0);
}

TEST_CASE("environment spec round-trips through JSON") {
  const EnvironmentSpec spec{EnvKind::east_random_scan, 16, 0.7, 3};
  const nlohmann::json j = spec;
  CHECK(j.at("kind") == "east-random-scan");
  const EnvironmentSpec back = j.get<EnvironmentSpec>();
  CHECK(back.kind == spec.kind);
  CHECK(back.L == spec.L);
  CHECK(back.p == spec.p);
  CHECK(back.substeps_k == spec.substeps_k);
}
