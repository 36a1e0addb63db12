#include "epsrw/coupling.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace epsrw {

Trajectory run_backward(const OccupancyField& field, const RandomSource& walk_src, double epsilon,
                        std::int64_t x, std::int64_t N) {
  if (N < 0 || N > field.steps) {
    throw std::invalid_argument("run_backward: horizon exceeds the field rows");
  }
  if (((x % 2) + 2) % 2 != ((N % 2) + 2) % 2) {
    throw std::invalid_argument("run_backward: endpoint x must have the parity of N");
  }
  Trajectory traj;
  traj.positions.resize(static_cast<std::size_t>(N) + 1);
  traj.positions[static_cast<std::size_t>(N)] = x;
  std::int64_t y = x;
  for (std::int64_t m = N; m > 0; --m) {
    y -= direction(field.at(m, y) != 0, uniform_at(walk_src, y, m), epsilon);
    traj.positions[static_cast<std::size_t>(m - 1)] = y;
  }
  traj.start = traj.positions[0];
  return traj;
}

CoupledPair make_coupled_pair(const OccupancyField& field, const RandomSource& walk_src,
                              double epsilon, std::int64_t x, std::int64_t N) {
  CoupledPair pair;
  pair.endpoint = x;
  pair.horizon = N;
  pair.forward = run_discrete(field, walk_src, epsilon, 0, N);
  pair.backward = run_backward(field, walk_src, epsilon, x, N);
  return pair;
}

std::int64_t choose_endpoint(double v_eps, double delta, std::int64_t N) {
  if (N < 1) {
    throw std::invalid_argument("choose_endpoint: N must be >= 1");
  }
  const auto xt = static_cast<std::int64_t>(std::floor((v_eps - delta / 2.0) * static_cast<double>(N)));
  const bool same_parity = ((xt % 2) + 2) % 2 == ((N % 2) + 2) % 2;
  return same_parity ? xt : xt + 1;
}

std::int64_t check_non_crossing(const CoupledPair& pair) {
  const std::int64_t n = pair.horizon;
  const std::int64_t d0 = pair.backward.positions[0] - pair.forward.positions[0];
  const std::int64_t dn = pair.backward.positions[static_cast<std::size_t>(n)] -
                          pair.forward.positions[static_cast<std::size_t>(n)];
  return d0 * dn;
}

ChiSquareResult backward_law_test(const SimConfig& config, std::int64_t x, std::int64_t trials,
                                  const ExecPolicy& policy, const BackwardLawOptions& options) {
  config.validate();
  const std::int64_t N = config.steps();
  if (((x % 2) + 2) % 2 != ((N % 2) + 2) % 2) {
    throw std::invalid_argument("backward_law_test: endpoint x must have the parity of N");
  }
  const double direct_eps = options.direct_epsilon.value_or(-config.epsilon);

  auto make_field = [&](const SourceBundle& sources) {
    if (options.embedded_environment) {
      return embedded_environment_field(config.env, sources, N);
    }
    return evolve_discrete(config.env, sources.environment, N,
                           sample_stationary(config.env, sources.initial));
  };

  // Trials 0..M-1 feed the coupled pairs, M..2M-1 the independent direct
  // walks; disjoint counter ranges give independent streams.
  std::vector<std::int64_t> reversed(static_cast<std::size_t>(trials));
  std::vector<std::int64_t> direct(static_cast<std::size_t>(trials));
  for_each_index(trials, policy, [&](std::int64_t i) {
    const SourceBundle pair_sources = bundle_for_trial(config.seed, i);
    const OccupancyField field = make_field(pair_sources);
    const Trajectory backward = run_backward(field, pair_sources.walk, config.epsilon, x, N);
    reversed[static_cast<std::size_t>(i)] = backward.positions[0] - x;

    const SourceBundle direct_sources = bundle_for_trial(config.seed, trials + i);
    const OccupancyField dfield = make_field(direct_sources);
    const Trajectory walk = run_discrete(dfield, direct_sources.walk, direct_eps, 0, N);
    direct[static_cast<std::size_t>(i)] = walk.end();
  });

  std::map<std::int64_t, std::int64_t> hist_reversed, hist_direct;
  for (auto d : reversed) ++hist_reversed[d];
  for (auto d : direct) ++hist_direct[d];
  return two_sample_chi_square(hist_reversed, hist_direct, 0.01);
}

}  // namespace epsrw
