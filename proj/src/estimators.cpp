#include "epsrw/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "epsrw/exact.hpp"
#include "epsrw/stats.hpp"

namespace epsrw {

namespace {

constexpr std::int64_t kPlusRunSalt = -1001;
constexpr std::int64_t kMinusRunSalt = -1002;

SpeedEstimate summarize(const std::vector<double>& rates, double horizon) {
  const MeanStdErr ms = mean_stderr(rates);
  SpeedEstimate est;
  est.mean = ms.mean;
  est.std_error = ms.se;
  est.ci_low = ms.mean - 1.959963984540054 * ms.se;
  est.ci_high = ms.mean + 1.959963984540054 * ms.se;
  est.trials = ms.n;
  est.horizon = horizon;
  return est;
}

double displacement_rate_continuous(const EnvironmentSpec& spec, const SourceBundle& sources,
                                    double epsilon, double horizon) {
  // Endpoint-only continuous run; same event loop and randomness as
  // run_continuous, nothing retained.
  const ContinuousRun run = run_continuous(spec, sources, epsilon, 0, horizon);
  return static_cast<double>(run.traj.end()) / horizon;
}

}  // namespace

void to_json(nlohmann::json& j, const SpeedEstimate& e) {
  j = nlohmann::json{{"mean", e.mean},       {"std_error", e.std_error}, {"ci_low", e.ci_low},
                     {"ci_high", e.ci_high}, {"trials", e.trials},       {"horizon", e.horizon}};
}

SpeedEstimate estimate_speed(const SimConfig& config, const ExecPolicy& policy) {
  config.validate();
  const std::int64_t M = config.trials;
  std::vector<double> rates(static_cast<std::size_t>(M));
  if (config.mode == TimeMode::discrete) {
    const std::int64_t N = config.steps();
    for_each_index(M, policy, [&](std::int64_t i) {
      const SourceBundle sources = bundle_for_trial(config.seed, i);
      const std::int64_t end = final_position_discrete(config.env, sources, config.epsilon, 0, N);
      rates[static_cast<std::size_t>(i)] = static_cast<double>(end) / static_cast<double>(N);
    });
  } else {
    for_each_index(M, policy, [&](std::int64_t i) {
      const SourceBundle sources = bundle_for_trial(config.seed, i);
      rates[static_cast<std::size_t>(i)] =
          displacement_rate_continuous(config.env, sources, config.epsilon, config.horizon);
    });
  }
  return summarize(rates, config.horizon);
}

namespace {

// --- exact joint-chain oracle -------------------------------------------

struct EnvClasses {
  std::vector<std::int64_t> configs;             // admissible configuration indices
  std::vector<std::int64_t> component;           // SCC id per admissible config
  std::vector<std::vector<std::int64_t>> closed; // members of each closed SCC
};

// Tarjan over the positive-entry graph of the environment kernel.
EnvClasses env_communicating_classes(const Eigen::MatrixXd& kernel,
                                     const std::vector<std::int64_t>& configs) {
  const std::int64_t n = static_cast<std::int64_t>(configs.size());
  std::vector<std::vector<std::int64_t>> adj(static_cast<std::size_t>(n));
  std::vector<std::int64_t> dense_of(static_cast<std::size_t>(kernel.rows()), -1);
  for (std::int64_t i = 0; i < n; ++i) dense_of[static_cast<std::size_t>(configs[i])] = i;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t c = 0; c < kernel.cols(); ++c) {
      if (kernel(configs[i], c) > 0.0 && dense_of[static_cast<std::size_t>(c)] >= 0 &&
          dense_of[static_cast<std::size_t>(c)] != i) {
        adj[static_cast<std::size_t>(i)].push_back(dense_of[static_cast<std::size_t>(c)]);
      }
    }
  }

  std::vector<std::int64_t> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::int64_t> stack;
  std::int64_t next_index = 0, next_comp = 0;

  // iterative Tarjan
  struct Frame {
    std::int64_t v;
    std::size_t edge;
  };
  for (std::int64_t root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> call;
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& f = call.back();
      const std::int64_t v = f.v;
      if (f.edge == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (f.edge < adj[static_cast<std::size_t>(v)].size()) {
        const std::int64_t w = adj[static_cast<std::size_t>(v)][f.edge++];
        if (index[w] == -1) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        while (true) {
          const std::int64_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
          if (w == v) break;
        }
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) {
        low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }

  // a component is closed iff no member has an edge out of it
  std::vector<bool> is_closed(static_cast<std::size_t>(next_comp), true);
  for (std::int64_t v = 0; v < n; ++v) {
    for (std::int64_t w : adj[static_cast<std::size_t>(v)]) {
      if (comp[w] != comp[v]) is_closed[static_cast<std::size_t>(comp[v])] = false;
    }
  }
  EnvClasses out;
  out.configs = configs;
  out.component = comp;
  out.closed.resize(static_cast<std::size_t>(next_comp));
  for (std::int64_t v = 0; v < n; ++v) {
    out.closed[static_cast<std::size_t>(comp[v])].push_back(v);
  }
  std::vector<std::vector<std::int64_t>> closed_only;
  for (std::int64_t c = 0; c < next_comp; ++c) {
    if (is_closed[static_cast<std::size_t>(c)]) {
      closed_only.push_back(std::move(out.closed[static_cast<std::size_t>(c)]));
    }
  }
  out.closed = std::move(closed_only);
  return out;
}

// Stationary row vector of a stochastic matrix: lazy power iteration with a
// direct linear solve as fallback (robust for slowly-mixing East chains).
Eigen::VectorXd solve_stationary(const Eigen::MatrixXd& K) {
  const Eigen::Index n = K.rows();
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 20000; ++iter) {
    Eigen::VectorXd next = 0.5 * (pi + K.transpose() * pi);
    next /= next.sum();
    pi.swap(next);
    if ((iter & 15) == 15) {
      residual = (K.transpose() * pi - pi).cwiseAbs().maxCoeff();
      if (residual <= 1e-13) break;
    }
  }
  residual = (K.transpose() * pi - pi).cwiseAbs().maxCoeff();
  if (residual > 1e-13) {
    // (K^T - I) pi = 0 with a normalization row
    Eigen::MatrixXd A = K.transpose() - Eigen::MatrixXd::Identity(n, n);
    A.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;
    pi = A.partialPivLu().solve(b);
    const double min_entry = pi.minCoeff();
    if (min_entry < -1e-9) {
      throw std::runtime_error("exact_speed: stationary solve produced negative mass");
    }
    pi = pi.cwiseMax(0.0);
    pi /= pi.sum();
  }
  return pi;
}

}  // namespace

ExactChainResult exact_speed(const EnvironmentSpec& env, double epsilon) {
  env.validate();
  if (!(epsilon >= -0.5 && epsilon <= 0.5)) {
    throw std::invalid_argument("exact_speed: |epsilon| must be <= 1/2");
  }
  if (env.kind == EnvKind::frozen_bernoulli) {
    throw std::invalid_argument(
        "exact_speed: frozen-bernoulli makes the joint chain reducible across "
        "field configurations; use static_env_solomon_check instead");
  }
  const bool east = env.kind == EnvKind::east_random_scan || env.kind == EnvKind::east_skew_test;
  const std::int64_t max_L = east ? 8 : 7;
  if (env.L > max_L) {
    throw std::length_error("exact_speed: ring size exceeds the oracle guard L <= " +
                            std::to_string(max_L) + " for this kind");
  }

  const std::int64_t L = env.L;
  const std::int64_t n_cfg_full = std::int64_t{1} << L;
  const Eigen::MatrixXd K_env = transition_matrix(env);
  const Eigen::VectorXd mu = stationary_measure(env);

  std::vector<std::int64_t> configs;
  configs.reserve(static_cast<std::size_t>(n_cfg_full));
  for (std::int64_t c = 0; c < n_cfg_full; ++c) {
    if (east && c == n_cfg_full - 1) continue;  // all-ones excluded
    configs.push_back(c);
  }
  const std::int64_t n_cfg = static_cast<std::int64_t>(configs.size());
  const std::int64_t dim = n_cfg * L;

  const EnvClasses classes = env_communicating_classes(K_env, configs);

  // initial mass per closed class: stationary environment, walker at 0
  std::vector<double> class_mass(classes.closed.size(), 0.0);
  double covered = 0.0;
  for (std::size_t c = 0; c < classes.closed.size(); ++c) {
    for (std::int64_t dense : classes.closed[c]) {
      class_mass[c] += mu(classes.configs[static_cast<std::size_t>(dense)]);
    }
    covered += class_mass[c];
  }
  if (std::abs(covered - 1.0) > 1e-12) {
    throw std::runtime_error(
        "exact_speed: joint chain is not irreducible from the stationary "
        "initial measure (mass on transient configurations)");
  }

  ExactChainResult result;
  result.dimension = dim;
  result.stationary.assign(static_cast<std::size_t>(dim), 0.0);

  for (std::size_t c = 0; c < classes.closed.size(); ++c) {
    if (class_mass[c] == 0.0) continue;
    const auto& members = classes.closed[c];
    const std::int64_t m = static_cast<std::int64_t>(members.size());
    const std::int64_t sub_dim = m * L;

    // joint kernel on this class: walker move (reads current config), then
    // environment step
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(sub_dim, sub_dim);
    for (std::int64_t ci = 0; ci < m; ++ci) {
      const std::int64_t cfg = classes.configs[static_cast<std::size_t>(members[ci])];
      for (std::int64_t pos = 0; pos < L; ++pos) {
        const bool occ = (cfg >> pos) & 1;
        const double p_right = occ ? 0.5 + epsilon : 0.5 - epsilon;
        const std::int64_t s = ci * L + pos;
        for (int dir = 0; dir < 2; ++dir) {
          const double w = dir == 0 ? p_right : 1.0 - p_right;
          if (w == 0.0) continue;
          const std::int64_t pos2 = dir == 0 ? (pos + 1) % L : (pos + L - 1) % L;
          for (std::int64_t cj = 0; cj < m; ++cj) {
            const double kw = K_env(cfg, classes.configs[static_cast<std::size_t>(members[cj])]);
            if (kw > 0.0) J(s, cj * L + pos2) += w * kw;
          }
        }
      }
    }
    const Eigen::VectorXd pi = solve_stationary(J);

    for (std::int64_t ci = 0; ci < m; ++ci) {
      const std::int64_t dense = members[ci];
      for (std::int64_t pos = 0; pos < L; ++pos) {
        result.stationary[static_cast<std::size_t>(dense * L + pos)] +=
            class_mass[c] * pi(ci * L + pos);
      }
    }

    const double sub_residual = (J.transpose() * pi - pi).cwiseAbs().maxCoeff();
    result.residual = std::max(result.residual, sub_residual);
  }
  if (result.residual > 1e-10) {
    throw std::runtime_error("exact_speed: stationary residual exceeds 1e-10");
  }

  double q = 0.0;
  for (std::int64_t i = 0; i < n_cfg; ++i) {
    const std::int64_t cfg = configs[static_cast<std::size_t>(i)];
    for (std::int64_t pos = 0; pos < L; ++pos) {
      if ((cfg >> pos) & 1) q += result.stationary[static_cast<std::size_t>(i * L + pos)];
    }
  }
  result.occupied_under_walker = q;
  result.exact_speed = 2.0 * epsilon * (2.0 * q - 1.0);
  return result;
}

void to_json(nlohmann::json& j, const AntisymmetryReport& r) {
  j = nlohmann::json{{"v_plus", r.v_plus}, {"v_minus", r.v_minus}, {"sum", r.sum},
                     {"sum_se", r.sum_se}, {"pass", r.pass}};
}

AntisymmetryReport antisymmetry_test(const SimConfig& config, const ExecPolicy& policy,
                                     const AntisymmetryOptions& options) {
  config.validate();
  SimConfig plus = config;
  plus.seed = trial_seed(config.seed, kPlusRunSalt);
  SimConfig minus = config;
  minus.epsilon = -config.epsilon;
  minus.seed = trial_seed(config.seed, kMinusRunSalt);
  if (options.minus_env) minus.env = *options.minus_env;

  AntisymmetryReport report;
  report.v_plus = estimate_speed(plus, policy);
  report.v_minus = estimate_speed(minus, policy);
  report.sum = report.v_plus.mean + report.v_minus.mean;
  report.sum_se = std::hypot(report.v_plus.std_error, report.v_minus.std_error);
  report.pass = std::abs(report.sum) <= 4.0 * report.sum_se;
  return report;
}

void to_json(nlohmann::json& j, const SolomonReport& r) {
  j = nlohmann::json{{"p", r.p},
                     {"epsilon", r.epsilon},
                     {"expected_rho", r.expected_rho},
                     {"expected_inv_rho", r.expected_inv_rho},
                     {"ballistic", r.ballistic},
                     {"zero_speed_regime", r.zero_speed_regime},
                     {"formula_speed", r.formula_speed},
                     {"v_plus", r.v_plus},
                     {"v_minus", r.v_minus},
                     {"speed_match", r.speed_match},
                     {"sum", r.sum},
                     {"sum_se", r.sum_se},
                     {"antisym_pass", r.antisym_pass}};
}

namespace {

double static_rate(double p, double epsilon, const SourceBundle& sources, std::int64_t N) {
  // frozen Bernoulli(p) field on Z, realized lazily from the initial-config
  // stream; site x is occupied iff u(x) < p
  const RandomSource& field = sources.initial;
  std::int64_t x = 0;
  for (std::int64_t n = 0; n < N; ++n) {
    const bool occ = uniform_at(field, x, 0) < p;
    x += direction(occ, uniform_at(sources.walk, x, n), epsilon);
  }
  return static_cast<double>(x) / static_cast<double>(N);
}

double mean_jump_ratio(double p, double epsilon) {
  // rho = P(left) / P(right) per site
  const double rho_occ = (0.5 - epsilon) / (0.5 + epsilon);
  const double rho_emp = (0.5 + epsilon) / (0.5 - epsilon);
  const double t1 = p == 0.0 ? 0.0 : p * rho_occ;
  const double t2 = p == 1.0 ? 0.0 : (1.0 - p) * rho_emp;
  return t1 + t2;
}

}  // namespace

SolomonReport static_env_solomon_check(double p, double epsilon, std::int64_t N, std::int64_t M,
                                       std::uint64_t seed, const ExecPolicy& policy) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p: density must lie in [0, 1]");
  if (!(epsilon >= -0.5 && epsilon <= 0.5)) {
    throw std::invalid_argument("epsilon: must lie in [-1/2, 1/2]");
  }
  if (N < 1 || M < 2) throw std::invalid_argument("N >= 1 and M >= 2 required");

  SolomonReport r;
  r.p = p;
  r.epsilon = epsilon;
  r.expected_rho = mean_jump_ratio(p, epsilon);
  r.expected_inv_rho = mean_jump_ratio(p, -epsilon);  // 1/rho has the law of rho under eps -> -eps
  if (r.expected_rho < 1.0) {
    r.ballistic = true;
    r.formula_speed = (1.0 - r.expected_rho) / (1.0 + r.expected_rho);
  } else if (r.expected_inv_rho < 1.0) {
    r.ballistic = true;
    r.formula_speed = -(1.0 - r.expected_inv_rho) / (1.0 + r.expected_inv_rho);
  } else {
    r.zero_speed_regime = true;
    r.formula_speed = 0.0;
  }

  const std::uint64_t seed_plus = trial_seed(seed, kPlusRunSalt);
  const std::uint64_t seed_minus = trial_seed(seed, kMinusRunSalt);
  std::vector<double> plus(static_cast<std::size_t>(M)), minus(static_cast<std::size_t>(M));
  for_each_index(M, policy, [&](std::int64_t i) {
    plus[static_cast<std::size_t>(i)] = static_rate(p, epsilon, SourceBundle(trial_seed(seed_plus, i)), N);
    minus[static_cast<std::size_t>(i)] =
        static_rate(p, -epsilon, SourceBundle(trial_seed(seed_minus, i)), N);
  });
  r.v_plus = summarize(plus, static_cast<double>(N));
  r.v_minus = summarize(minus, static_cast<double>(N));
  r.speed_match = std::abs(r.v_plus.mean - r.formula_speed) <= 4.0 * r.v_plus.std_error;
  r.sum = r.v_plus.mean + r.v_minus.mean;
  r.sum_se = std::hypot(r.v_plus.std_error, r.v_minus.std_error);
  r.antisym_pass = std::abs(r.sum) <= 4.0 * r.sum_se;
  return r;
}

}  // namespace epsrw
