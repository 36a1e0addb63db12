#include "epsrw/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace epsrw {

namespace {

void guard_ring_size(const EnvironmentSpec& spec, std::int64_t max_L, const char* what) {
  if (spec.L > max_L) {
    throw std::length_error(std::string(what) + ": ring size " + std::to_string(spec.L) +
                            " exceeds the exact-computation guard L <= " + std::to_string(max_L));
  }
}

inline int bit(std::int64_t state, std::int64_t x) { return (state >> x) & 1; }

}  // namespace

Eigen::MatrixXd sub_update_matrix(const EnvironmentSpec& spec) {
  spec.validate();
  guard_ring_size(spec, 12, "sub_update_matrix");
  const std::int64_t L = spec.L;
  const std::int64_t n = std::int64_t{1} << L;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);

  switch (spec.kind) {
    case EnvKind::frozen_bernoulli:
      K.setIdentity();
      break;
    case EnvKind::iid_refresh: {
      Eigen::VectorXd product(n);
      for (std::int64_t s = 0; s < n; ++s) {
        double w = 1.0;
        for (std::int64_t x = 0; x < L; ++x) w *= bit(s, x) ? spec.p : 1.0 - spec.p;
        product(s) = w;
      }
      for (std::int64_t s = 0; s < n; ++s) K.row(s) = product.transpose();
      break;
    }
    case EnvKind::ssep_random_scan: {
      const double edge_w = 1.0 / static_cast<double>(L);
      for (std::int64_t s = 0; s < n; ++s) {
        for (std::int64_t e = 0; e < L; ++e) {
          const std::int64_t f = (e + 1) % L;
          const std::int64_t swapped =
              bit(s, e) == bit(s, f) ? s : s ^ ((std::int64_t{1} << e) | (std::int64_t{1} << f));
          K(s, swapped) += 0.5 * edge_w;
          K(s, s) += 0.5 * edge_w;
        }
      }
      break;
    }
    case EnvKind::east_random_scan:
    case EnvKind::east_skew_test: {
      const double density = spec.kind == EnvKind::east_random_scan ? spec.p : 1.0 - spec.p;
      const double site_w = 1.0 / static_cast<double>(L);
      for (std::int64_t s = 0; s < n; ++s) {
        for (std::int64_t x = 0; x < L; ++x) {
          if (bit(s, (x + 1) % L)) {
            K(s, s) += site_w;  // constraint blocked: no update
          } else {
            K(s, s | (std::int64_t{1} << x)) += site_w * density;
            K(s, s & ~(std::int64_t{1} << x)) += site_w * (1.0 - density);
          }
        }
      }
      break;
    }
  }
  return K;
}

Eigen::MatrixXd transition_matrix(const EnvironmentSpec& spec) {
  Eigen::MatrixXd K = sub_update_matrix(spec);
  const std::int64_t k = spec.effective_substeps();
  Eigen::MatrixXd result = K;
  for (std::int64_t j = 1; j < k; ++j) result = result * K;
  return result;
}

Eigen::VectorXd stationary_measure(const EnvironmentSpec& spec) {
  spec.validate();
  guard_ring_size(spec, 12, "stationary_measure");
  const std::int64_t L = spec.L;
  const std::int64_t n = std::int64_t{1} << L;
  const bool east = spec.kind == EnvKind::east_random_scan || spec.kind == EnvKind::east_skew_test;
  const double density = spec.kind == EnvKind::east_skew_test ? 1.0 - spec.p : spec.p;
  Eigen::VectorXd pi(n);
  for (std::int64_t s = 0; s < n; ++s) {
    double w = 1.0;
    for (std::int64_t x = 0; x < L; ++x) w *= bit(s, x) ? density : 1.0 - density;
    pi(s) = w;
  }
  if (east) {
    pi(n - 1) = 0.0;  // exclude all-ones
    pi /= pi.sum();
  }
  return pi;
}

double check_detailed_balance(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& pi) {
  if (kernel.rows() != kernel.cols() || kernel.rows() != pi.size()) {
    throw std::invalid_argument("check_detailed_balance: kernel/pi dimensions do not agree");
  }
  if (std::abs(pi.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("check_detailed_balance: pi does not sum to 1 within 1e-12");
  }
  double worst = 0.0;
  const auto n = kernel.rows();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      worst = std::max(worst, std::abs(pi(a) * kernel(a, b) - pi(b) * kernel(b, a)));
    }
  }
  return worst;
}

std::int64_t rotate_config_index(std::int64_t index, std::int64_t L) {
  std::int64_t out = 0;
  for (std::int64_t x = 0; x < L; ++x) {
    if (bit(index, x)) out |= std::int64_t{1} << ((x + 1) % L);
  }
  return out;
}

std::int64_t mirror_config_index(std::int64_t index, std::int64_t L) {
  std::int64_t out = 0;
  for (std::int64_t x = 0; x < L; ++x) {
    if (bit(index, x)) out |= std::int64_t{1} << ((L - x) % L);
  }
  return out;
}

double mirror_kernel_distance(const EnvironmentSpec& spec) {
  spec.validate();
  guard_ring_size(spec, 10, "mirror_kernel_distance");
  const Eigen::MatrixXd K = transition_matrix(spec);
  const std::int64_t n = K.rows();
  double worst = 0.0;
  for (std::int64_t a = 0; a < n; ++a) {
    const std::int64_t ma = mirror_config_index(a, spec.L);
    for (std::int64_t b = 0; b < n; ++b) {
      worst = std::max(worst, std::abs(K(a, b) - K(ma, mirror_config_index(b, spec.L))));
    }
  }
  return worst;
}

double mirror_asymmetry_stat(const EnvironmentSpec& spec, std::int64_t lag) {
  spec.validate();
  guard_ring_size(spec, 10, "mirror_asymmetry_stat");
  if (lag < 1) {
    throw std::invalid_argument("mirror_asymmetry_stat: lag must be >= 1");
  }
  const std::int64_t L = spec.L;
  const std::int64_t n = std::int64_t{1} << L;
  const Eigen::MatrixXd K = transition_matrix(spec);
  Eigen::MatrixXd Klag = K;
  for (std::int64_t j = 1; j < lag; ++j) Klag = Klag * K;
  const Eigen::VectorXd pi = stationary_measure(spec);

  // occupation indicators at the two neighbors of site 0
  Eigen::VectorXd right(n), left(n);
  for (std::int64_t t = 0; t < n; ++t) {
    right(t) = bit(t, 1 % L);
    left(t) = bit(t, (L - 1) % L);
  }
  const Eigen::VectorXd gr = Klag * right;  // E[eta_lag(x+1) | eta_0 = s]
  const Eigen::VectorXd gl = Klag * left;
  double c_plus = 0.0, c_minus = 0.0;
  for (std::int64_t s = 0; s < n; ++s) {
    if (!bit(s, 0)) continue;
    c_plus += pi(s) * gr(s);
    c_minus += pi(s) * gl(s);
  }
  return c_plus - c_minus;
}

}  // namespace epsrw
