#pragma once

#include <Eigen/Dense>

#include "epsrw/environment.hpp"

namespace epsrw {

// Exact finite-state machinery for small rings. Configurations are indexed
// by the integer whose bit x is the value of site x (LSB = site 0).

// Single random-scan sub-update as a 2^L x 2^L stochastic matrix.
Eigen::MatrixXd sub_update_matrix(const EnvironmentSpec& spec);

// One walker-time-step kernel: substeps_k sub-updates composed.
// Guard: L <= 12.
Eigen::MatrixXd transition_matrix(const EnvironmentSpec& spec);

// Stationary measure over the 2^L configurations: product Bernoulli(p);
// for East, conditioned on not all-ones (that entry carries zero mass).
Eigen::VectorXd stationary_measure(const EnvironmentSpec& spec);

// max over state pairs (a,b) of |pi[a] K(a,b) - pi[b] K(b,a)|.
// Throws on dimension mismatch or if pi does not sum to 1 within 1e-12.
double check_detailed_balance(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& pi);

// c_plus - c_minus with c_pm = E_pi[eta_0(x) eta_lag(x +- 1)], computed
// exactly from pi and the kernel's lag-th power. Nonzero certifies lack of
// mirror symmetry. Guard: L <= 10.
//
// Caveat, verified by the test suite: this difference vanishes identically
// for every reversible translation-invariant kernel. Detailed balance makes
// the kernel self-adjoint in L2(pi), so E[eta_0(x) eta_lag(x+1)] equals
// E[eta_lag(x) eta_0(x+1)], which stationarity and a one-site shift turn
// into E[eta_0(x) eta_lag(x-1)]. Two-point space-time correlations cannot
// see the East model's directedness; mirror_kernel_distance can.
double mirror_asymmetry_stat(const EnvironmentSpec& spec, std::int64_t lag);

// Direct certificate of (non-)mirror-symmetry of the dynamics:
// max over state pairs of |K(a,b) - K(m(a), m(b))| with m the site
// reflection x -> -x mod L. Zero for frozen/iid/ssep, strictly positive for
// East. Guard: L <= 10.
double mirror_kernel_distance(const EnvironmentSpec& spec);

// Ring-rotation permutation on configuration indices (site x -> x+1 mod L).
std::int64_t rotate_config_index(std::int64_t index, std::int64_t L);

// Site reflection x -> -x mod L on configuration indices.
std::int64_t mirror_config_index(std::int64_t index, std::int64_t L);

}  // namespace epsrw
