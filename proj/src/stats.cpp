#include "epsrw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace epsrw {

MeanStdErr mean_stderr(std::span<const double> values) {
  const std::int64_t n = static_cast<std::int64_t>(values.size());
  if (n < 2) {
    throw std::invalid_argument("mean_stderr: need at least two values");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

double chi_square_quantile(std::int64_t df, double prob) {
  if (df < 1) {
    throw std::invalid_argument("chi_square_quantile: df must be >= 1");
  }
  return boost::math::quantile(boost::math::chi_squared(static_cast<double>(df)), prob);
}

ChiSquareResult two_sample_chi_square(const std::map<std::int64_t, std::int64_t>& counts_a,
                                      const std::map<std::int64_t, std::int64_t>& counts_b,
                                      double significance, double min_expected) {
  double na = 0.0, nb = 0.0;
  std::map<std::int64_t, std::pair<double, double>> merged;
  for (auto [v, c] : counts_a) {
    merged[v].first += static_cast<double>(c);
    na += static_cast<double>(c);
  }
  for (auto [v, c] : counts_b) {
    merged[v].second += static_cast<double>(c);
    nb += static_cast<double>(c);
  }
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("two_sample_chi_square: both samples must be non-empty");
  }
  const double total = na + nb;

  // Greedy left-to-right merge of adjacent value bins until the smaller of
  // the two expected cell counts reaches min_expected; a short final bin is
  // folded into its neighbor.
  std::vector<std::pair<double, double>> bins;
  double acc_a = 0.0, acc_b = 0.0;
  const double min_row = std::min(na, nb);
  for (const auto& [value, cell] : merged) {
    (void)value;
    acc_a += cell.first;
    acc_b += cell.second;
    const double expected_small = (acc_a + acc_b) * min_row / total;
    if (expected_small >= min_expected) {
      bins.emplace_back(acc_a, acc_b);
      acc_a = acc_b = 0.0;
    }
  }
  if (acc_a + acc_b > 0.0) {
    if (bins.empty()) {
      bins.emplace_back(acc_a, acc_b);
    } else {
      bins.back().first += acc_a;
      bins.back().second += acc_b;
    }
  }
  if (bins.size() < 2) {
    throw std::invalid_argument("two_sample_chi_square: fewer than two usable bins");
  }

  double stat = 0.0;
  for (const auto& [oa, ob] : bins) {
    const double col = oa + ob;
    const double ea = col * na / total;
    const double eb = col * nb / total;
    stat += (oa - ea) * (oa - ea) / ea;
    stat += (ob - eb) * (ob - eb) / eb;
  }
  ChiSquareResult r;
  r.statistic = stat;
  r.df = static_cast<std::int64_t>(bins.size()) - 1;
  r.threshold = chi_square_quantile(r.df, 1.0 - significance);
  r.pass = stat <= r.threshold;
  return r;
}

double ks_distance_uniform(std::vector<double> draws) {
  if (draws.empty()) {
    throw std::invalid_argument("ks_distance_uniform: empty sample");
  }
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::abs(draws[i] - lo), std::abs(draws[i] - hi)));
  }
  return d;
}

}  // namespace epsrw
