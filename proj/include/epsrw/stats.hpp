#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace epsrw {

struct MeanStdErr {
  double mean = 0.0;
  double se = 0.0;
  std::int64_t n = 0;
};

// Sample mean and standard error (sample std / sqrt(n)).
MeanStdErr mean_stderr(std::span<const double> values);

// Inverse CDF of the chi-square distribution.
double chi_square_quantile(std::int64_t df, double prob);

struct ChiSquareResult {
  double statistic = 0.0;
  std::int64_t df = 0;
  double threshold = 0.0;
  bool pass = false;  // statistic <= threshold
};

// Two-sample chi-square homogeneity test on integer-valued observations.
// Adjacent bins are merged until every expected cell count reaches
// min_expected. pass means "no significant difference at `significance`".
ChiSquareResult two_sample_chi_square(const std::map<std::int64_t, std::int64_t>& counts_a,
                                      const std::map<std::int64_t, std::int64_t>& counts_b,
                                      double significance, double min_expected = 5.0);

// Kolmogorov-Smirnov distance of a sample from Uniform[0,1).
double ks_distance_uniform(std::vector<double> draws);

}  // namespace epsrw
