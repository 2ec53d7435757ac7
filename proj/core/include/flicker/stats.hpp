#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace flicker {

// Pairwise (cascade) summation; the result depends only on the order of the
// input, not on how it was produced.
double pairwise_sum(std::span<const double> v);

double mean(std::span<const double> v);

// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_stddev(std::span<const double> v);

// Standard error of the mean; 0 for fewer than two values.
double standard_error(std::span<const double> v);

double median(std::vector<double> v);

struct RankTestResult {
  double u = 0.0;        // Mann-Whitney U of the first sample
  double z = 0.0;        // normal approximation with tie correction
  double p_value = 1.0;  // two-sided
};

// Two-sided Mann-Whitney U test (normal approximation, continuity corrected).
RankTestResult mann_whitney(std::span<const double> a, std::span<const double> b);

}  // namespace flicker
