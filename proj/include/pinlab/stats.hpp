#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pinlab {

struct KSResult {
  double d_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  // One of "****", "***", "**", "*", "ns".
  std::string significance_band;
  // Asymptotic p-values are rough below ~8 samples per side.
  bool small_sample_warning = false;
};

// Two-sample Kolmogorov-Smirnov. d is the exact sup over pooled points of
// |ECDF_a - ECDF_b|; the p-value is the asymptotic Kolmogorov tail at
// sqrt(n1*n2/(n1+n2)) * d, with no small-sample correction.
KSResult ks_two_sample(std::span<const double> a, std::span<const double> b);

const char* significance_band(double p_value);

double pearson(std::span<const double> x, std::span<const double> y);

// Pearson over mid-ranks (ties get the average of the ranks they span).
double spearman(std::span<const double> x, std::span<const double> y);

std::vector<double> mid_ranks(std::span<const double> x);

double mean(std::span<const double> x);
double sample_stddev(std::span<const double> x);

// Linear-interpolation quantile, q in [0,1]; input need not be sorted.
double quantile(std::span<const double> x, double q);

}  // namespace pinlab
