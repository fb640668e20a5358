#include "pinlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pinlab/errors.hpp"
#include "pinlab/kern.hpp"

namespace pinlab {

namespace {

// Kolmogorov tail Q(t) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
// Below t = 0.75 the direct series alternates slowly, so the Jacobi theta
// dual of the same function is summed instead; both branches are run to
// full double convergence.
double kolmogorov_tail(double t) {
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  if (t < 0.75) {
    for (int k = 1; k <= 40; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * M_PI * M_PI / (8.0 * t * t));
      sum += term;
      if (term < 1e-17) break;
    }
    const double q = 1.0 - std::sqrt(2.0 * M_PI) / t * sum;
    return std::min(1.0, std::max(0.0, q));
  }
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-17) break;
  }
  const double q = 2.0 * sum;
  return std::min(1.0, std::max(0.0, q));
}

}  // namespace

const char* significance_band(double p) {
  if (p < 0.0001) return "****";
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "ns";
}

KSResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("EmptySample", "ks_two_sample needs both samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double n1 = static_cast<double>(sa.size());
  const double n2 = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  // Once one sample is exhausted the gap only shrinks back to 0, so the
  // remaining pooled points cannot raise the sup.

  KSResult r;
  r.d_statistic = d;
  r.n1 = sa.size();
  r.n2 = sb.size();
  const double n_eff = n1 * n2 / (n1 + n2);
  r.p_value = kolmogorov_tail(std::sqrt(n_eff) * d);
  if (r.p_value <= 0.0) r.p_value = std::numeric_limits<double>::min();
  r.significance_band = significance_band(r.p_value);
  r.small_sample_warning = std::min(sa.size(), sb.size()) < 8;
  return r;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error("DimensionMismatch", "pearson inputs differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw Error("DegenerateVariance", "pearson needs at least 2 points");
  const double mx = kern_sum(x) / static_cast<double>(n);
  const double my = kern_sum(y) / static_cast<double>(n);
  std::vector<double> cx(n), cy(n);
  for (std::size_t i = 0; i < n; ++i) {
    cx[i] = x[i] - mx;
    cy[i] = y[i] - my;
  }
  const double sxx = kern_dot(cx, cx);
  const double syy = kern_dot(cy, cy);
  if (sxx == 0.0 || syy == 0.0)
    throw Error("DegenerateVariance", "pearson input has zero variance");
  return kern_dot(cx, cy) / std::sqrt(sxx * syy);
}

std::vector<double> mid_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error("DimensionMismatch", "spearman inputs differ in length");
  const std::vector<double> rx = mid_ranks(x);
  const std::vector<double> ry = mid_ranks(y);
  return pearson(rx, ry);
}

double mean(std::span<const double> x) {
  if (x.empty()) throw Error("EmptySample", "mean of nothing");
  return kern_sum(x) / static_cast<double>(x.size());
}

double sample_stddev(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw Error("DegenerateVariance", "stddev needs at least 2 points");
  const double m = mean(x);
  double acc = 0.0;
  for (const double v : x) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(n - 1));
}

double quantile(std::span<const double> x, double q) {
  if (x.empty()) throw Error("EmptySample", "quantile of nothing");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  if (q <= 0.0) return s.front();
  if (q >= 1.0) return s.back();
  const double pos = q * static_cast<double>(s.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= s.size()) return s.back();
  return s[lo] * (1.0 - frac) + s[lo + 1] * frac;
}

}  // namespace pinlab
