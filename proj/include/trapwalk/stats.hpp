// Replicate summaries and a one-sided two-sample domination test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace trapwalk {

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0;
  double variance = 0;  // unbiased
  double stderr_ = 0;
  double min = 0;
  double max = 0;
  double q05 = 0, q25 = 0, median = 0, q75 = 0, q95 = 0;
};

/// Linear-interpolation quantile (type 7) of sorted data.
inline double quantile_sorted(const std::vector<double>& s, double p) {
  if (s.empty()) throw std::invalid_argument("quantile of empty sample");
  const double h = (static_cast<double>(s.size()) - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

/// Welford accumulation in index order, then quantiles from a sorted copy.
inline SummaryStats summarize(const std::vector<double>& xs) {
  SummaryStats st;
  if (xs.empty()) return st;
  double mean = 0, m2 = 0;
  std::size_t k = 0;
  for (double x : xs) {
    ++k;
    const double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
  }
  st.n = k;
  st.mean = mean;
  st.variance = k > 1 ? m2 / static_cast<double>(k - 1) : 0.0;
  st.stderr_ = std::sqrt(st.variance / static_cast<double>(k));
  std::vector<double> s(xs);
  std::sort(s.begin(), s.end());
  st.min = s.front();
  st.max = s.back();
  st.q05 = quantile_sorted(s, 0.05);
  st.q25 = quantile_sorted(s, 0.25);
  st.median = quantile_sorted(s, 0.50);
  st.q75 = quantile_sorted(s, 0.75);
  st.q95 = quantile_sorted(s, 0.95);
  return st;
}

struct DominationTest {
  double statistic = 0;  // sup_t (F_big(t) - F_small(t))
  double critical = 0;
  bool passes = false;   // domination not rejected
};

/// One-sided two-sample Kolmogorov-Smirnov test of "small is stochastically
/// dominated by big", i.e. F_small >= F_big everywhere. Rejects at level alpha
/// when sup (F_big - F_small) exceeds sqrt(ln(1/alpha)/2 * (n+m)/(n*m)).
inline DominationTest ks_domination(std::vector<double> small, std::vector<double> big, double alpha = 0.01) {
  if (small.empty() || big.empty()) throw std::invalid_argument("domination test needs non-empty samples");
  std::sort(small.begin(), small.end());
  std::sort(big.begin(), big.end());
  const double n = static_cast<double>(small.size()), m = static_cast<double>(big.size());
  std::size_t i = 0, j = 0;
  double sup = 0;
  while (i < small.size() || j < big.size()) {
    double t;
    if (j == big.size() || (i < small.size() && small[i] <= big[j]))
      t = small[i];
    else
      t = big[j];
    while (i < small.size() && small[i] <= t) ++i;
    while (j < big.size() && big[j] <= t) ++j;
    sup = std::max(sup, static_cast<double>(j) / m - static_cast<double>(i) / n);
  }
  DominationTest r;
  r.statistic = sup;
  r.critical = std::sqrt(std::log(1.0 / alpha) / 2.0 * (n + m) / (n * m));
  r.passes = sup <= r.critical;
  return r;
}

}  // namespace trapwalk
