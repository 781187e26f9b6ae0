#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "avalanche/rng.hpp"

namespace avalanche {
namespace stats {

double chi2_sf(double x, double df);        // upper tail probability
double chi2_quantile_upper(double alpha, double df);
double normal_sf(double z);

struct Chi2Result {
  double stat = 0;
  double df = 0;
  double p = 1;
  std::size_t cells_used = 0;
};

// One-sample goodness of fit against exact cell probabilities; cells whose
// expected count falls below min_expected are pooled into a rest bucket.
Chi2Result chi2_goodness(const std::vector<std::uint64_t>& obs,
                         const std::vector<double>& probs, double min_expected = 5.0);

// Two-sample homogeneity test on matched cell counts.
Chi2Result chi2_two_sample(const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b, double min_expected = 5.0);

// Kolmogorov-Smirnov distance to the Exponential(1) cdf.
double ks_stat_exp1(std::vector<double> xs);
// 1% asymptotic critical value 1.628 / sqrt(n).
bool ks_pass_exp1(const std::vector<double>& xs, double* stat_out = nullptr);

// Total variation between two empirical cell distributions, sup-event form
// (half the summed absolute differences).
double tv_distance(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

struct TailLineCheck {
  double slope = 0;        // least-squares slope of log-survival
  double intercept = 0;
  double max_excess = 0;   // worst standardized excess above the line
  bool ok = false;         // slope negative and no point escapes upward
  std::size_t points = 0;
};

// Checks that the empirical log-survival of an integer sample lies under a
// straight line of negative slope over its observed range: least-squares
// line, per-point 3-sigma noise allowance plus a fixed slack.
TailLineCheck log_survival_line_bound(const std::map<std::int64_t, std::uint64_t>& hist,
                                      std::uint64_t min_tail_count = 30, double slack = 0.25);

struct BinomialCI {
  double p_hat = 0;
  double se = 0;
};
inline BinomialCI binomial_ci(std::uint64_t successes, std::uint64_t n) {
  BinomialCI ci;
  ci.p_hat = n ? static_cast<double>(successes) / static_cast<double>(n) : 0.0;
  ci.se = n ? std::sqrt(ci.p_hat * (1 - ci.p_hat) / static_cast<double>(n)) : 0.0;
  return ci;
}

// Multinomial draw with the given cell probabilities (bootstrap helper).
std::vector<std::uint64_t> multinomial(const std::vector<double>& probs, std::uint64_t n,
                                       Rng& rng);

}  // namespace stats
}  // namespace avalanche
