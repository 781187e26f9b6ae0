#include "avalanche/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace avalanche {
namespace stats {

double chi2_sf(double x, double df) {
  boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

double chi2_quantile_upper(double alpha, double df) {
  boost::math::chi_squared dist(df);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double normal_sf(double z) {
  boost::math::normal dist;
  return boost::math::cdf(boost::math::complement(dist, z));
}

Chi2Result chi2_goodness(const std::vector<std::uint64_t>& obs, const std::vector<double>& probs,
                         double min_expected) {
  if (obs.size() != probs.size())
    throw std::invalid_argument("chi2_goodness: size mismatch");
  const double n = static_cast<double>(std::accumulate(obs.begin(), obs.end(), std::uint64_t{0}));
  double stat = 0, rest_o = 0, rest_e = 0;
  std::size_t cells = 0;
  for (std::size_t c = 0; c < obs.size(); ++c) {
    const double e = n * probs[c];
    if (e < min_expected) {
      rest_o += static_cast<double>(obs[c]);
      rest_e += e;
      continue;
    }
    const double d = static_cast<double>(obs[c]) - e;
    stat += d * d / e;
    ++cells;
  }
  if (rest_e >= min_expected) {
    const double d = rest_o - rest_e;
    stat += d * d / rest_e;
    ++cells;
  }
  Chi2Result r;
  r.stat = stat;
  r.cells_used = cells;
  r.df = static_cast<double>(cells > 1 ? cells - 1 : 1);
  r.p = chi2_sf(stat, r.df);
  return r;
}

Chi2Result chi2_two_sample(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                           double min_expected) {
  if (a.size() != b.size()) throw std::invalid_argument("chi2_two_sample: size mismatch");
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  const double n = na + nb;

  // pool cells whose pooled expectation is too small
  std::vector<double> pa, pb;
  double rest_a = 0, rest_b = 0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double pooled = static_cast<double>(a[c] + b[c]);
    if (pooled * std::min(na, nb) / n < min_expected) {
      rest_a += static_cast<double>(a[c]);
      rest_b += static_cast<double>(b[c]);
    } else {
      pa.push_back(static_cast<double>(a[c]));
      pb.push_back(static_cast<double>(b[c]));
    }
  }
  if (rest_a + rest_b > 0) {
    pa.push_back(rest_a);
    pb.push_back(rest_b);
  }
  double stat = 0;
  for (std::size_t c = 0; c < pa.size(); ++c) {
    const double col = pa[c] + pb[c];
    if (col == 0) continue;
    const double ea = col * na / n;
    const double eb = col * nb / n;
    stat += (pa[c] - ea) * (pa[c] - ea) / ea;
    stat += (pb[c] - eb) * (pb[c] - eb) / eb;
  }
  Chi2Result r;
  r.stat = stat;
  r.cells_used = pa.size();
  r.df = static_cast<double>(pa.size() > 1 ? pa.size() - 1 : 1);
  r.p = chi2_sf(stat, r.df);
  return r;
}

double ks_stat_exp1(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = 1.0 - std::exp(-xs[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

bool ks_pass_exp1(const std::vector<double>& xs, double* stat_out) {
  const double d = ks_stat_exp1(xs);
  if (stat_out) *stat_out = d;
  return d <= 1.628 / std::sqrt(static_cast<double>(xs.size()));
}

double tv_distance(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tv_distance: size mismatch");
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  double s = 0;
  for (std::size_t c = 0; c < a.size(); ++c)
    s += std::abs(static_cast<double>(a[c]) / na - static_cast<double>(b[c]) / nb);
  return 0.5 * s;
}

TailLineCheck log_survival_line_bound(const std::map<std::int64_t, std::uint64_t>& hist,
                                      std::uint64_t min_tail_count, double slack) {
  TailLineCheck out;
  std::uint64_t total = 0;
  for (const auto& [v, c] : hist) total += c;
  if (total == 0) return out;

  // survival S(x) = P[X >= x] on the observed integer range
  std::vector<double> xs, ys, sig;
  std::uint64_t tail = total;
  for (auto it = hist.begin(); it != hist.end(); ++it) {
    const double s = static_cast<double>(tail) / static_cast<double>(total);
    if (tail >= min_tail_count && s < 1.0) {
      xs.push_back(static_cast<double>(it->first));
      ys.push_back(std::log(s));
      sig.push_back(std::sqrt((1.0 - s) / (static_cast<double>(total) * s)));
    }
    tail -= it->second;
  }
  out.points = xs.size();
  if (xs.size() < 3) return out;

  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;

  double worst = -1e300;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double line = out.intercept + out.slope * xs[i];
    const double excess = ys[i] - line - (3.0 * sig[i] + slack);
    worst = std::max(worst, excess);
  }
  out.max_excess = worst;
  out.ok = out.slope < 0 && worst <= 0;
  return out;
}

std::vector<std::uint64_t> multinomial(const std::vector<double>& probs, std::uint64_t n,
                                       Rng& rng) {
  std::vector<double> cum(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cum.begin());
  const double norm = cum.back();
  std::vector<std::uint64_t> out(probs.size(), 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double u = rng.unit() * norm;
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    ++out[static_cast<std::size_t>(it - cum.begin())];
  }
  return out;
}

}  // namespace stats
}  // namespace avalanche
