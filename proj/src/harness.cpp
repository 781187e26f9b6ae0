#include "avalanche/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "avalanche/forward.hpp"
#include "avalanche/parallel.hpp"
#include "avalanche/records.hpp"

namespace avalanche {
namespace harness {

namespace {

// stream purpose tags so independent estimators never share a substream
constexpr std::uint64_t kStreamCluster = 0xC1;
constexpr std::uint64_t kStreamSamplerHist = 0x5A;
constexpr std::uint64_t kStreamMixing = 0x31;
constexpr std::uint64_t kStreamMixBoot = 0x32;
constexpr std::uint64_t kStreamTteFwd = 0x77;
constexpr std::uint64_t kStreamFwdOracle = 0xF0;
constexpr std::uint64_t kStreamBench = 0xBE;

Rng replica_rng(std::uint64_t seed, std::uint64_t purpose, std::uint64_t a, std::uint64_t b = 0) {
  return Rng(RngStream{seed, mix64(purpose, a, b)});
}

std::size_t window_cell(const Config& cfg, Site l) {
  std::size_t idx = 0;
  for (Site i = -l; i <= l; ++i) idx = (idx << 1) | (cfg.occupied(i) ? 1u : 0u);
  return idx;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
  return 0.5 * (hi + v[mid - 1]);
}

}  // namespace

// --- cluster mass Monte Carlo -------------------------------------------

double MassHistogram::ck(int k) const {
  auto it = counts.find(k);
  const std::uint64_t c = it == counts.end() ? 0 : it->second;
  return total ? static_cast<double>(c) / static_cast<double>(total) / k : 0.0;
}

double MassHistogram::ck_se(int k) const {
  auto it = counts.find(k);
  const std::uint64_t c = it == counts.end() ? 0 : it->second;
  const auto ci = stats::binomial_ci(c, total);
  return ci.se / k;
}

double MassHistogram::sum_k2_ck() const {
  // sum_k k^2 c_k = sum_k k P[M=k] = E[M]
  double s = 0;
  for (const auto& [k, c] : counts) s += static_cast<double>(k) * static_cast<double>(c);
  return total ? s / static_cast<double>(total) : 0.0;
}

double MassHistogram::sum_k2_ck_se() const {
  double m1 = 0, m2 = 0;
  for (const auto& [k, c] : counts) {
    const double kk = static_cast<double>(k);
    m1 += kk * static_cast<double>(c);
    m2 += kk * kk * static_cast<double>(c);
  }
  if (!total) return 0;
  m1 /= static_cast<double>(total);
  m2 /= static_cast<double>(total);
  return std::sqrt(std::max(0.0, m2 - m1 * m1) / static_cast<double>(total));
}

double MassHistogram::sum_ck() const {
  double s = 0;
  for (const auto& [k, c] : counts) s += static_cast<double>(c) / k;
  return total ? s / static_cast<double>(total) : 0.0;
}

ClusterStats estimate_cluster_mass_distribution(std::uint64_t samples, std::uint64_t seed,
                                                SamplerVariant variant, int workers,
                                                int start_window) {
  if (samples == 0) throw std::invalid_argument("cluster stats need at least one sample");
  struct Acc {
    std::map<int, std::uint64_t> counts;
    std::uint64_t discarded = 0;
    std::uint64_t budget = 0;
    int max_window = 0;
  };
  auto parts = parallel_replicas<Acc>(samples, workers, Acc{}, [&](std::uint64_t r, Acc& acc) {
    int l = start_window;
    for (std::uint64_t attempt = 0;; ++attempt) {
      Rng rng = replica_rng(seed, kStreamCluster, r, attempt);
      try {
        const SampleResult s = sample_invariant_window(l, variant, rng);
        const int mass = particle_mass_at_edge(s.window);
        ++acc.counts[mass];
        acc.max_window = std::max(acc.max_window, l);
        return;
      } catch (const BoundaryTruncatedError&) {
        ++acc.discarded;
        l *= 2;  // restart wider; extending a finished sample would bias the law
        if (l > (1 << 14)) throw;
      } catch (const BudgetExceededError&) {
        ++acc.budget;
      }
    }
  });
  ClusterStats out;
  out.start_window = start_window;
  out.hist.total = samples;
  for (const Acc& a : parts) {
    for (const auto& [k, c] : a.counts) out.hist.counts[k] += c;
    out.discarded += a.discarded;
    out.budget_exceeded += a.budget;
    out.max_window = std::max(out.max_window, a.max_window);
  }
  out.adaptive_warning =
      static_cast<double>(out.discarded) > 0.01 * static_cast<double>(samples);
  return out;
}

Comparison compare_with_meanfield(const ClusterStats& stats_in,
                                  const meanfield::SteadyStateSolution& steady, int kmax) {
  Comparison cmp;
  for (int k = 1; k <= kmax; ++k) {
    CompareRow row;
    row.k = k;
    row.mean_field = k <= static_cast<int>(steady.c.K()) ? steady.c.c[k - 1] : 0.0;
    row.monte_carlo = stats_in.hist.ck(k);
    row.se = stats_in.hist.ck_se(k);
    row.z = row.se > 0 ? (row.monte_carlo - row.mean_field) / row.se : 0.0;
    row.near_equal = std::abs(row.z) < 3.0;
    cmp.rows.push_back(row);
  }
  cmp.m2.mean_field = steady.c.m2();
  cmp.m2.monte_carlo = stats_in.hist.sum_k2_ck();
  cmp.m2.se = stats_in.hist.sum_k2_ck_se();
  cmp.m2.z = cmp.m2.se > 0 ? (cmp.m2.monte_carlo - cmp.m2.mean_field) / cmp.m2.se : 0.0;
  cmp.m2.near_equal = std::abs(cmp.m2.z) < 3.0;
  return cmp;
}

// --- mixing ---------------------------------------------------------------

namespace {

double mixing_statistic(const std::array<std::uint64_t, 4>& cells) {
  const double n = static_cast<double>(cells[0] + cells[1] + cells[2] + cells[3]);
  if (n == 0) return 0;
  double s = 0;
  const double pa = (cells[2] + cells[3]) / n;  // P[a=1]
  const double pb = (cells[1] + cells[3]) / n;  // P[b=1]
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double joint = cells[2 * a + b] / n;
      const double prod = (a ? pa : 1 - pa) * (b ? pb : 1 - pb);
      s += std::abs(joint - prod);
    }
  return s;
}

}  // namespace

std::vector<MixingPoint> mixing_sweep(Site k, const std::vector<int>& ns, std::uint64_t samples,
                                      std::uint64_t seed, int workers) {
  if (ns.empty()) return {};
  Site l = std::abs(k);
  for (int n : ns) l = std::max({l, std::abs(k + n)});

  struct Acc {
    std::vector<std::array<std::uint64_t, 4>> cells;
  };
  Acc init;
  init.cells.assign(ns.size(), {});
  auto parts = parallel_replicas<Acc>(samples, workers, init, [&](std::uint64_t r, Acc& acc) {
    Rng rng = replica_rng(seed, kStreamMixing, r);
    const SampleResult s = sample_invariant_window(l, SamplerVariant::step1prime, rng);
    const bool a = s.window.occupied(k);
    for (std::size_t j = 0; j < ns.size(); ++j) {
      const bool b = s.window.occupied(k + ns[j]);
      ++acc.cells[j][2 * (a ? 1 : 0) + (b ? 1 : 0)];
    }
  });

  std::vector<MixingPoint> out;
  for (std::size_t j = 0; j < ns.size(); ++j) {
    MixingPoint p;
    p.n = ns[j];
    for (const Acc& a : parts)
      for (int c = 0; c < 4; ++c) p.cells[c] += a.cells[j][c];
    p.estimate = mixing_statistic(p.cells);

    const double n = static_cast<double>(samples);
    std::vector<double> joint = {p.cells[0] / n, p.cells[1] / n, p.cells[2] / n, p.cells[3] / n};
    const double pa = joint[2] + joint[3];
    const double pb = joint[1] + joint[3];
    std::vector<double> prod = {(1 - pa) * (1 - pb), (1 - pa) * pb, pa * (1 - pb), pa * pb};

    Rng boot = replica_rng(seed, kStreamMixBoot, static_cast<std::uint64_t>(p.n));
    double sum = 0, sum2 = 0;
    constexpr int kBootRounds = 200;
    for (int b = 0; b < kBootRounds; ++b) {
      const auto res = stats::multinomial(joint, samples, boot);
      const double v = mixing_statistic({res[0], res[1], res[2], res[3]});
      sum += v;
      sum2 += v * v;
    }
    p.se_boot = std::sqrt(std::max(0.0, sum2 / kBootRounds - (sum / kBootRounds) * (sum / kBootRounds)));

    constexpr int kFloorRounds = 400;
    std::vector<double> nulls(kFloorRounds);
    for (int b = 0; b < kFloorRounds; ++b) {
      const auto res = stats::multinomial(prod, samples, boot);
      nulls[b] = mixing_statistic({res[0], res[1], res[2], res[3]});
    }
    std::sort(nulls.begin(), nulls.end());
    p.noise_floor = nulls[static_cast<std::size_t>(0.99 * kFloorRounds)];
    out.push_back(p);
  }
  return out;
}

// --- trend to equilibrium ----------------------------------------------------

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "all-vacant") return InitialKind::all_vacant;
  if (name == "alternating") return InitialKind::alternating;
  if (name == "random-half") return InitialKind::random_half;
  throw std::invalid_argument("unknown initial condition '" + name + "'");
}

namespace {

Config make_initial(InitialKind kind, Site radius, Rng& rng) {
  const Interval w{-radius, radius};
  switch (kind) {
    case InitialKind::all_vacant:
      return Config::all_vacant(w);
    case InitialKind::alternating: {
      std::vector<SiteState> st;
      for (Site i = w.left; i <= w.right; ++i)
        st.push_back((i & 1) == 0 ? SiteState::occupied : SiteState::vacant);
      return Config::from_states(w, std::move(st));
    }
    case InitialKind::random_half: {
      std::vector<SiteState> st;
      for (Site i = w.left; i <= w.right; ++i)
        st.push_back(rng.coin() ? SiteState::occupied : SiteState::vacant);
      return Config::from_states(w, std::move(st));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<std::uint64_t> sampler_window_histogram(Site l, std::uint64_t samples,
                                                    std::uint64_t seed, SamplerVariant variant,
                                                    int workers) {
  const std::size_t cells = std::size_t{1} << (2 * l + 1);
  using Acc = std::vector<std::uint64_t>;
  auto parts = parallel_replicas<Acc>(samples, workers, Acc(cells, 0),
                                      [&](std::uint64_t r, Acc& acc) {
                                        Rng rng = replica_rng(seed, kStreamSamplerHist, r);
                                        const SampleResult s =
                                            sample_invariant_window(l, variant, rng);
                                        ++acc[window_cell(s.window, l)];
                                      });
  Acc out(cells, 0);
  for (const Acc& a : parts)
    for (std::size_t c = 0; c < cells; ++c) out[c] += a[c];
  return out;
}

std::vector<std::uint64_t> forward_window_histogram(Site l, Site radius, double burn_in,
                                                    double thin_dt, std::uint64_t draws,
                                                    std::uint64_t seed) {
  const std::size_t cells = std::size_t{1} << (2 * l + 1);
  constexpr std::uint64_t kChains = 4;
  using Acc = std::vector<std::uint64_t>;
  auto parts = parallel_replicas<Acc>(
      kChains, static_cast<int>(kChains), Acc(cells, 0), [&](std::uint64_t chain, Acc& acc) {
        Rng rng = replica_rng(seed, kStreamFwdOracle, chain);
        std::uint64_t quota = draws / kChains + (chain == 0 ? draws % kChains : 0);
        Config eta = Config::all_vacant(Interval{-radius, radius});
        const double rate = static_cast<double>(eta.window().width());
        double t = 0, next_sample = burn_in;
        std::uint64_t taken = 0;
        while (taken < quota) {
          const double dt = rng.exponential(rate);
          while (taken < quota && next_sample <= t + dt) {
            ++acc[window_cell(eta, l)];
            ++taken;
            next_sample += thin_dt;
          }
          t += dt;
          avalanche_apply_mark_inplace(eta, rng.range(-radius, radius));
        }
      });
  Acc out(cells, 0);
  for (const Acc& a : parts)
    for (std::size_t c = 0; c < cells; ++c) out[c] += a[c];
  return out;
}

std::vector<TtePoint> tte_sweep(InitialKind phi, const std::vector<double>& ts, Site l,
                                std::uint64_t samples, std::uint64_t seed, int workers,
                                Site forward_radius) {
  const std::size_t cells = std::size_t{1} << (2 * l + 1);
  const auto ref = sampler_window_histogram(l, samples, mix64(seed, 0xA1), SamplerVariant::step1prime,
                                            workers);
  const auto ref2 = sampler_window_histogram(l, samples, mix64(seed, 0xA2),
                                             SamplerVariant::step1prime, workers);
  const double floor = stats::tv_distance(ref, ref2);

  std::vector<TtePoint> out;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    using Acc = std::vector<std::uint64_t>;
    auto parts = parallel_replicas<Acc>(
        samples, workers, Acc(cells, 0), [&](std::uint64_t r, Acc& acc) {
          Rng rng = replica_rng(seed, kStreamTteFwd, j, r);
          Config eta = make_initial(phi, forward_radius, rng);
          eta = run_avalanche_to_time(std::move(eta), ts[j], rng);
          ++acc[window_cell(eta, l)];
        });
    Acc fwd(cells, 0);
    for (const Acc& a : parts)
      for (std::size_t c = 0; c < cells; ++c) fwd[c] += a[c];
    TtePoint p;
    p.t = ts[j];
    p.tv = stats::tv_distance(fwd, ref);
    p.noise_floor = floor;
    out.push_back(p);
  }
  return out;
}

// --- step 1 vs step 1' --------------------------------------------------------

BenchReport bench_variants(Site l, std::uint64_t samples, std::uint64_t seed, int workers) {
  const std::size_t cells = std::size_t{1} << (2 * l + 1);
  struct Acc {
    std::vector<double> us;
    std::vector<double> widths;
    std::vector<std::uint64_t> hist;
  };
  auto run_variant = [&](SamplerVariant v, std::uint64_t tag) {
    Acc init;
    init.hist.assign(cells, 0);
    auto parts = parallel_replicas<Acc>(samples, workers, init, [&](std::uint64_t r, Acc& acc) {
      Rng rng = replica_rng(seed, kStreamBench, tag, r);
      const auto t0 = std::chrono::steady_clock::now();
      const SampleResult s = sample_invariant_window(l, v, rng);
      const auto t1 = std::chrono::steady_clock::now();
      acc.us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
      acc.widths.push_back(static_cast<double>(s.diag.domain_width()));
      ++acc.hist[window_cell(s.window, l)];
    });
    Acc merged;
    merged.hist.assign(cells, 0);
    for (Acc& a : parts) {
      merged.us.insert(merged.us.end(), a.us.begin(), a.us.end());
      merged.widths.insert(merged.widths.end(), a.widths.begin(), a.widths.end());
      for (std::size_t c = 0; c < cells; ++c) merged.hist[c] += a.hist[c];
    }
    return merged;
  };
  const Acc one = run_variant(SamplerVariant::step1, 1);
  const Acc prime = run_variant(SamplerVariant::step1prime, 2);

  BenchReport rep;
  rep.median_us_step1 = median_of(one.us);
  rep.median_us_step1prime = median_of(prime.us);
  rep.speedup = rep.median_us_step1prime > 0 ? rep.median_us_step1 / rep.median_us_step1prime : 0;
  rep.median_width_step1 = median_of(one.widths);
  rep.median_width_step1prime = median_of(prime.widths);
  rep.law_p = stats::chi2_two_sample(one.hist, prime.hist).p;
  return rep;
}

}  // namespace harness
}  // namespace avalanche
