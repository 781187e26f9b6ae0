#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "avalanche/cftp.hpp"
#include "avalanche/contour.hpp"
#include "avalanche/meanfield.hpp"
#include "avalanche/stats.hpp"

namespace avalanche {
namespace harness {

// --- cluster mass Monte Carlo -------------------------------------------

struct MassHistogram {
  std::map<int, std::uint64_t> counts;  // mass -> replicas
  std::uint64_t total = 0;

  // c_k estimate (counts[k]/total)/k with its standard error
  double ck(int k) const;
  double ck_se(int k) const;
  double sum_k2_ck() const;  // equals the sample mean of the mass
  double sum_k2_ck_se() const;
  double sum_ck() const;
};

struct ClusterStats {
  MassHistogram hist;
  std::uint64_t discarded = 0;        // boundary-truncated replicas rerun wider
  std::uint64_t budget_exceeded = 0;  // sampler budget hits (retried)
  int start_window = 16;
  int max_window = 16;                // largest window any replica needed
  bool adaptive_warning = false;      // discard rate above 1%
};

ClusterStats estimate_cluster_mass_distribution(std::uint64_t samples, std::uint64_t seed,
                                                SamplerVariant variant, int workers,
                                                int start_window = 16);

// --- mean-field comparison ------------------------------------------------

struct CompareRow {
  int k = 0;
  double mean_field = 0;
  double monte_carlo = 0;
  double se = 0;
  double z = 0;
  bool near_equal = false;  // |z| < 3: indistinguishable at this sample size
};

struct Comparison {
  std::vector<CompareRow> rows;  // k = 1..kmax
  CompareRow m2;                 // second moment line (k field unused)
};

Comparison compare_with_meanfield(const ClusterStats& stats,
                                  const meanfield::SteadyStateSolution& steady, int kmax = 6);

// --- mixing of the invariant law ------------------------------------------

struct MixingPoint {
  int n = 0;
  double estimate = 0;      // sum over the 4 cells of |P[ab] - P[a]P[b]|
  double se_boot = 0;
  double noise_floor = 0;   // 99th percentile of the statistic under the product law
  std::array<std::uint64_t, 4> cells{};  // (a,b) counts, index 2a + b
};

// Joint occupancy of (k, k+n) under the invariant law, one perfect-sampler
// batch shared across every n (the window covers k and k + max n).
std::vector<MixingPoint> mixing_sweep(Site k, const std::vector<int>& ns, std::uint64_t samples,
                                      std::uint64_t seed, int workers);

// --- trend to equilibrium ---------------------------------------------------

enum class InitialKind { all_vacant, alternating, random_half };
InitialKind parse_initial_kind(const std::string& name);

struct TtePoint {
  double t = 0;
  double tv = 0;           // half L1 between window laws
  double noise_floor = 0;  // TV between two independent stationary batches
};

std::vector<TtePoint> tte_sweep(InitialKind phi, const std::vector<double>& ts, Site l,
                                std::uint64_t samples, std::uint64_t seed, int workers,
                                Site forward_radius = 60);

// --- sampler/forward distribution oracles ----------------------------------

// Window-configuration histogram (cell = bits of [-l, l], left = msb) from
// perfect samples.
std::vector<std::uint64_t> sampler_window_histogram(Site l, std::uint64_t samples,
                                                    std::uint64_t seed, SamplerVariant variant,
                                                    int workers);

// Thinned time-average of truncated forward runs (4 chains, burn-in
// discarded); the independent oracle for the sampler's law.
std::vector<std::uint64_t> forward_window_histogram(Site l, Site radius, double burn_in,
                                                    double thin_dt, std::uint64_t draws,
                                                    std::uint64_t seed);

// --- step 1 vs step 1' ------------------------------------------------------

struct BenchReport {
  double median_us_step1 = 0;
  double median_us_step1prime = 0;
  double speedup = 0;  // step1 time / step1' time
  double median_width_step1 = 0;
  double median_width_step1prime = 0;
  double law_p = 0;  // two-sample chi-square p between window distributions
};

BenchReport bench_variants(Site l, std::uint64_t samples, std::uint64_t seed, int workers);

// --- command line -----------------------------------------------------------

int cli_main(const std::vector<std::string>& args);

}  // namespace harness
}  // namespace avalanche
