#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "avalanche/lattice.hpp"
#include "avalanche/rng.hpp"

namespace avalanche {

// Probability that a rate-1 Poisson count over an interval of length s is odd.
inline double odd_flip_prob(double s) { return 0.5 * (1.0 - std::exp(-2.0 * s)); }

// Bernoulli environment revealed lazily while it keeps evolving: every site
// flips at the arrivals of its own rate-1 Poisson clock. A site's value is
// re-sampled on each read with flip probability odd_flip_prob(exposure),
// where exposure excludes the stretches spent adjacent to a contour (the
// adjacent clocks are the observed driving streams, so they carry no hidden
// marks between events).
class DecayEnv {
 public:
  enum class Init {
    stationary_fair,  // product Bernoulli(1/2) at time 0
    xi_seed,          // sites <= 0 occupied, site 1 vacant, sites >= 2 fair coins
  };

  DecayEnv(Init init, Rng& rng) : init_(init), rng_(&rng) {}

  double now() const { return now_; }

  void advance(double h) {
    now_ += h;
    for (Site k : freeze_) {
      auto it = cells_.find(k);
      if (it != cells_.end()) it->second.frozen += h;
    }
  }

  SiteState read(Site k) {
    Cell& c = touch(k);
    double exposure = (now_ - c.sync_t) - c.frozen;
    if (exposure < 0) exposure = 0;  // fp slop
    if (exposure > 0 && rng_->bernoulli(odd_flip_prob(exposure))) c.value ^= 1;
    c.sync_t = now_;
    c.frozen = 0;
    return static_cast<SiteState>(c.value);
  }

  // Black mark at k: synchronize, then invert.
  void flip(Site k) {
    read(k);
    cells_.find(k)->second.value ^= 1;
  }

  // Replaces the freeze set; newly frozen sites are materialized now, so
  // every later freeze interval is backed by an exposure record.
  void set_freeze(const std::vector<Site>& sites) {
    freeze_ = sites;
    for (Site k : freeze_) touch(k);
  }

 private:
  struct Cell {
    std::uint8_t value;
    double sync_t;  // time the value was last exact
    double frozen;  // adjacent (mark-free) exposure accrued since sync_t
  };

  Cell& touch(Site k) {
    auto it = cells_.find(k);
    if (it != cells_.end()) return it->second;
    std::uint8_t v;
    if (init_ == Init::stationary_fair) {
      v = rng_->coin() ? 1 : 0;  // fair at time 0 stays fair at any time
    } else if (k >= 2) {
      v = rng_->coin() ? 1 : 0;
    } else {
      v = (k <= 0) ? 1 : 0;  // deterministic at time 0
      if (rng_->bernoulli(odd_flip_prob(now_))) v ^= 1;
    }
    return cells_.emplace(k, Cell{v, now_, 0.0}).first->second;
  }

  std::unordered_map<Site, Cell> cells_;
  std::vector<Site> freeze_;
  double now_ = 0;
  Init init_;
  Rng* rng_;
};

// --- environment views ------------------------------------------------
// The right-contour rules are written once against a view; the left
// contour is the same engine run through a mirrored view.

struct ConfigView {
  Config* cfg;
  bool occupied(Site k) {
    if (cfg->policy() == EnvPolicy::fixed_vacant_outside && !cfg->window().contains(k))
      throw NoVacantSiteError("contour scan left the fixed window");
    return cfg->occupied(k);
  }
  void flip(Site k) { cfg->flip(k); }
};

struct MirrorConfigView {  // view coordinate x sits at true site -x
  Config* cfg;
  bool occupied(Site x) { return ConfigView{cfg}.occupied(-x); }
  void flip(Site x) { cfg->flip(-x); }
};

struct DecayView {
  DecayEnv* env;
  bool occupied(Site k) { return env->read(k) == SiteState::occupied; }
  void flip(Site k) { env->flip(k); }
};

struct MirrorDecayView {
  DecayEnv* env;
  bool occupied(Site x) { return env->read(-x) == SiteState::occupied; }
  void flip(Site x) { env->flip(-x); }
};

// --- right-contour jump rules ------------------------------------------
// The contour is stored as the integer r whose site is vacant, position
// r - 1/2. Black flips are applied by the caller before the rule runs.

inline constexpr std::uint64_t kScanCap = 100'000'000;

template <class View>
Site scan_first_vacant_from(View v, Site from) {
  Site k = from;
  for (std::uint64_t guard = 0; guard < kScanCap; ++guard, ++k)
    if (!v.occupied(k)) return k;
  throw SimError("contour scan did not terminate");
}

template <class View>
Site scan_last_occupied_below(View v, Site below) {
  Site k = below - 1;
  for (std::uint64_t guard = 0; guard < kScanCap; ++guard, --k)
    if (v.occupied(k)) return k;
  throw SimError("contour scan did not terminate");
}

// R_0 = first vacant site >= i (position R_0 - 1/2).
template <class View>
Site init_right_contour_scan(View v, Site i) {
  return scan_first_vacant_from(v, i);
}

// (a) black on the contour site r itself: jump right to the next vacancy.
template <class View>
Site contour_after_black_right(View v, Site r) {
  return scan_first_vacant_from(v, r + 1);
}

// (b) black at r-1: land just right of the last occupied site below.
template <class View>
Site contour_after_black_left(View v, Site r) {
  return scan_last_occupied_below(v, r) + 1;
}

// (c) grey at r-1: fictitious when zeta(r-2) is occupied; otherwise the
// contour crosses the (occupied) site r-1 and lands just right of the first
// occupied site left of r-2. zeta is not touched by grey marks.
template <class View>
std::optional<Site> contour_after_grey_left(View v, Site r) {
  if (v.occupied(r - 2)) return std::nullopt;
  return scan_last_occupied_below(v, r - 1) + 1;
}

// --- spec-facing operations ---------------------------------------------

enum class ContourSide : std::uint8_t { right, left };
enum class ContourEvent : std::uint8_t { black_right, black_left, grey_left };

struct ContourState {
  Site r = 0;          // right contour: vacant site at position r - 1/2
  Site l = 0;          // left contour: vacant site at position l + 1/2
  Site r_max = 0;
  Site l_min = 0;
  bool met = false;    // r <= l has occurred
  std::uint64_t events = 0;
  std::uint64_t fictitious = 0;
};

Site init_right_contour(const Config& zeta0, Site i);
ContourState init_contours(const Config& zeta0, Site i);

// One driving event of one contour on an explicit configuration. For the
// left side the event names keep their right-contour meaning and are applied
// mirrored (black_right = black on the contour's own vacant site, etc).
void contour_step(ContourState& state, Config& zeta, ContourSide side, ContourEvent ev);

struct MeetRecord {
  std::uint64_t rho_events = 0;   // driving events consumed until r <= l
  double rho_time = 0;            // reconstructed continuous time of the meet
  Site r_max = 0;
  Site l_min = 0;
  std::uint64_t fictitious_events = 0;  // events that moved neither contour
  bool budget_exceeded = false;
};

// Joint simulation of both contours around i over a shared stationary
// environment and shared mark streams; exact including the regimes where
// the two contours' driving sites overlap.
MeetRecord run_until_meet(Site i, Rng& rng, std::uint64_t budget = 10'000'000);

struct Y1Sample {
  std::int64_t y1 = 0;
  bool first_event_right = false;  // no driving event preceded the right jump
  std::uint64_t events = 0;
};

// Renewal increment: right contour started on the xi environment at r = 1,
// run to its first jump to the right; returns the displacement new_r - 1.
Y1Sample sample_Y1_detail(Rng& rng);
inline std::int64_t sample_Y1(Rng& rng) { return sample_Y1_detail(rng).y1; }

struct IncrementConstants {
  double I1, I2, I3, I4, I, mean_bound;
};

// Closed forms behind the negative-drift bound: I1 = pi/2 - 1, I2 = I3 = 1/3,
// I4 = 1/5, I = I1 + I2 + I3/2 + I4/2 = pi/2 - 2/5, mean_bound = 1 - I.
IncrementConstants analytic_increment_constants();

}  // namespace avalanche
