#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avalanche/errors.hpp"
#include "avalanche/rng.hpp"

namespace avalanche {

using Site = std::int64_t;

enum class SiteState : std::uint8_t { vacant = 0, occupied = 1 };

// Inclusive site interval [left, right].
struct Interval {
  Site left = 0;
  Site right = -1;
  bool empty() const { return right < left; }
  Site width() const { return empty() ? 0 : right - left + 1; }
  bool contains(Site i) const { return i >= left && i <= right; }
};

inline bool operator==(const Interval& a, const Interval& b) {
  return a.left == b.left && a.right == b.right;
}

// What a read outside the materialized window means.
enum class EnvPolicy : std::uint8_t {
  fixed_vacant_outside,  // finite truncation; ghost sites read vacant
  lazy_bernoulli_half,   // stationary environment; fresh fair coins appear on demand
};

// Occupancy map over a window, with the out-of-window policy made
// explicit. Under lazy_bernoulli_half the window grows on demand and
// site values are a pure function of (stream, site): reading site j
// before or after site k yields the same value at j.
class Config {
 public:
  Config() = default;

  static Config all_vacant(Interval w, EnvPolicy policy = EnvPolicy::fixed_vacant_outside);
  static Config from_states(Interval w, std::vector<SiteState> states,
                            EnvPolicy policy = EnvPolicy::fixed_vacant_outside);
  // Text form "[-3,3]:0110100".
  static Config from_text(const std::string& text,
                          EnvPolicy policy = EnvPolicy::fixed_vacant_outside);

  Interval window() const { return window_; }
  EnvPolicy policy() const { return policy_; }

  SiteState at(Site i) const;
  bool occupied(Site i) const { return at(i) == SiteState::occupied; }
  void set(Site i, SiteState s);
  void flip(Site i) { set(i, occupied(i) ? SiteState::vacant : SiteState::occupied); }

  // Materializes every site of [a, b] (lazy policy only grows; a no-op
  // for sites already inside the window).
  void extend_to(Site a, Site b);

  // Maximal occupied interval containing i, empty if i is vacant.
  std::optional<Interval> component(Site i) const;

  std::string to_text() const;

  bool operator==(const Config& o) const {
    return window_ == o.window_ && cells_ == o.cells_;
  }

 private:
  friend Config sample_bernoulli_config(Interval, const RngStream&);

  SiteState cell(Site i) const { return static_cast<SiteState>(cells_[static_cast<size_t>(i - window_.left)]); }

  Interval window_;
  std::vector<std::uint8_t> cells_;
  EnvPolicy policy_ = EnvPolicy::fixed_vacant_outside;
  std::uint64_t env_seed_ = 0;

  static constexpr Site kMaxWidth = Site(1) << 31;
};

// Product Bernoulli(1/2) configuration on `window`, lazy environment.
Config sample_bernoulli_config(Interval window, const RngStream& stream);

// Maximal occupied interval containing i (pre: i readable under the policy).
std::optional<Interval> connected_component(const Config& config, Site i);

// Mass of the particle containing the edge (0,1): 1 if both endpoints are
// vacant, else 1 + length of the occupied run through site 0 or 1.
// Throws BoundaryTruncatedError when the run reaches the window edge of a
// fixed-policy config, so the bounding vacancies cannot be verified.
int particle_mass_at_edge(const Config& config);

}  // namespace avalanche
