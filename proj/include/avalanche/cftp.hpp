#pragma once

#include <cstdint>
#include <deque>
#include <set>
#include <vector>

#include "avalanche/forward.hpp"
#include "avalanche/lattice.hpp"
#include "avalanche/rng.hpp"

namespace avalanche {

enum class SamplerVariant : std::uint8_t { step1, step1prime };

// {0,1,2}-valued array on the growing domain [left, right]:
//   0 - Bernoulli-vacant
//   1 - Bernoulli-occupied, outside the box
//   2 - Bernoulli-occupied, inside the box (still influences time 0)
class BoxState {
 public:
  BoxState() = default;
  BoxState(Site left, std::vector<std::uint8_t> vals);

  Site left() const { return left_; }
  Site right() const { return left_ + static_cast<Site>(vals_.size()) - 1; }
  Site width() const { return static_cast<Site>(vals_.size()); }
  bool contains(Site k) const { return k >= left() && k <= right(); }

  std::uint8_t at(Site k) const { return vals_[static_cast<size_t>(k - left_)]; }
  std::uint8_t at_or_vacant(Site k) const { return contains(k) ? at(k) : 0; }

  std::size_t count2() const { return twos_.size(); }
  bool any2(Site a, Site b) const {  // any value 2 in [a, b]
    auto it = twos_.lower_bound(a);
    return it != twos_.end() && *it <= b;
  }

  void set_raw(Site k, std::uint8_t v);      // no delta bookkeeping
  void push_left(std::uint8_t v);
  void push_right(std::uint8_t v);
  void shrink_to(Site a, Site b);            // drop sites outside [a, b]

 private:
  Site left_ = 0;
  std::deque<std::uint8_t> vals_;
  std::set<Site> twos_;
};

// Reversible record of one sampler event: mark, previous domain bounds, and
// the pre-event values of every site the event rewrote (appended sites are
// undone by shrinking back to the old bounds).
struct EventDelta {
  Site i = 0;
  MarkColor m = MarkColor::black;
  Site old_left = 0;
  Site old_right = 0;
  std::vector<std::pair<Site, std::uint8_t>> changed;
};

struct SamplerTrace {
  BoxState final_box;              // state after the last event; holds no 2s
  std::vector<EventDelta> events;  // events 1..T in order
  std::uint64_t T() const { return events.size(); }
};

struct Step0Result {
  bool finished_all_vacant = false;  // center window came out all vacant
  BoxState box;
};

// Initial stationary configuration on [l0, r0], the first vacant sites
// strictly beyond -l and l; occupied sites enter the box as value 2.
Step0Result step0_init(Site l, Rng& rng);

// One event of the appendix dynamics (original rules). rng is only used for
// the geometric domain extensions.
void step1_apply_event(BoxState& state, Site i_n, MarkColor m_n, Rng& rng, EventDelta& delta);
// Refined rules: easier exits from the box, tighter component promotion,
// extension only when a 2 is chained to the boundary through occupied sites.
void step1prime_apply_event(BoxState& state, Site i_n, MarkColor m_n, Rng& rng, EventDelta& delta);

// Copying conveniences for tests.
BoxState step1_applied(const BoxState& state, Site i_n, MarkColor m_n, Rng& rng);
BoxState step1prime_applied(const BoxState& state, Site i_n, MarkColor m_n, Rng& rng);

// Backward reconstruction of the avalanche configuration at time 0 from a
// finished trace; returns eta_0 on the step-0 domain. check_domination
// verifies eta <= zeta occupancy at every backward index (tests).
Config step2_reconstruct(const SamplerTrace& trace, bool check_domination = false);

struct SampleDiagnostics {
  std::uint64_t T = 0;         // events until no value 2 remained
  Site domain_left = 0;        // terminal domain
  Site domain_right = 0;
  Site domain_width() const { return domain_right - domain_left + 1; }
};

struct SampleResult {
  Config window;  // exact draw from the invariant law restricted to [-l, l]
  SampleDiagnostics diag;
};

// Step 0 -> Step 1/1' loop -> Step 2, restricted to [-l, l].
// Throws BudgetExceededError if the event budget is exhausted.
SampleResult sample_invariant_window(Site l, SamplerVariant variant, Rng& rng,
                                     std::uint64_t budget = 10'000'000);

}  // namespace avalanche
