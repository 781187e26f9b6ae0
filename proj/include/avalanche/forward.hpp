#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "avalanche/lattice.hpp"
#include "avalanche/rng.hpp"

namespace avalanche {

// Black marks drive the single-site flips (process N); grey marks only
// matter through the couplings (process V).
enum class MarkColor : std::uint8_t { black = 0, grey = 1 };

struct Mark {
  Site site = 0;
  MarkColor color = MarkColor::black;
  std::uint64_t ordinal = 0;              // 1-based, contiguous within a log
  std::optional<double> time;             // continuous-time runs only
};

struct EventLog {
  std::vector<Mark> marks;
  std::optional<double> horizon_time;     // set in continuous-time mode

  bool continuous() const { return horizon_time.has_value(); }
};

struct EventCount { std::uint64_t n = 0; };
struct TimeHorizon { double T = 0; };

// Jump-chain log: n marks, site uniform on the window, color a fair coin.
EventLog generate_event_log(Interval window, EventCount mode, Rng& rng);
// Continuous-time log: per (site,color) Poisson(1) arrivals on [0,T], merged.
EventLog generate_event_log(Interval window, TimeHorizon mode, Rng& rng);

// Single-site parity dynamics: output(i) = zeta0(i) flipped iff counts(i) is odd.
Config evolve_bernoulli(const Config& zeta0, const std::map<Site, std::uint64_t>& counts);

// One black mark of the avalanche process: a vacant site becomes occupied,
// an occupied site takes its whole connected component down with it.
Config avalanche_apply_mark(Config eta, Site i);
void avalanche_apply_mark_inplace(Config& eta, Site i);

// Bernoulli component zeta dominates the avalanche component eta pointwise.
struct CoupledState {
  Config zeta;
  Config eta;

  bool dominated() const;
};

struct CoupledDelta {
  std::vector<Site> changed;  // sites whose zeta or eta state changed
};

// One mark of the coupled construction:
//   black, zeta occupied: zeta(i) dies; if eta(i) occupied its component dies
//   black, zeta vacant:   both become occupied
//   grey:                 eta(i) becomes occupied iff eta vacant and zeta occupied
CoupledDelta coupled_step(CoupledState& state, const Mark& mark);

struct CoupledTrajectory {
  CoupledState initial;
  CoupledState final_state;
  std::vector<CoupledDelta> deltas;  // one per mark
};

// Fold of coupled_step over the log; asserts eta <= zeta after every event.
CoupledTrajectory run_coupled(const Config& zeta0, const Config& eta0, const EventLog& log);

struct PairTrajectory {
  Config zeta1, zeta2;
  // gamma[i - window.left]: time (or event index) at which the two
  // components first agreed at site i; 0 when they started equal.
  std::vector<double> coalescence;
};

// Two Bernoulli processes coupled so that, while the components differ at a
// site, component 1 follows N (the black marks of log_n) and component 2
// follows V (the grey marks of log_v); once equal they both follow N
// forever. Logs must be continuous-time (merged by timestamp).
PairTrajectory run_coupled_bernoulli_pair(const Config& zeta0_1, const Config& zeta0_2,
                                          const EventLog& log_n, const EventLog& log_v);

// Truncated avalanche process alone (black marks only) run to continuous
// time T on its fixed window; the state at T is returned.
Config run_avalanche_to_time(Config eta0, double T, Rng& rng);

}  // namespace avalanche
