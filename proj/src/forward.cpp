#include "avalanche/forward.hpp"

#include <algorithm>

namespace avalanche {

EventLog generate_event_log(Interval window, EventCount mode, Rng& rng) {
  if (window.empty()) throw EmptyWindowError("generate_event_log: empty window");
  EventLog log;
  log.marks.reserve(mode.n);
  for (std::uint64_t k = 0; k < mode.n; ++k) {
    Mark m;
    m.site = rng.range(window.left, window.right);
    m.color = rng.coin() ? MarkColor::grey : MarkColor::black;
    m.ordinal = k + 1;
    log.marks.push_back(m);
  }
  return log;
}

EventLog generate_event_log(Interval window, TimeHorizon mode, Rng& rng) {
  if (window.empty()) throw EmptyWindowError("generate_event_log: empty window");
  EventLog log;
  log.horizon_time = mode.T;
  for (Site i = window.left; i <= window.right; ++i) {
    for (MarkColor c : {MarkColor::black, MarkColor::grey}) {
      double t = 0;
      for (;;) {
        t += rng.exponential(1.0);
        if (t > mode.T) break;
        Mark m;
        m.site = i;
        m.color = c;
        m.time = t;
        log.marks.push_back(m);
      }
    }
  }
  std::sort(log.marks.begin(), log.marks.end(),
            [](const Mark& a, const Mark& b) { return *a.time < *b.time; });
  for (std::uint64_t k = 0; k < log.marks.size(); ++k) log.marks[k].ordinal = k + 1;
  return log;
}

Config evolve_bernoulli(const Config& zeta0, const std::map<Site, std::uint64_t>& counts) {
  Config out = zeta0;
  for (const auto& [site, n] : counts) {
    if (!zeta0.window().contains(site)) continue;
    if (n % 2 == 1) out.flip(site);
  }
  return out;
}

void avalanche_apply_mark_inplace(Config& eta, Site i) {
  if (!eta.occupied(i)) {
    eta.set(i, SiteState::occupied);
    return;
  }
  auto comp = eta.component(i);
  for (Site k = comp->left; k <= comp->right; ++k) eta.set(k, SiteState::vacant);
}

Config avalanche_apply_mark(Config eta, Site i) {
  avalanche_apply_mark_inplace(eta, i);
  return eta;
}

bool CoupledState::dominated() const {
  const Interval w = eta.window();
  for (Site i = w.left; i <= w.right; ++i)
    if (eta.occupied(i) && !zeta.occupied(i)) return false;
  return true;
}

CoupledDelta coupled_step(CoupledState& state, const Mark& mark) {
  const Site i = mark.site;
  if (state.eta.occupied(i) && !state.zeta.occupied(i))
    throw CouplingBrokenError("coupled_step: eta > zeta at the marked site");
  CoupledDelta delta;
  if (mark.color == MarkColor::black) {
    if (state.zeta.occupied(i)) {
      state.zeta.set(i, SiteState::vacant);
      delta.changed.push_back(i);
      if (state.eta.occupied(i)) {
        auto comp = state.eta.component(i);
        for (Site k = comp->left; k <= comp->right; ++k) {
          state.eta.set(k, SiteState::vacant);
          if (k != i) delta.changed.push_back(k);
        }
      }
    } else {
      // both components become occupied (eta was vacant by domination)
      state.zeta.set(i, SiteState::occupied);
      state.eta.set(i, SiteState::occupied);
      delta.changed.push_back(i);
    }
  } else {
    if (!state.eta.occupied(i) && state.zeta.occupied(i)) {
      state.eta.set(i, SiteState::occupied);
      delta.changed.push_back(i);
    }
  }
  return delta;
}

CoupledTrajectory run_coupled(const Config& zeta0, const Config& eta0, const EventLog& log) {
  if (!(zeta0.window() == eta0.window()))
    throw std::invalid_argument("run_coupled: mismatched windows");
  CoupledTrajectory traj;
  traj.initial = CoupledState{zeta0, eta0};
  if (!traj.initial.dominated())
    throw DominationViolatedError("run_coupled: eta0 is not dominated by zeta0");
  CoupledState state = traj.initial;
  traj.deltas.reserve(log.marks.size());
  for (const Mark& m : log.marks) {
    traj.deltas.push_back(coupled_step(state, m));
    if (!state.dominated())
      throw CouplingBrokenError("run_coupled: domination lost after event " +
                                std::to_string(m.ordinal));
  }
  traj.final_state = std::move(state);
  return traj;
}

PairTrajectory run_coupled_bernoulli_pair(const Config& zeta0_1, const Config& zeta0_2,
                                          const EventLog& log_n, const EventLog& log_v) {
  if (!(zeta0_1.window() == zeta0_2.window()))
    throw std::invalid_argument("run_coupled_bernoulli_pair: mismatched windows");
  if (!log_n.continuous() || !log_v.continuous())
    throw std::invalid_argument("run_coupled_bernoulli_pair: logs must be continuous-time");
  const Interval w = zeta0_1.window();
  PairTrajectory out;
  out.zeta1 = zeta0_1;
  out.zeta2 = zeta0_2;
  out.coalescence.assign(static_cast<size_t>(w.width()), -1.0);
  for (Site i = w.left; i <= w.right; ++i)
    if (out.zeta1.at(i) == out.zeta2.at(i)) out.coalescence[static_cast<size_t>(i - w.left)] = 0.0;

  // the N process is the black marks of log_n, the V process the grey marks
  // of log_v (each a rate-1 family); merge them by timestamp
  std::vector<std::pair<const Mark*, bool>> merged;  // (mark, from_n)
  merged.reserve(log_n.marks.size() + log_v.marks.size());
  for (const Mark& m : log_n.marks)
    if (m.color == MarkColor::black) merged.emplace_back(&m, true);
  for (const Mark& m : log_v.marks)
    if (m.color == MarkColor::grey) merged.emplace_back(&m, false);
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
    return *a.first->time < *b.first->time;
  });

  for (const auto& [mark, from_n] : merged) {
    const Site i = mark->site;
    if (!w.contains(i)) continue;
    auto& gamma = out.coalescence[static_cast<size_t>(i - w.left)];
    const bool equal = out.zeta1.at(i) == out.zeta2.at(i);
    if (from_n) {
      if (equal) {
        out.zeta1.flip(i);
        out.zeta2.flip(i);
      } else {
        out.zeta1.flip(i);  // flip makes them agree; absorbing from here on
        gamma = *mark->time;
      }
    } else if (!equal) {
      out.zeta2.flip(i);
      gamma = *mark->time;
    }
  }
  return out;
}

Config run_avalanche_to_time(Config eta0, double T, Rng& rng) {
  const Interval w = eta0.window();
  const double rate = static_cast<double>(w.width());
  double t = rng.exponential(rate);
  while (t <= T) {
    avalanche_apply_mark_inplace(eta0, rng.range(w.left, w.right));
    t += rng.exponential(rate);
  }
  return eta0;
}

}  // namespace avalanche
