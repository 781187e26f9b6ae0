#include "avalanche/cftp.hpp"

#include <algorithm>

namespace avalanche {

BoxState::BoxState(Site left, std::vector<std::uint8_t> vals) : left_(left) {
  vals_.assign(vals.begin(), vals.end());
  for (Site k = left_; k <= right(); ++k)
    if (at(k) == 2) twos_.insert(k);
}

void BoxState::set_raw(Site k, std::uint8_t v) {
  auto& cell = vals_[static_cast<size_t>(k - left_)];
  if (cell == v) return;
  if (cell == 2) twos_.erase(k);
  if (v == 2) twos_.insert(k);
  cell = v;
}

void BoxState::push_left(std::uint8_t v) {
  --left_;
  vals_.push_front(v);
  if (v == 2) twos_.insert(left_);
}

void BoxState::push_right(std::uint8_t v) {
  vals_.push_back(v);
  if (v == 2) twos_.insert(right());
}

void BoxState::shrink_to(Site a, Site b) {
  while (left_ < a) {
    if (vals_.front() == 2) twos_.erase(left_);
    vals_.pop_front();
    ++left_;
  }
  while (right() > b) {
    if (vals_.back() == 2) twos_.erase(right());
    vals_.pop_back();
  }
}

namespace {

// Records the pre-event value once per site, then writes.
void set_tracked(BoxState& st, Site k, std::uint8_t v, EventDelta& d) {
  const std::uint8_t old = st.at(k);
  if (old == v) return;
  bool seen = false;
  for (const auto& [site, val] : d.changed)
    if (site == k) { seen = true; break; }
  if (!seen) d.changed.emplace_back(k, old);
  st.set_raw(k, v);
}

// Maximal interval of occupied (value >= 1) sites around a vacant i, plus i.
Interval component_plus(const BoxState& st, Site i) {
  Site a = i, b = i;
  while (a - 1 >= st.left() && st.at(a - 1) >= 1) --a;
  while (b + 1 <= st.right() && st.at(b + 1) >= 1) ++b;
  return Interval{a, b};
}

void begin_delta(const BoxState& st, Site i_n, MarkColor m_n, EventDelta& d) {
  if (!st.contains(i_n)) throw OutOfDomainError("sampler event site outside the domain");
  d.i = i_n;
  d.m = m_n;
  d.old_left = st.left();
  d.old_right = st.right();
  d.changed.clear();
}

}  // namespace

Step0Result step0_init(Site l, Rng& rng) {
  if (l < 0) throw std::invalid_argument("step0_init: l must be >= 0");
  Step0Result out;
  std::vector<std::uint8_t> center;
  center.reserve(static_cast<size_t>(2 * l + 1));
  bool any_occupied = false;
  for (Site k = -l; k <= l; ++k) {
    const bool occ = rng.coin();
    any_occupied |= occ;
    center.push_back(occ ? 2 : 0);
  }
  if (!any_occupied) {
    out.finished_all_vacant = true;
    return out;
  }
  // overshoot to the first vacant site strictly beyond each side
  const int s_left = sample_geometric_half(rng);
  const int s_right = sample_geometric_half(rng);
  std::vector<std::uint8_t> vals;
  vals.push_back(0);  // l0 = -l - s_left
  for (int k = 1; k < s_left; ++k) vals.push_back(2);
  vals.insert(vals.end(), center.begin(), center.end());
  for (int k = 1; k < s_right; ++k) vals.push_back(2);
  vals.push_back(0);  // r0 = l + s_right
  out.box = BoxState(-l - s_left, std::move(vals));
  return out;
}

void step1_apply_event(BoxState& st, Site i_n, MarkColor m_n, Rng& rng, EventDelta& d) {
  begin_delta(st, i_n, m_n, d);
  const Site L = st.left();
  const Site R = st.right();

  if (m_n == MarkColor::black) {
    if (st.at(i_n) >= 1) {
      set_tracked(st, i_n, 0, d);
    } else {
      const Interval comp = component_plus(st, i_n);
      // the component joins the box unless it holds no 2 and one whole side
      // of the domain beyond it holds no 2 either
      const bool clean_right = !st.any2(comp.left, R);
      const bool clean_left = !st.any2(L, comp.right);
      const std::uint8_t v = (clean_right || clean_left) ? 1 : 2;
      for (Site k = comp.left; k <= comp.right; ++k) set_tracked(st, k, v, d);
    }
  } else if (st.at(i_n) == 2) {
    // leaves the box only from the box boundary, with both neighbors vacant
    const bool neighbors_vacant = st.at_or_vacant(i_n - 1) == 0 && st.at_or_vacant(i_n + 1) == 0;
    const bool on_boundary = !st.any2(L, i_n - 1) || !st.any2(i_n + 1, R);
    if (neighbors_vacant && on_boundary) set_tracked(st, i_n, 1, d);
  }
  // grey on 0/1: no effect (still recorded in the trace)

  if (st.at(st.right()) == 2) {
    const int s = sample_geometric_half(rng);
    for (int k = 1; k < s; ++k) st.push_right(2);
    st.push_right(0);
  }
  if (st.at(st.left()) == 2) {
    const int s = sample_geometric_half(rng);
    for (int k = 1; k < s; ++k) st.push_left(2);
    st.push_left(0);
  }
}

void step1prime_apply_event(BoxState& st, Site i_n, MarkColor m_n, Rng& rng, EventDelta& d) {
  begin_delta(st, i_n, m_n, d);
  const Site L = st.left();
  const Site R = st.right();

  if (m_n == MarkColor::black) {
    if (st.at(i_n) >= 1) {
      set_tracked(st, i_n, 0, d);
    } else {
      // extreme 2s reachable from i_n through occupied sites
      Site lo = i_n, hi = i_n;
      bool found = false;
      for (Site k = i_n + 1; k <= R && st.at(k) >= 1; ++k)
        if (st.at(k) == 2) { hi = k; found = true; }
      for (Site k = i_n - 1; k >= L && st.at(k) >= 1; --k)
        if (st.at(k) == 2) { lo = k; found = true; }
      if (!found) {
        set_tracked(st, i_n, 1, d);
      } else {
        for (Site k = lo; k <= hi; ++k) set_tracked(st, k, 2, d);
      }
    }
  } else if (st.at(i_n) == 2) {
    if (st.at_or_vacant(i_n - 1) <= 1 || st.at_or_vacant(i_n + 1) <= 1) set_tracked(st, i_n, 1, d);
  }

  // extend only when a 2 is chained to the boundary through occupied sites;
  // the revealed environment stays outside the box (value 1)
  auto boundary_run_has_2 = [&st](Site from, Site dir) {
    for (Site k = from; st.contains(k) && st.at(k) >= 1; k += dir)
      if (st.at(k) == 2) return true;
    return false;
  };
  if (boundary_run_has_2(st.left(), +1)) {
    const int s = sample_geometric_half(rng);
    for (int k = 1; k < s; ++k) st.push_left(1);
    st.push_left(0);
  }
  if (boundary_run_has_2(st.right(), -1)) {
    const int s = sample_geometric_half(rng);
    for (int k = 1; k < s; ++k) st.push_right(1);
    st.push_right(0);
  }
}

BoxState step1_applied(const BoxState& state, Site i_n, MarkColor m_n, Rng& rng) {
  BoxState copy = state;
  EventDelta d;
  step1_apply_event(copy, i_n, m_n, rng, d);
  return copy;
}

BoxState step1prime_applied(const BoxState& state, Site i_n, MarkColor m_n, Rng& rng) {
  BoxState copy = state;
  EventDelta d;
  step1prime_apply_event(copy, i_n, m_n, rng, d);
  return copy;
}

Config step2_reconstruct(const SamplerTrace& trace, bool check_domination) {
  BoxState zeta = trace.final_box;
  if (zeta.count2() != 0)
    throw IncompleteTraceError("step2_reconstruct: residual box values in the terminal state");

  // eta over the terminal domain; the live window shrinks as events unwind
  const Site base = zeta.left();
  std::vector<std::uint8_t> eta(static_cast<size_t>(zeta.width()), 0);
  auto eta_at = [&](Site k) -> std::uint8_t& { return eta[static_cast<size_t>(k - base)]; };

  for (std::size_t n = trace.events.size(); n-- > 0;) {
    const EventDelta& d = trace.events[n];
    const Site i = d.i;

    if (d.m == MarkColor::black) {
      if (eta_at(i) == 1) {
        // the mark kills the whole occupied component of i
        Site a = i, b = i;
        while (a - 1 >= zeta.left() && eta_at(a - 1) == 1) --a;
        while (b + 1 <= zeta.right() && eta_at(b + 1) == 1) ++b;
        for (Site k = a; k <= b; ++k) eta_at(k) = 0;
      } else if (zeta.at(i) == 0) {
        eta_at(i) = 1;  // flock lands on a jointly vacant site
      }
    } else {
      // grey makes a flock appear whenever the Bernoulli side is occupied
      std::uint8_t pre = zeta.at(i);
      for (const auto& [site, old] : d.changed)
        if (site == i) { pre = old; break; }
      if (pre >= 1) eta_at(i) = 1;
    }

    // unwind the zeta delta to index n-1 and drop appended sites
    for (const auto& [site, old] : d.changed) zeta.set_raw(site, old);
    zeta.shrink_to(d.old_left, d.old_right);

    if (check_domination) {
      for (Site k = zeta.left(); k <= zeta.right(); ++k)
        if (eta_at(k) == 1 && zeta.at(k) == 0)
          throw DominationViolatedError("step2_reconstruct: eta exceeds zeta at site " +
                                        std::to_string(k));
    }
  }

  std::vector<SiteState> states;
  states.reserve(static_cast<size_t>(zeta.width()));
  for (Site k = zeta.left(); k <= zeta.right(); ++k)
    states.push_back(eta_at(k) ? SiteState::occupied : SiteState::vacant);
  return Config::from_states(Interval{zeta.left(), zeta.right()}, std::move(states));
}

SampleResult sample_invariant_window(Site l, SamplerVariant variant, Rng& rng,
                                     std::uint64_t budget) {
  Step0Result init = step0_init(l, rng);
  if (init.finished_all_vacant) {
    SampleResult out;
    out.window = Config::all_vacant(Interval{-l, l});
    out.diag.domain_left = -l;
    out.diag.domain_right = l;
    return out;
  }

  SamplerTrace trace;
  BoxState st = std::move(init.box);
  while (st.count2() != 0) {
    if (trace.events.size() >= budget)
      throw BudgetExceededError("sample_invariant_window: event budget exhausted");
    const Site i = rng.range(st.left(), st.right());
    const MarkColor m = rng.coin() ? MarkColor::grey : MarkColor::black;
    trace.events.emplace_back();
    if (variant == SamplerVariant::step1)
      step1_apply_event(st, i, m, rng, trace.events.back());
    else
      step1prime_apply_event(st, i, m, rng, trace.events.back());
  }

  SampleResult out;
  out.diag.T = trace.events.size();
  out.diag.domain_left = st.left();
  out.diag.domain_right = st.right();
  trace.final_box = std::move(st);

  const Config eta0 = step2_reconstruct(trace);
  std::vector<SiteState> window_states;
  window_states.reserve(static_cast<size_t>(2 * l + 1));
  for (Site k = -l; k <= l; ++k) window_states.push_back(eta0.at(k));
  out.window = Config::from_states(Interval{-l, l}, std::move(window_states));
  return out;
}

}  // namespace avalanche
