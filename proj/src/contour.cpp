#include "avalanche/contour.hpp"

#include <algorithm>

#include "avalanche/forward.hpp"

namespace avalanche {

Site init_right_contour(const Config& zeta0, Site i) {
  if (zeta0.policy() == EnvPolicy::lazy_bernoulli_half && !zeta0.window().contains(i))
    throw OutOfWindowError("init_right_contour: anchor outside lazy window");
  return init_right_contour_scan(ConfigView{const_cast<Config*>(&zeta0)}, i);
}

ContourState init_contours(const Config& zeta0, Site i) {
  ContourState st;
  st.r = init_right_contour(zeta0, i);
  // left contour via the mirrored scan: first vacant site <= i
  st.l = -init_right_contour_scan(MirrorConfigView{const_cast<Config*>(&zeta0)}, -i);
  st.r_max = st.r;
  st.l_min = st.l;
  st.met = st.r <= st.l;
  return st;
}

namespace {

template <class View>
void step_one_side(View view, Site& pos, std::uint64_t& fictitious, ContourEvent ev) {
  switch (ev) {
    case ContourEvent::black_right:
      view.flip(pos);
      pos = contour_after_black_right(view, pos);
      break;
    case ContourEvent::black_left:
      view.flip(pos - 1);
      pos = contour_after_black_left(view, pos);
      break;
    case ContourEvent::grey_left: {
      auto moved = contour_after_grey_left(view, pos);
      if (moved) {
        if (*moved == pos) ++fictitious;  // landed where it stood
        pos = *moved;
      } else {
        ++fictitious;
      }
      break;
    }
  }
}

}  // namespace

void contour_step(ContourState& state, Config& zeta, ContourSide side, ContourEvent ev) {
  if (state.met) throw AlreadyStoppedError("contour_step: contours already met");
  if (side == ContourSide::right) {
    step_one_side(ConfigView{&zeta}, state.r, state.fictitious, ev);
    state.r_max = std::max(state.r_max, state.r);
  } else {
    Site mirrored = -state.l;
    step_one_side(MirrorConfigView{&zeta}, mirrored, state.fictitious, ev);
    state.l = -mirrored;
    state.l_min = std::min(state.l_min, state.l);
  }
  ++state.events;
  state.met = state.r <= state.l;
}

MeetRecord run_until_meet(Site i, Rng& rng, std::uint64_t budget) {
  DecayEnv env(DecayEnv::Init::stationary_fair, rng);
  DecayView right{&env};
  MirrorDecayView left{&env};

  Site r = init_right_contour_scan(right, i);
  Site rm = init_right_contour_scan(left, -i);  // true left contour site is -rm

  MeetRecord rec;
  rec.r_max = r;
  rec.l_min = -rm;
  if (r <= -rm) return rec;  // zeta0(i) vacant: met at initialization

  struct Stream { Site site; MarkColor color; };
  std::vector<Stream> streams;
  std::vector<Site> freeze;

  auto rebuild = [&] {
    streams.clear();
    auto add = [&](Site s, MarkColor c) {
      for (const Stream& e : streams)
        if (e.site == s && e.color == c) return;
      streams.push_back({s, c});
    };
    add(r, MarkColor::black);
    add(r - 1, MarkColor::black);
    add(r - 1, MarkColor::grey);
    add(-rm, MarkColor::black);        // left contour site l
    add(-rm + 1, MarkColor::black);    // l + 1
    add(-rm + 1, MarkColor::grey);
    freeze.clear();
    for (const Stream& e : streams)
      if (std::find(freeze.begin(), freeze.end(), e.site) == freeze.end())
        freeze.push_back(e.site);
    env.set_freeze(freeze);
  };
  rebuild();

  for (std::uint64_t n = 0; n < budget; ++n) {
    env.advance(rng.exponential(static_cast<double>(streams.size())));
    const Stream ev = streams[rng.below(streams.size())];

    const Site old_r = r;
    const Site old_rm = rm;
    if (ev.color == MarkColor::black) env.flip(ev.site);

    if (ev.color == MarkColor::black) {
      if (ev.site == old_r)
        r = contour_after_black_right(right, old_r);
      else if (ev.site == old_r - 1)
        r = contour_after_black_left(right, old_r);
    } else if (ev.site == old_r - 1) {
      if (auto moved = contour_after_grey_left(right, old_r)) r = *moved;
    }

    const Site ev_m = -ev.site;  // the same mark in mirrored coordinates
    if (ev.color == MarkColor::black) {
      if (ev_m == old_rm)
        rm = contour_after_black_right(left, old_rm);
      else if (ev_m == old_rm - 1)
        rm = contour_after_black_left(left, old_rm);
    } else if (ev_m == old_rm - 1) {
      if (auto moved = contour_after_grey_left(left, old_rm)) rm = *moved;
    }

    if (r == old_r && rm == old_rm) ++rec.fictitious_events;
    rec.r_max = std::max(rec.r_max, r);
    rec.l_min = std::min(rec.l_min, -rm);

    if (r <= -rm) {
      rec.rho_events = n + 1;
      rec.rho_time = env.now();
      return rec;
    }
    rebuild();
  }
  rec.rho_events = budget;
  rec.rho_time = env.now();
  rec.budget_exceeded = true;
  return rec;
}

Y1Sample sample_Y1_detail(Rng& rng) {
  DecayEnv env(DecayEnv::Init::xi_seed, rng);
  DecayView view{&env};

  Site r = init_right_contour_scan(view, 0);  // reads site 0 (occupied), lands at 1
  Y1Sample out;
  for (;;) {
    env.set_freeze({r, r - 1});
    env.advance(rng.exponential(3.0));
    ++out.events;
    switch (rng.below(3)) {
      case 0:  // black on the contour site: the jump right ends the excursion
        env.flip(r);
        r = contour_after_black_right(view, r);
        out.first_event_right = (out.events == 1);
        out.y1 = r - 1;
        return out;
      case 1:
        env.flip(r - 1);
        r = contour_after_black_left(view, r);
        break;
      default:
        if (auto moved = contour_after_grey_left(view, r)) r = *moved;
        break;
    }
  }
}

IncrementConstants analytic_increment_constants() {
  IncrementConstants c;
  const double pi = 3.14159265358979323846;
  c.I1 = pi / 2 - 1;
  c.I2 = 1.0 / 3;
  c.I3 = 1.0 / 3;
  c.I4 = 1.0 / 5;
  c.I = c.I1 + c.I2 + c.I3 / 2 + c.I4 / 2;  // = pi/2 - 2/5
  c.mean_bound = 1 - c.I;
  return c;
}

}  // namespace avalanche
