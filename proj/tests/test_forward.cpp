#include <doctest.h>

#include <cmath>
#include <map>

#include "avalanche/forward.hpp"
#include "avalanche/stats.hpp"

using namespace avalanche;

namespace {

Config cfg(Site left, const std::string& bits) {
  std::vector<SiteState> st;
  for (char c : bits) st.push_back(c == '1' ? SiteState::occupied : SiteState::vacant);
  return Config::from_states(Interval{left, left + static_cast<Site>(bits.size()) - 1},
                             std::move(st));
}

}  // namespace

TEST_CASE("evolve_bernoulli flips on odd parity only") {
  const Config z = cfg(0, "10");
  CHECK(evolve_bernoulli(z, {{0, 2}, {1, 0}}) == z);                // even counts: identity
  CHECK(evolve_bernoulli(z, {{0, 0}, {1, 3}}) == cfg(0, "11"));     // odd flips a vacancy up
  CHECK(evolve_bernoulli(z, {{0, 1}, {1, 1}}) == cfg(0, "01"));
}

TEST_CASE("avalanche mark: growth and component collapse") {
  CHECK(avalanche_apply_mark(cfg(0, "000"), 1) == cfg(0, "010"));
  // occupied run 1..5, mark at 2 clears the whole run
  CHECK(avalanche_apply_mark(cfg(0, "0111110"), 2) == cfg(0, "0000000"));
  CHECK(avalanche_apply_mark(cfg(0, "010"), 1) == cfg(0, "000"));  // isolated site
}

TEST_CASE("avalanche mark touches only one component (exhaustive width 5)") {
  for (int bits = 0; bits < 32; ++bits) {
    std::string s;
    for (int i = 0; i < 5; ++i) s.push_back((bits >> i) & 1 ? '1' : '0');
    const Config before = cfg(0, s);
    for (Site i = 0; i < 5; ++i) {
      const Config after = avalanche_apply_mark(before, i);
      const auto comp = connected_component(before, i);
      for (Site j = 0; j < 5; ++j) {
        if (!before.occupied(i)) {
          CHECK(after.occupied(j) == (j == i ? true : before.occupied(j)));
        } else if (comp->contains(j)) {
          CHECK_FALSE(after.occupied(j));
        } else {
          CHECK(after.occupied(j) == before.occupied(j));
        }
      }
    }
  }
}

TEST_CASE("coupled_step follows the graphical construction") {
  // grey at i with eta vacant, zeta occupied: eta becomes occupied
  {
    CoupledState st{cfg(0, "010"), cfg(0, "000")};
    coupled_step(st, Mark{1, MarkColor::grey, 1, {}});
    CHECK(st.eta == cfg(0, "010"));
    CHECK(st.zeta == cfg(0, "010"));
  }
  // grey with zeta vacant: nothing moves
  {
    CoupledState st{cfg(0, "000"), cfg(0, "000")};
    coupled_step(st, Mark{1, MarkColor::grey, 1, {}});
    CHECK(st.eta == cfg(0, "000"));
    CHECK(st.zeta == cfg(0, "000"));
  }
  // black on a jointly occupied site: zeta flips, eta loses the component
  {
    CoupledState st{cfg(0, "11110"), cfg(0, "01110")};
    coupled_step(st, Mark{2, MarkColor::black, 1, {}});
    CHECK(st.zeta == cfg(0, "11010"));
    CHECK(st.eta == cfg(0, "00000"));
  }
  // black on a zeta-vacant site: both occupy
  {
    CoupledState st{cfg(0, "000"), cfg(0, "000")};
    coupled_step(st, Mark{0, MarkColor::black, 1, {}});
    CHECK(st.zeta == cfg(0, "100"));
    CHECK(st.eta == cfg(0, "100"));
  }
}

TEST_CASE("run_coupled: empty log returns the initial state") {
  const Config z = cfg(0, "0110");
  const Config e = cfg(0, "0010");
  const auto traj = run_coupled(z, e, EventLog{});
  CHECK(traj.final_state.zeta == z);
  CHECK(traj.final_state.eta == e);
  CHECK_THROWS_AS(run_coupled(cfg(0, "00"), cfg(0, "01"), EventLog{}), DominationViolatedError);
}

TEST_CASE("domination eta <= zeta holds along random logs") {
  Rng rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const Interval w{-5, 5};
    // random dominated pair
    std::vector<SiteState> zs, es;
    for (Site i = w.left; i <= w.right; ++i) {
      const bool z = rng.coin();
      zs.push_back(z ? SiteState::occupied : SiteState::vacant);
      es.push_back(z && rng.coin() ? SiteState::occupied : SiteState::vacant);
    }
    const EventLog log = generate_event_log(w, EventCount{200}, rng);
    // run_coupled asserts the invariant internally after every event
    CHECK_NOTHROW(run_coupled(Config::from_states(w, zs), Config::from_states(w, es), log));
  }
}

TEST_CASE("black effects on zeta match the parity formula (exhaustive w=3, len<=4)") {
  const Interval w{0, 2};
  // depth-first over all logs of length <= 4 over (3 sites x 2 colors)
  struct Node {
    CoupledState st;
    std::map<Site, std::uint64_t> blacks;
  };
  for (int bits = 0; bits < 8; ++bits) {
    std::string s;
    for (int i = 0; i < 3; ++i) s.push_back((bits >> i) & 1 ? '1' : '0');
    const Config z0 = cfg(0, s);
    std::vector<Node> frontier{Node{CoupledState{z0, Config::all_vacant(w)}, {}}};
    for (int depth = 0; depth < 4; ++depth) {
      std::vector<Node> next;
      for (const Node& node : frontier) {
        for (Site i = 0; i < 3; ++i) {
          for (MarkColor c : {MarkColor::black, MarkColor::grey}) {
            Node child = node;
            coupled_step(child.st, Mark{i, c, 1, {}});
            if (c == MarkColor::black) ++child.blacks[i];
            CHECK(child.st.zeta == evolve_bernoulli(z0, child.blacks));
            next.push_back(std::move(child));
          }
        }
      }
      frontier = std::move(next);
    }
  }
}

TEST_CASE("pair coupling: equal starts stay equal, ordered starts stay ordered") {
  Rng rng(7);
  const Interval w{-3, 3};
  const Config z = sample_bernoulli_config(w, RngStream{11, 0});
  EventLog n = generate_event_log(w, TimeHorizon{3.0}, rng);
  EventLog v = generate_event_log(w, TimeHorizon{3.0}, rng);
  const auto same = run_coupled_bernoulli_pair(z, z, n, v);
  CHECK(same.zeta1 == same.zeta2);
  for (double g : same.coalescence) CHECK(g == 0.0);

  // zeta1 <= zeta2 pointwise is preserved
  std::vector<SiteState> lo, hi;
  for (Site i = w.left; i <= w.right; ++i) {
    const bool up = rng.coin();
    hi.push_back(up ? SiteState::occupied : SiteState::vacant);
    lo.push_back(up && rng.coin() ? SiteState::occupied : SiteState::vacant);
  }
  const auto ordered = run_coupled_bernoulli_pair(Config::from_states(w, lo),
                                                  Config::from_states(w, hi), n, v);
  for (Site i = w.left; i <= w.right; ++i)
    CHECK((ordered.zeta1.occupied(i) ? 1 : 0) <= (ordered.zeta2.occupied(i) ? 1 : 0));
}

TEST_CASE("coalescence is absorbing and its tail is exp(-2t)") {
  const Interval w{0, 0};
  int not_met_by_1 = 0;
  const int n = 100000;
  for (int r = 0; r < n; ++r) {
    Rng rng(RngStream{400, static_cast<std::uint64_t>(r)});
    EventLog ln = generate_event_log(w, TimeHorizon{1.0}, rng);
    EventLog lv = generate_event_log(w, TimeHorizon{1.0}, rng);
    const auto out = run_coupled_bernoulli_pair(cfg(0, "0"), cfg(0, "1"), ln, lv);
    if (out.coalescence[0] < 0) {
      ++not_met_by_1;
      CHECK(out.zeta1.occupied(0) != out.zeta2.occupied(0));
    } else {
      CHECK(out.zeta1.occupied(0) == out.zeta2.occupied(0));
    }
  }
  const double frac = static_cast<double>(not_met_by_1) / n;
  const double target = std::exp(-2.0);  // P[gamma >= 1] = e^{-2} exactly
  CHECK(frac <= target + 3 * std::sqrt(target * (1 - target) / n));
  CHECK(frac >= target - 3 * std::sqrt(target * (1 - target) / n));
}

TEST_CASE("zeta occupied fraction relaxes to 1/2 on a width-11 window") {
  const Interval w{-5, 5};
  int occ = 0, tot = 0;
  for (int r = 0; r < 1000; ++r) {
    Rng rng(RngStream{41, static_cast<std::uint64_t>(r)});
    const EventLog log = generate_event_log(w, EventCount{2000}, rng);
    const auto traj = run_coupled(Config::all_vacant(w), Config::all_vacant(w), log);
    for (Site i = w.left; i <= w.right; ++i) {
      occ += traj.final_state.zeta.occupied(i);
      ++tot;
    }
  }
  const double f = static_cast<double>(occ) / tot;
  CHECK(std::abs(f - 0.5) < 3 * std::sqrt(0.25 / tot));
}

TEST_CASE("event log generation: counts, colors, Poisson arrivals") {
  Rng rng(3);
  CHECK(generate_event_log(Interval{0, 4}, EventCount{0}, rng).marks.empty());

  std::uint64_t grey = 0, total = 20000;
  const EventLog log = generate_event_log(Interval{0, 4}, EventCount{total}, rng);
  for (std::uint64_t k = 0; k < total; ++k) {
    CHECK(log.marks[k].ordinal == k + 1);
    grey += log.marks[k].color == MarkColor::grey;
  }
  const double f = static_cast<double>(grey) / static_cast<double>(total);
  CHECK(std::abs(f - 0.5) < 3 * std::sqrt(0.25 / static_cast<double>(total)));

  // time mode on one site, T=1: black count is Poisson(1)
  double sum = 0;
  const int reps = 100000;
  for (int r = 0; r < reps; ++r) {
    Rng rr(RngStream{55, static_cast<std::uint64_t>(r)});
    const EventLog tl = generate_event_log(Interval{0, 0}, TimeHorizon{1.0}, rr);
    int blacks = 0;
    double last = 0;
    for (const Mark& m : tl.marks) {
      CHECK(*m.time > last - 1e-15);
      last = *m.time;
      blacks += m.color == MarkColor::black;
    }
    sum += blacks;
  }
  CHECK(std::abs(sum / reps - 1.0) < 3 * std::sqrt(1.0 / reps));
}

TEST_CASE("stationary transition counts look the same run backwards") {
  // width-3 stationary runs; compare reversed transition counts of run A
  // against forward transition counts of an independent run B
  const Interval w{-1, 1};
  auto transition_counts = [&](std::uint64_t seed, bool reversed) {
    std::map<std::pair<int, int>, std::uint64_t> counts;
    for (int r = 0; r < 400; ++r) {
      Rng rng(RngStream{seed, static_cast<std::uint64_t>(r)});
      Config z = sample_bernoulli_config(w, RngStream{seed ^ 0xabc, static_cast<std::uint64_t>(r)});
      std::vector<int> cells;
      auto cell = [&] {
        int idx = 0;
        for (Site i = w.left; i <= w.right; ++i) idx = (idx << 1) | (z.occupied(i) ? 1 : 0);
        return idx;
      };
      cells.push_back(cell());
      const EventLog log = generate_event_log(w, TimeHorizon{40.0}, rng);
      for (const Mark& m : log.marks) {
        if (m.color == MarkColor::black) z.flip(m.site);
        cells.push_back(cell());
      }
      if (reversed) std::reverse(cells.begin(), cells.end());
      for (std::size_t k = 0; k + 1 < cells.size(); ++k)
        if (cells[k] != cells[k + 1]) ++counts[{cells[k], cells[k + 1]}];
    }
    std::vector<std::uint64_t> flat;
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        auto it = counts.find({a, b});
        flat.push_back(it == counts.end() ? 0 : it->second);
      }
    return flat;
  };
  const auto rev = transition_counts(900, true);
  const auto fwd = transition_counts(901, false);
  const auto res = stats::chi2_two_sample(rev, fwd);
  CHECK(res.p > 0.01);
}
