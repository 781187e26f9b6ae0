#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <queue>

#include "avalanche/contour.hpp"
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

// adaptive Simpson, the independent oracle for the closed-form constants
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
               double fm, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, fm, flm, eps / 2, depth - 1) +
         simpson(f, m, b, fm, fb, frm, eps / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps = 1e-12) {
  return simpson(f, a, b, f(a), f(b), f(0.5 * (a + b)), eps, 40);
}

}  // namespace

TEST_CASE("init_right_contour scans to the first vacancy") {
  // zeta0(0)=zeta0(1)=1, zeta0(2)=0 around i=0: r=2 (position 1.5)
  Config z = cfg(-1, "01100");
  CHECK(init_right_contour(z, 0) == 2);
  // vacant anchor: r = i
  CHECK(init_right_contour(cfg(-1, "000"), 0) == 0);
  // fixed window with no vacancy to the right fails
  CHECK_THROWS_AS(init_right_contour(cfg(0, "111"), 0), NoVacantSiteError);
}

TEST_CASE("initial law: r - i is geometric(1/2) on {0,1,...}") {
  const int n = 100000;
  std::vector<std::uint64_t> hist(14, 0);
  for (int rep = 0; rep < n; ++rep) {
    Config z = sample_bernoulli_config(Interval{-1, 1},
                                       RngStream{2027, static_cast<std::uint64_t>(rep)});
    const Site r = init_right_contour(z, 0);
    hist[std::min<std::size_t>(static_cast<std::size_t>(r), hist.size() - 1)] += 1;
  }
  std::vector<double> probs(hist.size());
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) probs[k] = std::pow(0.5, double(k + 1));
  probs.back() = std::pow(0.5, double(probs.size() - 1));  // pooled tail
  const auto res = stats::chi2_goodness(hist, probs);
  CHECK(res.p > 0.01);
}

TEST_CASE("contour_step follows the jump rules of the construction") {
  ContourState st;

  // black on the contour site, next vacancy two to the right: 0.5 -> 2.5
  Config z = cfg(-1, "010100");  // zeta(0)=1 so r0 for i=0 is 1
  st = init_contours(z, 0);
  CHECK(st.r == 1);
  CHECK(st.l == -1);
  contour_step(st, z, ContourSide::right, ContourEvent::black_right);
  CHECK(st.r == 3);
  CHECK(z.occupied(1));  // the mark flipped the old contour site
  CHECK(st.r_max == 3);

  // grey with zeta(r-2) occupied: fictitious, no move
  z = cfg(-2, "0110100");
  st = init_contours(z, 0);
  CHECK(st.r == 1);
  contour_step(st, z, ContourSide::right, ContourEvent::grey_left);
  CHECK(st.r == 1);
  CHECK(st.fictitious == 1);

  // grey with zeta(r-2) vacant: crosses the occupied site left of the
  // contour and lands right of the first occupied site below r-2
  z = cfg(-1, "0100100");  // sites -1..5; r=4 sits right of the occupied 3
  st = ContourState{};
  st.r = 4;
  st.l = -1;
  st.r_max = 4;
  st.l_min = -1;
  contour_step(st, z, ContourSide::right, ContourEvent::grey_left);
  CHECK(st.r == 1);           // position 0.5, right of the occupied site 0
  CHECK(z.occupied(3));       // the crossed site keeps its state
  CHECK_FALSE(z.occupied(1));

  // black at r-1 on an occupied site: flips it down and jumps left
  z = cfg(-2, "10010");  // sites -2..2
  st = init_contours(z, 1);
  CHECK(st.r == 2);
  contour_step(st, z, ContourSide::right, ContourEvent::black_left);
  CHECK(st.r == -1);  // lands right of the occupied -2
  CHECK_FALSE(z.occupied(1));

  // black at r-1 on a vacant site: flips it up, contour stays
  z = cfg(-2, "10001");
  st = ContourState{};
  st.r = 1;
  st.l = -1;
  st.r_max = 1;
  st.l_min = -1;
  contour_step(st, z, ContourSide::right, ContourEvent::black_left);
  CHECK(st.r == 1);
  CHECK(z.occupied(0));
}

TEST_CASE("contour_step after the meet throws") {
  Config z = cfg(-1, "000");
  ContourState st = init_contours(z, 0);
  CHECK(st.met);
  CHECK_THROWS_AS(contour_step(st, z, ContourSide::right, ContourEvent::black_right),
                  AlreadyStoppedError);
}

TEST_CASE("boundary vacancy invariant holds after every step") {
  Rng rng(515);
  for (int rep = 0; rep < 100; ++rep) {
    Config z = sample_bernoulli_config(Interval{-2, 2},
                                       RngStream{516, static_cast<std::uint64_t>(rep)});
    ContourState st = init_contours(z, 0);
    for (int k = 0; k < 40 && !st.met; ++k) {
      const ContourSide side = rng.coin() ? ContourSide::right : ContourSide::left;
      const auto ev = static_cast<ContourEvent>(rng.below(3));
      contour_step(st, z, side, ev);
      CHECK_FALSE(z.occupied(st.r));
      CHECK_FALSE(z.occupied(st.l));
    }
  }
}

TEST_CASE("decaying environment: frozen stretches accrue no flips") {
  // unfrozen exposure flips with probability (1 - e^{-2h})/2
  const double h = 0.7;
  const double expect = odd_flip_prob(h);
  int flips = 0;
  const int n = 200000;
  for (int rep = 0; rep < n; ++rep) {
    Rng rng(RngStream{88, static_cast<std::uint64_t>(rep)});
    DecayEnv env(DecayEnv::Init::xi_seed, rng);
    (void)env.read(0);  // deterministic occupied at t=0
    env.advance(h);
    flips += env.read(0) == SiteState::vacant;
  }
  const double f = static_cast<double>(flips) / n;
  CHECK(std::abs(f - expect) < 3 * std::sqrt(expect * (1 - expect) / n));

  // the same elapsed time spent frozen never flips
  for (int rep = 0; rep < 500; ++rep) {
    Rng rng(RngStream{89, static_cast<std::uint64_t>(rep)});
    DecayEnv env(DecayEnv::Init::xi_seed, rng);
    (void)env.read(0);
    env.set_freeze({0});
    env.advance(h);
    CHECK(env.read(0) == SiteState::occupied);
  }

  // freeze in the middle: only the unfrozen tail counts
  int flips_mixed = 0;
  for (int rep = 0; rep < n; ++rep) {
    Rng rng(RngStream{90, static_cast<std::uint64_t>(rep)});
    DecayEnv env(DecayEnv::Init::xi_seed, rng);
    (void)env.read(0);
    env.set_freeze({0});
    env.advance(2.0);  // frozen
    env.set_freeze({});
    env.advance(h);  // exposed
    flips_mixed += env.read(0) == SiteState::vacant;
  }
  const double fm = static_cast<double>(flips_mixed) / n;
  CHECK(std::abs(fm - expect) < 3 * std::sqrt(expect * (1 - expect) / n));
}

TEST_CASE("coupled right contours around j <= i stay ordered, equality absorbs") {
  int used = 0;
  for (int rep = 0; used < 300; ++rep) {
    REQUIRE(rep < 3000);
    Rng rng(RngStream{606, static_cast<std::uint64_t>(rep)});
    DecayEnv env(DecayEnv::Init::stationary_fair, rng);
    DecayView view{&env};
    const Site j = 0;
    const Site i = 1 + static_cast<Site>(rng.below(3));
    Site rj = init_right_contour_scan(view, j);
    if (rj == j) continue;  // zeta0(j) vacant: the contour around j is born met
    ++used;
    Site ri = init_right_contour_scan(view, i);
    REQUIRE(rj <= ri);
    bool joined = (rj == ri);
    for (int k = 0; k < 200; ++k) {
      // distinct driving streams of the union of both contours
      std::vector<std::pair<Site, MarkColor>> streams;
      auto add = [&](Site s, MarkColor c) {
        for (auto& e : streams)
          if (e.first == s && e.second == c) return;
        streams.emplace_back(s, c);
      };
      add(rj, MarkColor::black);
      add(rj - 1, MarkColor::black);
      add(rj - 1, MarkColor::grey);
      add(ri, MarkColor::black);
      add(ri - 1, MarkColor::black);
      add(ri - 1, MarkColor::grey);
      std::vector<Site> freeze;
      for (auto& e : streams)
        if (std::find(freeze.begin(), freeze.end(), e.first) == freeze.end())
          freeze.push_back(e.first);
      env.set_freeze(freeze);
      env.advance(rng.exponential(static_cast<double>(streams.size())));
      const auto [s, c] = streams[rng.below(streams.size())];
      if (c == MarkColor::black) env.flip(s);
      const Site old_rj = rj, old_ri = ri;
      auto react = [&](Site r) {
        if (c == MarkColor::black && s == r) return contour_after_black_right(view, r);
        if (c == MarkColor::black && s == r - 1) return contour_after_black_left(view, r);
        if (c == MarkColor::grey && s == r - 1) {
          if (auto moved = contour_after_grey_left(view, r)) return *moved;
        }
        return r;
      };
      rj = react(old_rj);
      ri = react(old_ri);
      CHECK(rj <= ri);
      if (joined) CHECK(rj == ri);
      joined = joined || (rj == ri);
    }
  }
}

TEST_CASE("driving-stream inter-arrival times are Exponential(1)") {
  Rng rng(711);
  DecayEnv env(DecayEnv::Init::stationary_fair, rng);
  DecayView view{&env};
  Site r = init_right_contour_scan(view, 0);
  std::array<std::vector<double>, 3> gaps;
  std::array<double, 3> last{0, 0, 0};
  const int events = 100000;
  for (int k = 0; k < events; ++k) {
    env.set_freeze({r, r - 1});
    env.advance(rng.exponential(3.0));
    const auto which = rng.below(3);
    gaps[which].push_back(env.now() - last[which]);
    last[which] = env.now();
    switch (which) {
      case 0:
        env.flip(r);
        r = contour_after_black_right(view, r);
        break;
      case 1:
        env.flip(r - 1);
        r = contour_after_black_left(view, r);
        break;
      default:
        if (auto moved = contour_after_grey_left(view, r)) r = *moved;
        break;
    }
  }
  for (const auto& g : gaps) {
    double stat = 0;
    CHECK(stats::ks_pass_exp1(g, &stat));
  }
}

TEST_CASE("run_until_meet basics") {
  std::uint64_t met_at_init = 0;
  const int n = 4000;
  for (int rep = 0; rep < n; ++rep) {
    Rng rng(RngStream{808, static_cast<std::uint64_t>(rep)});
    const MeetRecord rec = run_until_meet(0, rng);
    CHECK_FALSE(rec.budget_exceeded);
    CHECK(rec.r_max >= 0);
    CHECK(rec.l_min <= 0);
    if (rec.rho_events == 0) {
      ++met_at_init;
      CHECK(rec.rho_time == 0.0);
      CHECK(rec.r_max == 0);
      CHECK(rec.l_min == 0);
    } else {
      CHECK(rec.rho_time > 0);
    }
  }
  // met at initialization iff zeta0(0) vacant: probability 1/2
  const double f = static_cast<double>(met_at_init) / n;
  CHECK(std::abs(f - 0.5) < 3 * std::sqrt(0.25 / n));
}

TEST_CASE("analytic increment constants and their quadrature oracles") {
  const auto c = analytic_increment_constants();
  const double pi = 3.14159265358979323846;
  CHECK(c.I1 == doctest::Approx(pi / 2 - 1).epsilon(1e-14));
  CHECK(c.I2 == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(c.I3 == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(c.I4 == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(c.I == doctest::Approx(pi / 2 - 0.4).epsilon(1e-14));
  CHECK(c.I > 1.0);
  CHECK(c.mean_bound == doctest::Approx(1 - (pi / 2 - 0.4)).epsilon(1e-13));

  // defining integrals, evaluated independently
  const double i1 = integrate([](double u) { return (1 - u * u) / (1 + u * u); }, 0, 1);
  CHECK(std::abs(i1 - c.I1) < 1e-8);
  const double i3 = integrate([](double u) { return 0.5 * (1 - u * u); }, 0, 1);
  CHECK(std::abs(i3 - c.I3) < 1e-8);
  const double i4 = integrate([](double u) { return 1.5 * u * u * (1 - u * u); }, 0, 1);
  CHECK(std::abs(i4 - c.I4) < 1e-8);
  const double i2a = integrate([](double u) { return u * u * (1 - u * u) / (1 + u * u); }, 0, 1);
  const double i2b = integrate(
      [](double u) {
        return integrate([u](double v) { return v * v * (1 - v * v) / (1 + u * u * v * v); }, 0, 1,
                         1e-13);
      },
      0, 1);
  CHECK(std::abs(i2a + 2 * i2b - c.I2) < 1e-8);
}

namespace {

// Brute-force oracle for the Y1 excursion: every site of a wide fixed window
// carries explicit Poisson black/grey marks and the environment is tracked
// eagerly, so none of the lazy re-read machinery is involved.
std::int64_t oracle_y1(Rng& rng) {
  const Site LO = -90, HI = 50;
  std::vector<int> occ(static_cast<size_t>(HI - LO + 1));
  auto val = [&](Site k) -> int& { return occ[static_cast<size_t>(k - LO)]; };
  for (Site k = LO; k <= HI; ++k) val(k) = k <= 0 ? 1 : (k == 1 ? 0 : rng.coin());
  struct Ev {
    double t;
    Site site;
    int color;
    bool operator>(const Ev& o) const { return t > o.t; }
  };
  std::priority_queue<Ev, std::vector<Ev>, std::greater<Ev>> q;
  for (Site k = LO; k <= HI; ++k) {
    q.push({rng.exponential(1.0), k, 0});
    q.push({rng.exponential(1.0), k, 1});
  }
  Site r = 1;
  for (;;) {
    Ev e = q.top();
    q.pop();
    q.push({e.t + rng.exponential(1.0), e.site, e.color});
    if (e.color == 0) val(e.site) ^= 1;
    if (e.color == 0 && e.site == r) {
      Site k = r + 1;
      while (val(k)) ++k;
      return k - 1;
    }
    if (e.color == 0 && e.site == r - 1) {
      Site k = r - 1;
      while (!val(k)) --k;
      r = k + 1;
    } else if (e.color == 1 && e.site == r - 1 && !val(r - 2)) {
      Site k = r - 2;
      while (!val(k)) --k;
      r = k + 1;
    }
    REQUIRE(r > LO + 10);
    REQUIRE(r < HI - 30);
  }
}

}  // namespace

TEST_CASE("Y1 law matches the explicit-marks oracle") {
  const int n = 100000;
  const Site shift = 30;
  std::vector<std::uint64_t> ho(48, 0), hi(48, 0);
  double sum_o = 0, sum_i = 0;
  for (int rep = 0; rep < n; ++rep) {
    Rng rng(RngStream{7001, static_cast<std::uint64_t>(rep)});
    const std::int64_t y = oracle_y1(rng);
    sum_o += static_cast<double>(y);
    ++ho[static_cast<size_t>(std::clamp<std::int64_t>(y + shift, 0, 47))];
  }
  for (int rep = 0; rep < n; ++rep) {
    Rng rng(RngStream{7002, static_cast<std::uint64_t>(rep)});
    const std::int64_t y = sample_Y1(rng);
    sum_i += static_cast<double>(y);
    ++hi[static_cast<size_t>(std::clamp<std::int64_t>(y + shift, 0, 47))];
  }
  CHECK(stats::chi2_two_sample(ho, hi).p > 0.001);
  CHECK(std::abs(sum_o / n - sum_i / n) < 0.05);  // ~4 combined sigma
}

TEST_CASE("Y1: conditional geometric law, negative mean, exponential tail") {
  const int n = 200000;
  std::int64_t sum = 0;
  __int128 sum2 = 0;
  std::vector<std::uint64_t> cond_hist(10, 0);
  std::uint64_t cond_total = 0;
  std::map<std::int64_t, std::uint64_t> tail_hist;
  for (int rep = 0; rep < n; ++rep) {
    Rng rng(RngStream{909, static_cast<std::uint64_t>(rep)});
    const Y1Sample s = sample_Y1_detail(rng);
    sum += s.y1;
    sum2 += static_cast<__int128>(s.y1) * s.y1;
    ++tail_hist[s.y1];
    if (s.first_event_right) {
      ++cond_total;
      REQUIRE(s.y1 >= 1);
      cond_hist[std::min<std::size_t>(static_cast<std::size_t>(s.y1 - 1), 9)] += 1;
    }
  }
  // conditional on the first event driving the jump: P[Y1 = j] = 2^-j
  std::vector<double> probs(10);
  for (int j = 0; j < 9; ++j) probs[j] = std::pow(0.5, j + 1);
  probs[9] = std::pow(0.5, 9);
  CHECK(stats::chi2_goodness(cond_hist, probs).p > 0.01);
  CHECK(static_cast<double>(cond_total) / n == doctest::Approx(1.0 / 3).epsilon(0.05));

  // overall mean is negative, consistent with the analytic bound
  const double mean = static_cast<double>(sum) / n;
  const double var = static_cast<double>(sum2) / n - mean * mean;
  const double se = std::sqrt(var / n);
  CHECK(mean + 3 * se < 0);
  CHECK(mean < analytic_increment_constants().mean_bound + 3 * se);

  // P[Y1 >= k] <= 2^{1-k} for k = 2..10
  for (int k = 2; k <= 10; ++k) {
    std::uint64_t ge = 0;
    for (const auto& [v, cnt] : tail_hist)
      if (v >= k) ge += cnt;
    const double frac = static_cast<double>(ge) / n;
    const double bound = std::pow(2.0, 1 - k);
    CHECK(frac <= bound + 3 * std::sqrt(bound * (1 - bound) / n));
  }
}
