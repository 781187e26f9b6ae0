#include "avalanche/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace avalanche {

Config Config::all_vacant(Interval w, EnvPolicy policy) {
  Config c;
  c.window_ = w;
  c.cells_.assign(static_cast<size_t>(std::max<Site>(w.width(), 0)), 0);
  c.policy_ = policy;
  return c;
}

Config Config::from_states(Interval w, std::vector<SiteState> states, EnvPolicy policy) {
  if (static_cast<Site>(states.size()) != w.width())
    throw std::invalid_argument("from_states: state count does not match window width");
  Config c;
  c.window_ = w;
  c.cells_.reserve(states.size());
  for (SiteState s : states) c.cells_.push_back(static_cast<std::uint8_t>(s));
  c.policy_ = policy;
  return c;
}

Config sample_bernoulli_config(Interval window, const RngStream& stream) {
  if (window.empty()) throw EmptyWindowError("sample_bernoulli_config: empty window");
  Config c;
  c.window_ = window;
  c.policy_ = EnvPolicy::lazy_bernoulli_half;
  c.env_seed_ = stream.state();
  c.cells_.resize(static_cast<size_t>(window.width()));
  for (Site i = window.left; i <= window.right; ++i)
    c.cells_[static_cast<size_t>(i - window.left)] = site_coin(c.env_seed_, i) ? 1 : 0;
  return c;
}

void Config::extend_to(Site a, Site b) {
  if (policy_ != EnvPolicy::lazy_bernoulli_half)
    throw OutOfWindowError("extend_to: config is not lazily extendable");
  a = std::min(a, window_.left);
  b = std::max(b, window_.right);
  if (b - a + 1 > kMaxWidth)
    throw OutOfWindowError("extend_to: extension budget exceeded");
  if (a < window_.left) {
    std::vector<std::uint8_t> grown;
    grown.reserve(static_cast<size_t>(b - a + 1));
    for (Site i = a; i < window_.left; ++i) grown.push_back(site_coin(env_seed_, i) ? 1 : 0);
    grown.insert(grown.end(), cells_.begin(), cells_.end());
    cells_ = std::move(grown);
    window_.left = a;
  }
  while (window_.right < b) {
    ++window_.right;
    cells_.push_back(site_coin(env_seed_, window_.right) ? 1 : 0);
  }
}

SiteState Config::at(Site i) const {
  if (window_.contains(i)) return cell(i);
  if (policy_ == EnvPolicy::fixed_vacant_outside) return SiteState::vacant;
  const_cast<Config*>(this)->extend_to(i, i);
  return cell(i);
}

void Config::set(Site i, SiteState s) {
  if (!window_.contains(i)) {
    if (policy_ == EnvPolicy::fixed_vacant_outside)
      throw OutOfWindowError("set: site outside fixed window");
    extend_to(i, i);
  }
  cells_[static_cast<size_t>(i - window_.left)] = static_cast<std::uint8_t>(s);
}

std::optional<Interval> Config::component(Site i) const {
  if (!occupied(i)) return std::nullopt;
  Site l = i;
  while (occupied(l - 1)) --l;
  Site r = i;
  while (occupied(r + 1)) ++r;
  return Interval{l, r};
}

std::optional<Interval> connected_component(const Config& config, Site i) {
  if (config.policy() == EnvPolicy::lazy_bernoulli_half && !config.window().contains(i))
    throw OutOfWindowError("connected_component: site outside lazy window");
  return config.component(i);
}

int particle_mass_at_edge(const Config& config) {
  const Interval w = config.window();
  if (!(w.contains(-1) && w.contains(2)))
    throw std::invalid_argument("particle_mass_at_edge: window must contain [-1,2]");
  if (!config.occupied(0) && !config.occupied(1)) return 1;
  const Site anchor = config.occupied(0) ? 0 : 1;
  const auto run = config.component(anchor);
  if (config.policy() == EnvPolicy::fixed_vacant_outside &&
      (run->left == w.left || run->right == w.right))
    throw BoundaryTruncatedError("particle_mass_at_edge: occupied run reaches the window edge");
  return static_cast<int>(run->width()) + 1;
}

std::string Config::to_text() const {
  std::string out = "[" + std::to_string(window_.left) + "," + std::to_string(window_.right) + "]:";
  out.reserve(out.size() + cells_.size());
  for (std::uint8_t v : cells_) out.push_back(v ? '1' : '0');
  return out;
}

Config Config::from_text(const std::string& text, EnvPolicy policy) {
  auto bad = [&] { return std::invalid_argument("Config::from_text: malformed '" + text + "'"); };
  if (text.empty() || text[0] != '[') throw bad();
  size_t comma = text.find(',');
  size_t close = text.find("]:");
  if (comma == std::string::npos || close == std::string::npos || comma > close) throw bad();
  Site left = 0, right = 0;
  auto r1 = std::from_chars(text.data() + 1, text.data() + comma, left);
  auto r2 = std::from_chars(text.data() + comma + 1, text.data() + close, right);
  if (r1.ec != std::errc() || r2.ec != std::errc()) throw bad();
  Interval w{left, right};
  std::string_view bits(text.data() + close + 2, text.size() - close - 2);
  if (static_cast<Site>(bits.size()) != w.width()) throw bad();
  std::vector<SiteState> states;
  states.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw bad();
    states.push_back(ch == '1' ? SiteState::occupied : SiteState::vacant);
  }
  return Config::from_states(w, std::move(states), policy);
}

}  // namespace avalanche
