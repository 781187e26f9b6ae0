#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace avalanche {

// splitmix64 finalizer; used both to expand seeds and as a stateless
// per-counter hash (lazy environments need order-independent site coins).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (0xd1b54a32d192ed03ULL * b));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b) ^ (0x8cb92ba72f3d8dd7ULL * c));
}

// Identifies one deterministic random stream. Identical (seed, stream)
// reproduce identical draw sequences; distinct streams are independent
// for all practical purposes (full 64-bit mixing).
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngStream sub(std::uint64_t id) const { return RngStream{seed, mix64(stream, id)}; }
  std::uint64_t state() const { return mix64(seed, stream); }
};

// mt19937_64 engine with portable (implementation-independent) draws.
// std::uniform_int_distribution is not bit-stable across standard
// libraries, so bounded ints and doubles are derived by hand.
class Rng {
 public:
  Rng() : engine_(0) {}
  explicit Rng(const RngStream& s) : engine_(s.state()) {}
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(RngStream{seed, stream}.state()) {}

  std::uint64_t u64() { return engine_(); }

  bool coin() { return (u64() >> 63) != 0; }

  // Unbiased integer in [0, n) (Lemire's method).
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (-n) % n;
      while (lo < t) {
        m = static_cast<unsigned __int128>(u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  double exponential(double rate) { return -std::log1p(-unit()) / rate; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// k >= 1 with P[k] = 2^-k: position of the first set bit of a uniform
// word, exact with no floating point.
inline int sample_geometric_half(Rng& rng) {
  for (;;) {
    std::uint64_t x = rng.u64();
    if (x != 0) return std::countr_zero(x) + 1;
  }
}

// Stateless fair coin for site `i` of a lazily materialized environment;
// independent of the order sites are first read.
inline bool site_coin(std::uint64_t env_seed, std::int64_t i) {
  return (mix64(env_seed, static_cast<std::uint64_t>(i)) & 1ULL) != 0;
}

}  // namespace avalanche
