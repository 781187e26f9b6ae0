#include "avalanche/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace avalanche {
namespace meanfield {

double MeanFieldVector::m0() const {
  double s = 0;
  for (double v : c) s += v;
  return s;
}

double MeanFieldVector::m1() const {
  double s = 0;
  for (std::size_t k = 0; k < c.size(); ++k) s += static_cast<double>(k + 1) * c[k];
  return s;
}

double MeanFieldVector::m2() const {
  double s = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double m = static_cast<double>(k + 1);
    s += m * m * c[k];
  }
  return s;
}

std::vector<double> compute_a(std::size_t K) {
  if (K == 0) throw EmptyTruncationError("compute_a: K must be >= 1");
  std::vector<double> a(K);
  a[0] = 1.0;
  for (std::size_t k = 2; k <= K; ++k) {
    double s = 0;
    for (std::size_t j = 1; j < k; ++j) s += a[j - 1] * a[k - j - 1];
    a[k - 1] = s / static_cast<double>(k + 1);
  }
  return a;
}

namespace {

double power_series(const std::vector<double>& a, double z) {
  double s = 0;
  for (std::size_t k = a.size(); k-- > 0;) s = s * z + a[k];  // Horner on sum a_{k+1} z^k
  return s * z;
}

}  // namespace

double solve_g(const std::vector<double>& a, double tol) {
  if (a.empty()) throw EmptyTruncationError("solve_g: empty coefficient sequence");
  if (tol <= 0) throw std::invalid_argument("solve_g: tol must be positive");
  double lo = 0.0, hi = 1.0;
  if (power_series(a, hi) < 1.0)
    throw BracketFailureError("solve_g: series does not reach 1 on (0,1]; K too small");
  double z = 0.5, f = 0;
  for (int it = 0; it < 200; ++it) {
    z = 0.5 * (lo + hi);
    f = power_series(a, z) - 1.0;
    if (std::abs(f) <= tol) break;
    (f < 0 ? lo : hi) = z;
  }
  if (std::abs(f) > tol)
    throw BracketFailureError("solve_g: bisection did not reach the requested residual");
  return 2.0 * z;
}

double solve_g(std::size_t K, double tol) { return solve_g(compute_a(K), tol); }

SteadyStateSolution steady_state(std::size_t K, double tol) {
  SteadyStateSolution out;
  out.a = compute_a(K);
  out.g = solve_g(out.a, tol);
  const double q = out.g / 2.0;
  out.residual = std::abs(power_series(out.a, q) - 1.0);
  out.c.c.resize(K);
  // c_k = a_k g^{k-1} 2^{-k} = a_k q^k / g
  double qk = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    qk *= q;
    out.c.c[k - 1] = out.a[k - 1] * qk / out.g;
  }
  return out;
}

std::vector<double> ode_rhs(const MeanFieldVector& cv) {
  const std::size_t K = cv.K();
  if (K == 0) throw EmptyTruncationError("ode_rhs: empty state");
  const double m0 = cv.m0();
  if (!(m0 > 0)) throw DegenerateStateError("ode_rhs: m0 must be positive");
  const std::vector<double>& c = cv.c;
  std::vector<double> rhs(K, 0.0);

  // fragmentation of every mass-k particle feeds k unit particles
  double frag = 0;
  for (std::size_t k = 2; k <= K; ++k)
    frag += static_cast<double>(k - 1) * static_cast<double>(k) * c[k - 1];
  rhs[0] = -2.0 * c[0] + frag;

  for (std::size_t k = 2; k <= K; ++k) {
    double gain = 0;
    for (std::size_t i = 1; i < k; ++i) gain += c[i - 1] * c[k - i - 1];
    rhs[k - 1] = -(2.0 + static_cast<double>(k - 1)) * c[k - 1] + gain / m0;
  }
  return rhs;
}

Trajectory integrate(const MeanFieldVector& c0, double T, const IntegrateOptions& opt) {
  if (T < 0) throw std::invalid_argument("integrate: T must be >= 0");
  const std::size_t K = c0.K();
  Trajectory traj;
  traj.times.push_back(0);
  traj.states.push_back(c0);
  if (T == 0) return traj;

  // explicit stepper stability bound for the stiffest linear term -(K+1) c_K
  double h = std::min(opt.h, 2.5 / static_cast<double>(K + 1));

  auto negativity = [](const std::vector<double>& c) {
    for (double v : c)
      if (v < -1e-12) return true;
    return false;
  };

  MeanFieldVector cur = c0;
  const double m1_start = cur.m1();
  double t = 0;
  double next_record = opt.record_dt;
  std::vector<double> k1, k2, k3, k4;
  MeanFieldVector tmp;
  tmp.c.resize(K);

  while (t < T - 1e-12) {
    double step = std::min(h, T - t);
    MeanFieldVector next;
    int halvings = 0;
    for (;;) {
      k1 = ode_rhs(cur);
      for (std::size_t j = 0; j < K; ++j) tmp.c[j] = cur.c[j] + 0.5 * step * k1[j];
      k2 = ode_rhs(tmp);
      for (std::size_t j = 0; j < K; ++j) tmp.c[j] = cur.c[j] + 0.5 * step * k2[j];
      k3 = ode_rhs(tmp);
      for (std::size_t j = 0; j < K; ++j) tmp.c[j] = cur.c[j] + step * k3[j];
      k4 = ode_rhs(tmp);
      next.c.resize(K);
      for (std::size_t j = 0; j < K; ++j)
        next.c[j] = cur.c[j] + step / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
      if (!negativity(next.c)) break;
      if (++halvings > opt.max_halvings)
        throw NegativityBreachError("integrate: persistent negative concentration");
      step *= 0.5;
    }
    // the truncated system's exact mass derivative; accumulated as the
    // admissible drift budget
    double mass_dot = 0;
    for (std::size_t j = 0; j < K; ++j) mass_dot += static_cast<double>(j + 1) * k1[j];
    traj.leak_budget += std::abs(mass_dot) * step;

    cur = std::move(next);
    t += step;
    if (t >= next_record - 1e-12 || t >= T - 1e-12) {
      traj.times.push_back(t);
      traj.states.push_back(cur);
      next_record += opt.record_dt;
    }
  }
  traj.mass_drift = std::abs(cur.m1() - m1_start);
  return traj;
}

}  // namespace meanfield
}  // namespace avalanche
