#pragma once

#include <cstddef>
#include <vector>

#include "avalanche/errors.hpp"

namespace avalanche {
namespace meanfield {

// Concentrations c_1..c_K of particles per unit length (index 0 = mass 1).
struct MeanFieldVector {
  std::vector<double> c;

  std::size_t K() const { return c.size(); }
  double m0() const;  // sum c_k
  double m1() const;  // sum k c_k
  double m2() const;  // sum k^2 c_k
};

struct SteadyStateSolution {
  std::vector<double> a;  // a_1..a_K
  double g = 0;
  MeanFieldVector c;
  double residual = 0;  // |sum a_k (g/2)^k - 1|
};

// a_1 = 1, a_k = (1/(k+1)) sum_{j=1}^{k-1} a_j a_{k-j}.
std::vector<double> compute_a(std::size_t K);

// Unique g with sum_{k<=K} a_k (g/2)^k = 1, by bisection in z = g/2 on (0,1];
// the series has positive coefficients so the map is strictly increasing.
double solve_g(std::size_t K, double tol);
double solve_g(const std::vector<double>& a, double tol);

// c_k = a_k g^{k-1} 2^{-k}.
SteadyStateSolution steady_state(std::size_t K, double tol);

// Truncated right-hand side: coagulation restricted to k <= K (mass pairing
// above K is absorbed), fragmentation gain in c_1 from every k <= K.
std::vector<double> ode_rhs(const MeanFieldVector& c);

struct IntegrateOptions {
  double h = 0.01;            // base step; clipped to the stiffness bound
  double record_dt = 0.5;     // spacing of recorded states
  int max_halvings = 12;      // retries when a concentration dips below -1e-12
};

struct Trajectory {
  std::vector<double> times;
  std::vector<MeanFieldVector> states;
  double mass_drift = 0;     // |m1(T) - m1(0)|
  double leak_budget = 0;    // integral of the truncated mass derivative
};

// Classical fixed-step 4th-order integration of the truncated system.
Trajectory integrate(const MeanFieldVector& c0, double T, const IntegrateOptions& opt = {});

}  // namespace meanfield
}  // namespace avalanche
