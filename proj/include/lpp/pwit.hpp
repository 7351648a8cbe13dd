#pragma once

#include <cstdint>
#include <vector>

#include "lpp/harness.hpp"

namespace lpp::pwit {

struct PwitSnapshot {
  double t = 0.0;
  std::vector<std::int64_t> Z;  // Z_t(l), l = 0..F_t
  std::int64_t V = 0;           // |V_t|
  int F = 0;                    // largest generation born by t
};

struct PwitRun {
  std::vector<PwitSnapshot> snapshots;
  std::vector<double> M;  // M_l: first birth time in generation l (M_0 = 0)
};

// Yule tree up to t_max, snapshots at the given sorted times (t_max if empty)
PwitRun simulate_pwit(double t_max, const std::vector<double>& sample_times, harness::RngStream& rng,
                      std::int64_t population_cap = 10'000'000);

// max{l : M_l <= t}
int front_from_minima(const std::vector<double>& M, double t);

struct BrwResult {
  std::vector<double> minima;  // minima[l-1] = M_l of the selected population, l = 1..n
  double M_n = 0.0;
};

// generation-synchronous branching random walk, Poisson(1) displacements,
// keeping the `beam` leftmost children per generation
BrwResult brw_min_displacement(std::int64_t n, std::int64_t beam, harness::RngStream& rng);

struct CoupledTrajectory {
  std::vector<std::int64_t> kappa;   // integer vertex of the i-th red particle, kappa[0] = 0
  std::vector<double> time;          // embedded time p * xi_{kappa_i}
  std::vector<std::int64_t> parent;  // index of the parent red particle, -1 for the root
  std::vector<std::int64_t> L;       // generation |Phi(kappa_i)|
  std::vector<std::int64_t> front;   // max_{j <= i} L_{kappa_j}
  double growth_rate() const;        // front / (kappa_n - kappa_0)
};

// red particles of the PWIT/graph coupling; parent at rank r with weight q^{r-1}
CoupledTrajectory coupled_tree(double p, std::int64_t steps, harness::RngStream& rng);

struct SparseReport {
  std::vector<double> pmf;  // P(L_n = k)
  double mean = 0.0;
  std::int64_t ell_n = 0;
};

// longest path among n vertices with edge probability p
SparseReport sparse_longest(std::int64_t n, double p, std::size_t reps, std::uint64_t seed, unsigned threads = 1);
// largest k <= n with binom(n,k) p^k >= 1
std::int64_t ell_n(std::int64_t n, double p);
// root > 1 of x log x = 1/(e gamma)
double A_gamma(double gamma);
// Poisson approximation of P(L_n >= m) from the mean number of length-m paths
double longest_at_least_poisson(std::int64_t n, double p, int m);

struct ShortestReport {
  std::vector<double> pmf;  // P(S_n = s), s = 0..n-1 (entry 0 unused)
  double p_inf = 0.0;       // P(no path)
};

// shortest path (edge count) from the first to the last of n vertices
ShortestReport shortest_path(std::int64_t n, double p, std::size_t reps, std::uint64_t seed, unsigned threads = 1);
double shortest_p1(double p);
double shortest_p2(std::int64_t n, double p);

}  // namespace lpp::pwit
