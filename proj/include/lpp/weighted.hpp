#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpp/harness.hpp"

namespace lpp::weighted {

// Edge weight law on [1, inf) for the complete graph.
struct WeightLaw {
  enum class Kind { Pareto, Constant };
  Kind kind = Kind::Pareto;
  double s = 3.0;      // tail index: P(u > x) = x^{-s}
  double value = 1.0;  // Constant

  static WeightLaw pareto(double s);
  static WeightLaw constant(double c);
  double from_uniform(double u) const;
  bool continuous() const { return kind == Kind::Pareto; }
};

// hashed weight of edge (i,j) under a key
double hashed_weight(const WeightLaw& law, const harness::RngStream& key, std::int64_t i, std::int64_t j);

struct PathResult {
  double weight = 0.0;      // W_{0,n}
  double heaviest = 0.0;    // h_n, heaviest edge on the geodesic
  std::vector<std::int64_t> path;
};

// O(n^2) DP on hashed weights
PathResult max_weight_path_hashed(const WeightLaw& law, const harness::RngStream& key, std::int64_t n);
// exact-in-law sampler for Pareto weights on the complete graph, near-linear in n
PathResult max_weight_path_pareto(double s, std::int64_t n, harness::RngStream& rng);

struct HeavyEdgeReport {
  std::vector<std::int64_t> n;
  std::vector<double> mean_log_h;
  double slope = 0.0;
  double target = 0.0;  // 1/(s-1)
};

HeavyEdgeReport heavy_edge_exponent(const WeightLaw& law, const std::vector<std::int64_t>& n_grid, std::size_t reps,
                                    std::uint64_t seed, unsigned threads = 1);

// b_n = F^{-1}(1 - 1/N), N = n(n+1)/2
double pareto_bn(double s, std::int64_t n);

// W_{0,n} / b_n per replica
std::vector<double> heavy_tail_scaling(double s, std::int64_t n, std::size_t reps, std::uint64_t seed,
                                       unsigned threads = 1);

}  // namespace lpp::weighted
