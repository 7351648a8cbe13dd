#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "lpp/harness.hpp"

namespace lpp::graph {

// Edges of a graph on all of Z, drawn on demand: (i,j) is present iff the
// hashed uniform at (i,j) falls below p_{j-i}.
class LazyGraph {
 public:
  using Distance = std::function<double(std::int64_t)>;

  LazyGraph(Distance p_of_d, harness::RngStream key);
  static LazyGraph bernoulli(double p, harness::RngStream key);

  bool present(std::int64_t i, std::int64_t j) const;
  double p(std::int64_t d) const { return p_(d); }
  // smallest D with sum_{j>D} Q_j < tol, Q_j = prod_{d<=j} (1 - p_d); cached
  std::int64_t infinity_horizon(double tol, std::int64_t max_horizon) const;

 private:
  Distance p_;
  harness::RngStream key_;
  double constant_ = -1.0;
  mutable std::map<double, std::int64_t> horizon_cache_;
};

struct RegenOptions {
  std::int64_t max_horizon = std::int64_t{1} << 24;
  // mu is declared infinite once the remaining failure probability is below this
  double inf_tol = 1e-12;
};

struct NextPoint {
  std::int64_t vertex = 0;
  int attempts = 1;  // K
};

// Least j > from with [from, j-1] ~> j ~> [j+1, inf), via the interlaced
// stopping times nu[k], mu[k].
NextPoint next_skeleton_point(const LazyGraph& g, std::int64_t from, const RegenOptions& opt = {});

// One cycle between consecutive skeleton points of the graph on Z, found by
// running the construction from -burn. length = Gamma_2 - Gamma_1, longest =
// edge count of the longest path Gamma_1 -> Gamma_2.
struct Cycle {
  std::int64_t start = 0;
  std::int64_t length = 0;
  std::int64_t longest = 0;
};
std::vector<Cycle> skeleton_cycles(const LazyGraph& g, std::int64_t burn, std::size_t count, const RegenOptions& opt = {});

struct CltReport {
  double C_hat = 0.0;
  double sigma2 = 0.0;
  double ks = 0.0;
  double critical = 0.0;  // 1% level, 1.63 / sqrt(reps)
  bool degenerate = false;
  std::size_t cycles = 0;
  std::vector<double> standardized;
};

CltReport clt_experiment(double p, std::int64_t n, std::size_t reps, std::uint64_t seed, std::size_t cycles = 20000,
                         unsigned threads = 1);

struct GapMomentReport {
  double series = 0.0;         // partial sum of k^q Q_k plus tail estimate
  bool series_finite = true;
  double moment_small = 0.0;   // empirical q-th gap moment, first quarter of the sample
  double moment_large = 0.0;   // same, full sample
  double relative_change = 0.0;
  bool stable = true;
  bool instability = false;    // raised when the series diverges
};

GapMomentReport gap_moment_diagnostic(const LazyGraph::Distance& p_of_d, int exponent, std::size_t reps,
                                      std::uint64_t seed, const RegenOptions& opt = {});

// Sum of k^q Q_k with a divergence test on the local decay exponent.
struct SeriesCheck {
  double value = 0.0;
  bool finite = true;
};
SeriesCheck moment_series(const LazyGraph::Distance& p_of_d, int exponent, std::int64_t max_terms = std::int64_t{1} << 22);

}  // namespace lpp::graph
