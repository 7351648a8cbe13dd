#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpp/charges.hpp"
#include "lpp/extended.hpp"
#include "lpp/harness.hpp"

namespace lpp::graph {

// Either i.i.d. charges from a ChargeLaw, or presence probability p_{j-i}
// with charges {1, -inf}.
class EdgeLaw {
 public:
  using Distance = std::function<double(std::int64_t)>;

  static EdgeLaw bernoulli(double p);
  static EdgeLaw two_atom(double p, double x);
  static EdgeLaw continuous(const ChargeLaw& f);
  static EdgeLaw distance_dependent(Distance p_of_d);
  static EdgeLaw charges(const ChargeLaw& f);

  bool is_distance_dependent() const { return static_cast<bool>(dist_); }
  // Bernoulli-type: every charge is 1 or -inf
  bool unit_or_absent() const;
  double presence(std::int64_t d) const;
  ExtReal charge_from_uniform(std::int64_t d, double u) const;
  const ChargeLaw& charge_law() const { return law_; }

 private:
  ChargeLaw law_;
  Distance dist_;
};

// Charges on the pairs 0 <= i < j <= n. Sampled windows keep only a key; each
// charge is recomputed from a counter-based hash of (i, j).
class GraphWindow {
 public:
  GraphWindow(std::int64_t n, EdgeLaw law, harness::RngStream key);
  // explicit edge list with charge 1 (all other pairs absent)
  static GraphWindow from_edges(std::int64_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);
  // explicit packed charges, pair (i,j) at j(j-1)/2 + i
  static GraphWindow from_charges(std::int64_t n, std::vector<ExtReal> packed);

  std::int64_t n() const { return n_; }
  ExtReal charge(std::int64_t i, std::int64_t j) const;
  bool present(std::int64_t i, std::int64_t j) const { return charge(i, j).finite(); }
  bool unit_or_absent() const;
  // upper bound on every charge
  double max_charge() const;
  // copy with every charge stored explicitly
  GraphWindow materialized() const;
  GraphWindow with_charge(std::int64_t i, std::int64_t j, ExtReal c) const;

  static std::size_t index(std::int64_t i, std::int64_t j) {
    return static_cast<std::size_t>(j * (j - 1) / 2 + i);
  }

 private:
  GraphWindow() = default;
  std::int64_t n_ = 0;
  EdgeLaw law_;
  harness::RngStream key_;
  std::vector<ExtReal> packed_;
};

GraphWindow sample_window(std::int64_t n, const EdgeLaw& law, harness::RngStream& rng);

// L_j: longest path (edge count) ending at j from any start
std::vector<std::int64_t> longest_path_profile(const GraphWindow& w);
// W_{from,j}: max summed charge over paths from -> j, -inf if none, W_{from,from} = 0
std::vector<ExtReal> max_charge_profile(const GraphWindow& w, std::int64_t from = 0);

struct Geodesic {
  ExtReal weight;
  std::vector<std::int64_t> path;  // from 0 to n
};
// heaviest 0 -> n path, ties broken toward the smallest predecessor
Geodesic geodesic(const GraphWindow& w);

// max_j L_j on Bernoulli(p) vertices 0..n without storing edges
std::int64_t longest_path_stream(double p, std::int64_t n, harness::RngStream& rng);

struct SkeletonReport {
  std::vector<std::int64_t> points;
  std::vector<std::int64_t> gaps;
};

// v with u ~> v for every u < v and v ~> w for every w > v, inside the window
SkeletonReport skeleton_points(const GraphWindow& w);
// keep points in [margin, n - margin]
SkeletonReport trim(const SkeletonReport& r, std::int64_t n, std::int64_t margin);

// P(H_{0,k}) estimates for k = 1..n_max (n_max <= 63)
std::vector<harness::MonteCarloSummary> skeleton_gap_pmf(double p, int n_max, std::size_t reps, std::uint64_t seed,
                                                         unsigned threads = 1);
// the event itself, on an explicit small window
bool inter_skeleton_event(const GraphWindow& w);

}  // namespace lpp::graph
