#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lpp/harness.hpp"

namespace lpp::charged {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // > 0, gcd(num, den) = 1

  static Rational make(std::int64_t num, std::int64_t den);
  // "a/b", integer, or finite decimal
  static Rational parse(const std::string& s);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

struct WitnessGraph {
  std::int64_t n = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> blue_edges;  // sorted, i < j <= n
  std::string family;                                          // "a".."d"
  std::vector<std::int64_t> marks;                             // a_0..a_t for family d
  bool has_edge(std::int64_t i, std::int64_t j) const;
};

// (N, n)-balanced 0/1 sequence
std::vector<int> balanced_sequence(int N, int n);
bool is_balanced(const std::vector<int>& v, int n);

WitnessGraph build_witness(const Rational& x);
WitnessGraph make_graph(std::int64_t n, std::vector<std::pair<std::int64_t, std::int64_t>> edges);

// every 0<j<n lies on a 0->n path and is incomparable with some other interior vertex
bool in_h(const WitnessGraph& g);

struct CriticalReport {
  bool member = false;
  bool critical = false;
  bool enumerated = false;        // full path enumeration rather than the red-count DP
  std::int64_t best_blue = 0;     // blue edges on the first certificate path
  std::vector<std::int64_t> red_counts;  // red counts attaining the maximum
  std::vector<std::vector<std::int64_t>> certificate;  // maximizers with distinct red counts
};

inline constexpr std::int64_t kEnumerationLimit = 30;

CriticalReport verify_critical(const WitnessGraph& g, const Rational& x);
// all (x,G)-maximal paths, by enumeration (n <= 20)
std::vector<std::vector<std::int64_t>> maximal_paths(const WitnessGraph& g, const Rational& x);

// (sum_{n>=1} (1-q)^{n(n-1)/2})^{-1}
double c_at_zero(double q);

// W^x_{0,n} for edges present w.p. p (charge 1), charge x otherwise; x = -inf gives the longest path
double window_charge(double p, double x, std::int64_t n, harness::RngStream& rng);
harness::MonteCarloSummary estimate_Cpx(double p, double x, std::int64_t n, std::size_t reps, std::uint64_t seed,
                                        unsigned threads = 1);

struct ScalingReport {
  harness::MonteCarloSummary direct;   // C(p,x)
  harness::MonteCarloSummary inverse;  // x C(1-p, 1/x)
  harness::MonteCarloSummary literal;  // x C(1-p, x)
};
ScalingReport scaling_check(double p, double x, std::int64_t n, std::size_t reps, std::uint64_t seed,
                            unsigned threads = 1);

}  // namespace lpp::charged
