#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lpp/charges.hpp"
#include "lpp/harness.hpp"

namespace lpp::mgs {

// Particles on R u {-inf}: finite locations in decreasing order plus a count of -inf atoms.
class PointMeasure {
 public:
  PointMeasure() = default;
  static PointMeasure dirac(double x = 0.0);
  // locations in any order; -inf entries go to the -inf count
  static PointMeasure from_locations(std::vector<double> xs);

  std::size_t size() const { return locs_.size() + static_cast<std::size_t>(neg_inf_); }
  std::size_t finite_size() const { return locs_.size(); }
  std::int64_t neg_inf_count() const { return neg_inf_; }
  bool empty() const { return size() == 0; }
  // nu_k, k >= 1
  double at(std::size_t k) const;
  double top() const { return at(1); }
  const std::vector<double>& finite_locations() const { return locs_; }
  void add(double x);
  // sigma: shift so that nu_1 = 0
  PointMeasure recentered() const;
  bool operator==(const PointMeasure&) const = default;

 private:
  std::vector<double> locs_;
  std::int64_t neg_inf_ = 0;
};

using Column = std::function<double(std::size_t)>;  // k -> w_k, k >= 1

// sup_k (nu_k + w_k); stops once nu_k + 1 < best since w_k <= 1
double m_value(const PointMeasure& nu, const Column& w);
PointMeasure mgs_step(PointMeasure nu, const Column& w);

// inverse cdf of a charge law with esssup 1
using Quantile = std::function<double(double)>;

struct PerfectSample {
  double m_bar = 0.0;
  std::int64_t t_star = -1;
};

inline constexpr std::int64_t kMaxDepth = 1 << 20;

// default: 0.7 for atomless F, 0 when F has an atom at 1
double default_ell(const ChargeLaw& F);
// requires F([1-ell,1]) > 0 and F([ell,1]) > 0
void check_ell(const ChargeLaw& F, double ell);

PerfectSample perfect_sample(const ChargeLaw& F, double ell, harness::RngStream& rng);
// same, with the columns read from `key` at (t, j)
PerfectSample perfect_sample_keyed(const Quantile& q, double ell, const harness::RngStream& key);

struct CFReport {
  harness::MonteCarloSummary c;          // mean of m_bar^+
  harness::MonteCarloSummary tstar_sq;   // (T*)^2
  std::int64_t max_depth = 0;
};
CFReport estimate_CF(const ChargeLaw& F, double ell, std::size_t N, std::uint64_t seed, unsigned threads = 1);

struct ComplexityRow {
  double ell = 0.0;
  harness::MonteCarloSummary tstar_sq;
};
std::vector<ComplexityRow> complexity_profile(const ChargeLaw& F, const std::vector<double>& ell_grid, std::size_t N,
                                              std::uint64_t seed, unsigned threads = 1);

// Debiased sample for a charge law G with possibly unbounded support: truncations
// F_n = G ^ n, nu geometric with P(nu = n) = (1 - r) r^{n-1}, X_0 = 0.
struct GlynnRhee {
  Quantile quantile;    // G^{-1}
  double sup = 1.0;     // esssup of G (may be +inf)
  double ratio = 0.5;   // r
  double ell = 0.7;
};
double glynn_rhee_sample(const GlynnRhee& gr, harness::RngStream& rng);
harness::MonteCarloSummary glynn_rhee_estimate(const GlynnRhee& gr, std::size_t N, std::uint64_t seed,
                                               unsigned threads = 1);

}  // namespace lpp::mgs
