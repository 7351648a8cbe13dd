#pragma once

#include <cstdint>
#include <vector>

#include "lpp/chainbounds.hpp"
#include "lpp/extended.hpp"
#include "lpp/harness.hpp"

namespace lpp::ibm {

inline constexpr int kInf = chainbounds::kInfLetter;

// Bin counts with an absolute front index. Storage is lowest stored bin first;
// below the lowest stored bin the configuration is either saturated (infinitely
// many balls, as far as any letter can tell) or empty.
class Configuration {
 public:
  Configuration() : Configuration(0, {1}, true) {}
  // counts given front first: X(front), X(front-1), ...
  Configuration(std::int64_t front, const std::vector<std::int64_t>& counts_from_front, bool below_is_saturated = true);

  std::int64_t front() const { return front_; }
  std::int64_t lowest_stored() const { return front_ - static_cast<std::int64_t>(bins_.size()) + 1; }
  std::size_t depth() const { return bins_.size(); }
  bool below_is_saturated() const { return saturated_; }
  // count in an absolute bin; -1 stands for a saturated bin
  std::int64_t count(std::int64_t bin) const;
  std::int64_t front_content() const { return bins_.back(); }
  std::vector<std::int64_t> counts_from_front() const { return {bins_.rbegin(), bins_.rend()}; }
  // contents of the k rightmost bins, front first (fewer if the storage runs out)
  std::vector<std::int64_t> top(int k) const;

  // B(X, xi); -inf for xi = inf or when an unsaturated configuration runs out of balls
  ExtInt select_bin(int xi) const;
  // in-place Phi_xi; returns true iff the front advanced
  bool apply(int xi);
  // drop stored bins below the point where the mass above reaches keep_mass;
  // they become part of the saturated floor
  void trim(std::int64_t keep_mass);

  bool operator==(const Configuration& o) const {
    return front_ == o.front_ && bins_ == o.bins_ && saturated_ == o.saturated_;
  }

 private:
  std::int64_t front_;
  std::vector<std::int64_t> bins_;  // bins_[i] = X(lowest_stored() + i)
  bool saturated_;
};

ExtInt select_bin(const Configuration& x, int xi);
Configuration apply_selection(const Configuration& x, int xi);
// applies letters[0] first
Configuration apply_word(const Configuration& x, const std::vector<int>& letters);

// X precedes Y: for every level l, the number of balls at or above l in X is at most that of Y
bool precedes(const Configuration& x, const Configuration& y);

// Letter law on {0, 1, 2, ...} and infinity.
class LetterLaw {
 public:
  static LetterLaw geometric(double p);
  // mass[j] = mu(j) for j = 1..K (mass[0] ignored)
  static LetterLaw table(double zero, std::vector<double> mass, double inf);
  static LetterLaw from_finite(const chainbounds::FiniteMu& mu);

  int sample(harness::RngStream& rng) const;
  double mass_one() const;
  bool is_geometric() const { return geometric_; }
  double p() const { return p_; }
  // largest finite letter, or -1 when unbounded
  int max_letter() const;

 private:
  bool geometric_ = false;
  double p_ = 0.0;
  std::vector<double> cum_;  // cum_[j] = mu({0..j}); tail goes to infinity
};

inline constexpr std::int64_t kKeepMass = std::int64_t{1} << 20;

struct SpeedOptions {
  std::size_t replicas = 20;
  unsigned threads = 1;
};

// (F(X_n) - F(X_0)) / n over independent replicas
harness::MonteCarloSummary simulate_speed(const LetterLaw& mu, std::int64_t steps, const Configuration& x0,
                                          std::uint64_t seed, const SpeedOptions& opt = {});

// 1 - time average of (1-p)^{front content}, summarized by batch means
harness::MonteCarloSummary estimate_C_via_front(double p, std::int64_t steps, std::int64_t burnin, std::uint64_t seed,
                                                int batches = 50);

// indices k with xi[k+i] <= i+1 for i = 0..horizon
std::vector<std::int64_t> detect_renewals(const std::vector<int>& xi, int horizon);

struct CouplingReport {
  // per k = 1..K: first step after which the top-k profiles agree until the end, -1 if they differ at the end
  std::vector<std::int64_t> coupled_from;
  // per k: first step at which they agree at all
  std::vector<std::int64_t> first_agreement;
};

CouplingReport coupling_check(const LetterLaw& mu, const Configuration& x0, const Configuration& y0, std::int64_t steps,
                              int k_max, std::uint64_t seed);

// Runs the four truncated processes (letters > k sent to inf, kept, sent to k,
// sent to 0) on shared geometric(p) letters and checks they stay ordered.
bool sandwich_ordered(double p, int k, std::int64_t steps, std::uint64_t seed);

}  // namespace lpp::ibm
