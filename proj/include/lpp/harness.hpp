#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace lpp::harness {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: output k is a keyed hash of k, so a stream is a pure
// function of (seed, stream_index) and can also be read at random positions.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : seed_(seed), stream_(stream_index), key_(mix64(mix64(seed) ^ mix64(stream_index + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }
  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return ctr_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ ^ mix64(ctr_++)); }

  // uniform on the open interval (0,1)
  double uniform() { return to_open01((*this)()); }

  // random access; independent of the sequential counter
  std::uint64_t at(std::uint64_t a, std::uint64_t b) const {
    return mix64(mix64(key_ ^ mix64(a ^ 0xd1b54a32d192ed03ULL)) + b * 0x9e3779b97f4a7c15ULL);
  }
  double uniform_at(std::uint64_t a, std::uint64_t b) const { return to_open01(at(a, b)); }

  // child stream keyed by this one
  RngStream derive(std::uint64_t index) const { return RngStream(key_, index); }

  static double to_open01(std::uint64_t x) { return (static_cast<double>(x >> 12) + 0.5) * 0x1.0p-52; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

inline RngStream derive(std::uint64_t seed, std::uint64_t replica) { return RngStream(seed, replica); }

struct MonteCarloSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ci95_halfwidth = 0.0;

  double sem() const { return n ? std::sqrt(variance / static_cast<double>(n)) : 0.0; }
};

MonteCarloSummary summarize(const std::vector<double>& xs);

// |a-b| within k joint standard errors
bool agree(const MonteCarloSummary& a, const MonteCarloSummary& b, double k = 3.0);
bool within(const MonteCarloSummary& a, double target, double k = 3.0);
// distance from [lo,hi] at most k standard errors
bool overlaps(const MonteCarloSummary& a, double lo, double hi, double k = 3.0);

std::int64_t sample_geometric(double p, RngStream& rng);
double sample_exponential(double rate, RngStream& rng);
std::int64_t sample_poisson(double mean, RngStream& rng);

using Task = std::function<double(RngStream&)>;

MonteCarloSummary run_replicas(const Task& task, std::size_t n, std::uint64_t seed, unsigned threads = 1);
std::vector<double> replica_values(const Task& task, std::size_t n, std::uint64_t seed, unsigned threads = 1);

// Kolmogorov-Smirnov statistic of a sample against a continuous cdf.
double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);
double normal_cdf(double z);

}  // namespace lpp::harness
