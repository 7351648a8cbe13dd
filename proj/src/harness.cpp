#include "lpp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "lpp/errors.hpp"

namespace lpp::harness {

MonteCarloSummary summarize(const std::vector<double>& xs) {
  MonteCarloSummary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  // Welford, in index order
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double x : xs) {
    ++k;
    double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
  }
  s.mean = mean;
  s.variance = s.n > 1 ? std::max(0.0, m2 / static_cast<double>(s.n - 1)) : 0.0;
  s.ci95_halfwidth = 1.96 * std::sqrt(s.variance / static_cast<double>(s.n));
  return s;
}

bool agree(const MonteCarloSummary& a, const MonteCarloSummary& b, double k) {
  double se = std::sqrt(a.sem() * a.sem() + b.sem() * b.sem());
  return std::abs(a.mean - b.mean) <= k * se;
}

bool within(const MonteCarloSummary& a, double target, double k) {
  return std::abs(a.mean - target) <= k * a.sem();
}

bool overlaps(const MonteCarloSummary& a, double lo, double hi, double k) {
  if (a.mean >= lo && a.mean <= hi) return true;
  double d = a.mean < lo ? lo - a.mean : a.mean - hi;
  return d <= k * a.sem();
}

std::int64_t sample_geometric(double p, RngStream& rng) {
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("geometric: p must lie in (0,1]");
  if (p == 1.0) return 1;
  double u = rng.uniform();
  double k = std::ceil(std::log(u) / std::log1p(-p));
  if (k < 1.0) k = 1.0;
  if (k > 9.0e18) k = 9.0e18;
  return static_cast<std::int64_t>(k);
}

double sample_exponential(double rate, RngStream& rng) {
  if (!(rate > 0.0)) throw InvalidParameter("exponential: rate must be positive");
  return -std::log(rng.uniform()) / rate;
}

std::int64_t sample_poisson(double mean, RngStream& rng) {
  if (!(mean >= 0.0)) throw InvalidParameter("poisson: mean must be nonnegative");
  if (mean == 0.0) return 0;
  if (mean > 400.0) {
    // split to keep the inversion numerically safe
    double half = mean / 2.0;
    return sample_poisson(half, rng) + sample_poisson(mean - half, rng);
  }
  double u = rng.uniform();
  double term = std::exp(-mean);
  double cdf = term;
  std::int64_t k = 0;
  while (u > cdf) {
    ++k;
    term *= mean / static_cast<double>(k);
    cdf += term;
    if (term < 1e-300 && k > mean) break;
  }
  return k;
}

std::vector<double> replica_values(const Task& task, std::size_t n, std::uint64_t seed, unsigned threads) {
  std::vector<double> out(n);
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng = derive(seed, i);
      out[i] = task(rng);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      RngStream rng = derive(seed, i);
      out[i] = task(rng);
    }
  };
  std::vector<std::thread> pool;
  unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(n));
  for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

MonteCarloSummary run_replicas(const Task& task, std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n < 2) throw InvalidParameter("run_replicas: need at least 2 replicas");
  return summarize(replica_values(task, n, seed, threads));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) return 0.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace lpp::harness
