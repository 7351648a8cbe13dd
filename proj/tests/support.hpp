#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "lpp/harness.hpp"

namespace testing {

inline bool within_sigma(const lpp::harness::MonteCarloSummary& s, double target, double k = 3.0) {
  return std::abs(s.mean - target) <= k * s.sem() + 1e-15;
}

inline lpp::harness::MonteCarloSummary bernoulli_summary(std::size_t hits, std::size_t n) {
  lpp::harness::MonteCarloSummary s;
  s.n = n;
  s.mean = static_cast<double>(hits) / static_cast<double>(n);
  s.variance = s.mean * (1.0 - s.mean) * static_cast<double>(n) / static_cast<double>(n - 1);
  s.ci95_halfwidth = 1.96 * std::sqrt(s.variance / static_cast<double>(n));
  return s;
}

// every increasing vertex sequence in 0..n with at least two vertices
inline void for_each_path(std::int64_t n, const std::function<bool(std::int64_t, std::int64_t)>& present,
                          const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> path;
  std::function<void()> extend = [&] {
    if (path.size() >= 2) f(path);
    for (std::int64_t j = path.back() + 1; j <= n; ++j) {
      if (!present(path.back(), j)) continue;
      path.push_back(j);
      extend();
      path.pop_back();
    }
  };
  for (std::int64_t s = 0; s <= n; ++s) {
    path = {s};
    extend();
  }
}

}  // namespace testing
