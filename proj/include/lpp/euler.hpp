#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace lpp::euler {

struct SeriesValue {
  double value = 0.0;
  int terms_used = 0;
  double truncation_bound = 0.0;
};

// phi(q) = prod_{k>=1} (1 - q^k)
SeriesValue euler_phi(double q, double tol = 1e-16);
// the pentagonal-number series on its own
SeriesValue phi_pentagonal(double q, double tol = 1e-16);

struct RateValue {
  double lambda = 0.0;
  bool degenerate = false;
};

// lambda(p) = phi(1-p)^2, the density of skeleton points
RateValue skeleton_rate_checked(double p);
double skeleton_rate(double p);

// lambda = prod_j (1 - Q_j)^2 with Q_j = (1-p_1)...(1-p_j)
SeriesValue skeleton_rate_general(const std::function<double(std::int64_t)>& p_seq, double tol = 1e-14,
                                  std::int64_t max_terms = 50'000'000);

// coefficients of phi(q) up to q^n_max: +-1 at generalized pentagonal numbers
std::vector<std::int64_t> phi_coefficients(int n_max);

// p(1)..p(n_max), coefficients of 1/phi(q)
std::vector<std::int64_t> partition_numbers(int n_max);

}  // namespace lpp::euler
