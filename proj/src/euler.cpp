#include "lpp/euler.hpp"

#include <cmath>
#include <limits>

#include "lpp/errors.hpp"

namespace lpp::euler {

SeriesValue phi_pentagonal(double q, double tol) {
  if (!(q >= 0.0) || q >= 1.0) throw InvalidParameter("euler_phi: q must lie in [0,1)");
  if (!(tol > 0.0)) throw InvalidParameter("euler_phi: tol must be positive");
  SeriesValue s;
  s.value = 1.0;
  s.terms_used = 1;
  if (q == 0.0) return s;
  const double lq = std::log(q);
  for (long long n = 1;; ++n) {
    // pentagonal pair for +n and -n
    double a = std::exp(lq * static_cast<double>(n * (3 * n - 1) / 2));
    double b = std::exp(lq * static_cast<double>(n * (3 * n + 1) / 2));
    if (a < tol) {
      s.truncation_bound = a;
      break;
    }
    double sign = (n % 2) ? -1.0 : 1.0;
    s.value += sign * (a + b);
    s.terms_used += 2;
  }
  return s;
}

// phi(e^-t) = sqrt(2 pi / t) exp(t/24 - pi^2/(6t)) phi(e^{-4 pi^2 / t}); the
// series alone cancels badly near q = 1
SeriesValue euler_phi(double q, double tol) {
  if (!(q >= 0.0) || q >= 1.0) throw InvalidParameter("euler_phi: q must lie in [0,1)");
  if (!(tol > 0.0)) throw InvalidParameter("euler_phi: tol must be positive");
  if (q <= 0.5) return phi_pentagonal(q, tol);
  const double pi2 = M_PI * M_PI;
  const double t = -std::log(q);
  SeriesValue dual = phi_pentagonal(std::exp(-4.0 * pi2 / t), tol);
  SeriesValue s = dual;
  s.value = std::exp(0.5 * std::log(2.0 * M_PI / t) + t / 24.0 - pi2 / (6.0 * t) + std::log(dual.value));
  return s;
}

RateValue skeleton_rate_checked(double p) {
  if (!(p >= 0.0) || p > 1.0) throw InvalidParameter("skeleton_rate: p must lie in [0,1]");
  if (p == 0.0) return {0.0, true};
  double phi = euler_phi(1.0 - p).value;
  return {phi * phi, false};
}

double skeleton_rate(double p) { return skeleton_rate_checked(p).lambda; }

SeriesValue skeleton_rate_general(const std::function<double(std::int64_t)>& p_seq, double tol,
                                  std::int64_t max_terms) {
  double p1 = p_seq(1);
  if (!(p1 > 0.0) || p1 > 1.0) throw InvalidParameter("skeleton_rate_general: need 0 < p_1 <= 1");
  SeriesValue s;
  double logprod = 0.0;
  double Q = 1.0;
  double q_half = 1.0;  // Q at j/2, for the local decay exponent
  double prev_alpha = 0.0;
  for (std::int64_t j = 1; j <= max_terms; ++j) {
    double pj = p_seq(j);
    if (!(pj >= 0.0) || pj > 1.0) throw InvalidParameter("skeleton_rate_general: p_j outside [0,1]");
    Q *= (1.0 - pj);
    s.terms_used = static_cast<int>(std::min<std::int64_t>(j, std::numeric_limits<int>::max()));
    if (Q == 0.0) {
      s.value = std::exp(logprod);
      s.truncation_bound = 0.0;
      return s;
    }
    logprod += 2.0 * std::log1p(-Q);
    if ((j & (j - 1)) == 0) {
      // at powers of two: compare with Q at j/2
      if (j >= 64 && Q < tol) {
        double ratio = Q / q_half;
        double alpha = -std::log2(ratio);
        double tail;
        if (ratio < 0.5) {
          // faster than geometric with ratio 2^{-1/j}
          double r = std::pow(ratio, 2.0 / static_cast<double>(j));
          tail = Q * r / (1.0 - r);
        } else if (alpha > 1.05) {
          tail = Q * static_cast<double>(j) / (alpha - 1.0);
        } else {
          throw NumericError("skeleton_rate_general: sum of Q_k appears divergent");
        }
        double bound = 2.0 * tail / (1.0 - Q);
        if (bound < tol) {
          s.value = std::exp(logprod);
          s.truncation_bound = s.value * bound;
          return s;
        }
      }
      double alpha = -std::log2(Q / q_half);
      // power-law decay keeps alpha flat, geometric decay doubles it
      if (j >= 65536 && alpha <= 1.0 && alpha <= 1.5 * prev_alpha)
        throw NumericError("skeleton_rate_general: sum of Q_k appears divergent");
      prev_alpha = alpha;
      q_half = Q;
    }
  }
  throw NumericError("skeleton_rate_general: tolerance not reached within max_terms");
}

std::vector<std::int64_t> phi_coefficients(int n_max) {
  if (n_max < 0) return {};
  std::vector<std::int64_t> c(n_max + 1, 0);
  c[0] = 1;
  for (long long k = 1;; ++k) {
    long long a = k * (3 * k - 1) / 2;
    long long b = k * (3 * k + 1) / 2;
    if (a > n_max) break;
    std::int64_t sign = (k % 2) ? -1 : 1;
    c[a] += sign;
    if (b <= n_max) c[b] += sign;
  }
  return c;
}

std::vector<std::int64_t> partition_numbers(int n_max) {
  if (n_max <= 0) return {};
  std::vector<std::int64_t> p(n_max + 1, 0);
  p[0] = 1;
  for (long long n = 1; n <= n_max; ++n) {
    __int128 acc = 0;
    for (long long k = 1;; ++k) {
      long long a = k * (3 * k - 1) / 2;
      if (a > n) break;
      long long b = k * (3 * k + 1) / 2;
      __int128 t = p[n - a] + (b <= n ? p[n - b] : 0);
      acc += (k % 2) ? t : -t;
    }
    if (acc > std::numeric_limits<std::int64_t>::max()) throw ResourceError("partition_numbers: exceeds 64-bit range");
    p[n] = static_cast<std::int64_t>(acc);
  }
  return std::vector<std::int64_t>(p.begin() + 1, p.end());
}

}  // namespace lpp::euler
