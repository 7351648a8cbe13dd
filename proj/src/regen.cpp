#include "lpp/regen.hpp"

#include <algorithm>
#include <cmath>

#include "lpp/errors.hpp"
#include "lpp/euler.hpp"
#include "lpp/graph.hpp"

namespace lpp::graph {

using harness::RngStream;

LazyGraph::LazyGraph(Distance p_of_d, RngStream key) : p_(std::move(p_of_d)), key_(key) {
  if (!p_) throw InvalidParameter("lazy graph: missing probability sequence");
  double p1 = p_(1);
  if (!(p1 > 0.0) || p1 > 1.0) throw InvalidParameter("lazy graph: need 0 < p_1 <= 1");
}

LazyGraph LazyGraph::bernoulli(double p, RngStream key) {
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("lazy graph: p must lie in (0,1]");
  LazyGraph g([p](std::int64_t) { return p; }, key);
  g.constant_ = p;
  return g;
}

bool LazyGraph::present(std::int64_t i, std::int64_t j) const {
  double p = constant_ >= 0.0 ? constant_ : p_(j - i);
  return key_.uniform_at(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)) < p;
}

std::int64_t LazyGraph::infinity_horizon(double tol, std::int64_t max_horizon) const {
  if (!(tol > 0.0)) throw InvalidParameter("infinity_horizon: tol must be positive");
  auto hit = horizon_cache_.find(tol);
  if (hit != horizon_cache_.end()) return hit->second;
  std::int64_t D = 0;
  if (constant_ >= 0.0) {
    double q = 1.0 - constant_;
    if (q > 0.0) {
      // tail after D is q^{D+1} / p
      while (std::pow(q, static_cast<double>(D + 1)) / constant_ >= tol) {
        ++D;
        if (D > max_horizon) throw ResourceError("infinity_horizon: exceeds max horizon");
      }
    }
  } else {
    std::vector<double> Q{1.0};
    double tail = -1.0;
    for (std::int64_t j = 1; j <= max_horizon; ++j) {
      double pj = p_(j);
      if (!(pj >= 0.0) || pj > 1.0) throw InvalidParameter("infinity_horizon: p_j outside [0,1]");
      Q.push_back(Q.back() * (1.0 - pj));
      if (Q.back() == 0.0) {
        tail = 0.0;
        break;
      }
      if (j >= 64 && (j & (j - 1)) == 0) {
        double ratio = Q[static_cast<std::size_t>(j)] / Q[static_cast<std::size_t>(j / 2)];
        double alpha = -std::log2(ratio);
        double est = INFINITY;
        if (ratio < 0.5) {
          double r = std::pow(ratio, 2.0 / static_cast<double>(j));
          est = Q.back() * r / (1.0 - r);
        } else if (alpha > 1.05) {
          est = Q.back() * static_cast<double>(j) / (alpha - 1.0);
        } else if (j >= 65536 && alpha <= 1.0) {
          throw NumericError("infinity_horizon: sum of Q_k appears divergent");
        }
        if (est < tol * 1e-3) {
          tail = est;
          break;
        }
      }
    }
    if (tail < 0.0) throw ResourceError("infinity_horizon: tail not resolved within max horizon");
    D = static_cast<std::int64_t>(Q.size()) - 1;
    double T = tail;
    while (D > 0 && T + Q[static_cast<std::size_t>(D)] < tol) {
      T += Q[static_cast<std::size_t>(D)];
      --D;
    }
  }
  horizon_cache_[tol] = D;
  return D;
}

NextPoint next_skeleton_point(const LazyGraph& g, std::int64_t from, const RegenOptions& opt) {
  const std::int64_t D = g.infinity_horizon(opt.inf_tol, opt.max_horizon);
  const std::int64_t limit = from + opt.max_horizon;
  auto check = [&](std::int64_t v) {
    if (v > limit) throw ResourceError("next_skeleton_point: horizon exhausted at vertex " + std::to_string(v));
  };
  auto succ = [&](std::int64_t i) {
    for (std::int64_t j = i + 1;; ++j) {
      check(j);
      if (g.present(i, j)) return j;
    }
  };

  NextPoint out;
  std::int64_t lower = from;  // nu must exceed this
  std::int64_t reach = succ(from);
  std::int64_t j = from + 1;
  for (;;) {
    // nu: first j > lower with every vertex of [base, j-1] having a successor <= j
    while (!(j > lower && reach <= j)) {
      reach = std::max(reach, succ(j));
      ++j;
      check(j);
    }
    const std::int64_t nu = j;
    // mu: first m where no edge from [nu, m-1] enters m
    std::int64_t mu = -1;
    for (std::int64_t m = nu + 1; m <= nu + D && mu < 0; ++m) {
      check(m);
      bool entered = false;
      for (std::int64_t i = m - 1; i >= nu; --i)
        if (g.present(i, m)) {
          entered = true;
          break;
        }
      if (!entered) mu = m;
    }
    if (mu < 0) {
      out.vertex = nu;
      return out;
    }
    ++out.attempts;
    lower = mu;
    reach = succ(nu);
    j = nu + 1;
  }
}

namespace {

std::int64_t first_point_after_zero(const LazyGraph& g, std::int64_t burn, const RegenOptions& opt) {
  std::int64_t v = -burn;
  while (v < 0) v = next_skeleton_point(g, v, opt).vertex;
  return v;
}

std::int64_t cycle_longest(const LazyGraph& g, std::int64_t a, std::int64_t b) {
  const std::int64_t len = b - a;
  std::vector<std::int64_t> L(len + 1, 0), pm(len + 1, 0);
  for (std::int64_t m = 1; m <= len; ++m) {
    std::int64_t best = 0;
    for (std::int64_t i = m - 1; i >= 0; --i) {
      if (pm[i] + 1 <= best) break;
      if (L[i] + 1 > best && g.present(a + i, a + m)) best = L[i] + 1;
    }
    L[m] = best;
    pm[m] = std::max(pm[m - 1], best);
  }
  return L[len];
}

std::int64_t burn_for(double lambda) {
  if (!(lambda > 0.0)) return std::int64_t{1} << 14;
  return static_cast<std::int64_t>(std::ceil(20.0 / lambda));
}

}  // namespace

std::vector<Cycle> skeleton_cycles(const LazyGraph& g, std::int64_t burn, std::size_t count, const RegenOptions& opt) {
  std::vector<Cycle> out;
  out.reserve(count);
  std::int64_t v = first_point_after_zero(g, burn, opt);
  for (std::size_t c = 0; c < count; ++c) {
    std::int64_t next = next_skeleton_point(g, v, opt).vertex;
    out.push_back({v, next - v, cycle_longest(g, v, next)});
    v = next;
  }
  return out;
}

CltReport clt_experiment(double p, std::int64_t n, std::size_t reps, std::uint64_t seed, std::size_t cycles,
                         unsigned threads) {
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("clt_experiment: p must lie in (0,1]");
  if (n < 1) throw InvalidParameter("clt_experiment: n must be positive");
  CltReport r;
  r.critical = 1.63 / std::sqrt(static_cast<double>(reps));
  if (p == 1.0) {
    r.C_hat = 1.0;
    r.degenerate = true;
    return r;
  }
  auto Ls = harness::replica_values(
      [&](RngStream& rng) { return static_cast<double>(longest_path_stream(p, n, rng)); }, reps, seed, threads);
  double mean = 0.0;
  for (double x : Ls) mean += x;
  mean /= static_cast<double>(Ls.size());
  r.C_hat = mean / static_cast<double>(n);

  const double lambda = euler::skeleton_rate(p);
  LazyGraph g = LazyGraph::bernoulli(p, RngStream(seed, 0x5eedc1c1eULL));
  auto cyc = skeleton_cycles(g, burn_for(lambda), cycles);
  std::vector<double> d;
  d.reserve(cyc.size());
  for (auto& c : cyc) d.push_back(static_cast<double>(c.longest) - r.C_hat * static_cast<double>(c.length));
  r.cycles = cyc.size();
  r.sigma2 = harness::summarize(d).variance;
  if (!(r.sigma2 > 0.0)) {
    r.degenerate = true;
    return r;
  }
  const double scale = std::sqrt(r.sigma2 * lambda * static_cast<double>(n));
  for (double L : Ls) r.standardized.push_back((L - r.C_hat * static_cast<double>(n)) / scale);
  r.ks = harness::ks_statistic(r.standardized, harness::normal_cdf);
  return r;
}

SeriesCheck moment_series(const LazyGraph::Distance& p_of_d, int exponent, std::int64_t max_terms) {
  if (exponent < 0) throw InvalidParameter("moment_series: negative exponent");
  SeriesCheck s;
  double Q = 1.0, t_half = 0.0, beta = INFINITY;
  for (std::int64_t j = 1; j <= max_terms; ++j) {
    Q *= 1.0 - p_of_d(j);
    if (Q == 0.0) return s;
    double t = std::pow(static_cast<double>(j), exponent) * Q;
    s.value += t;
    if ((j & (j - 1)) == 0) {
      if (j >= 1024) {
        double ratio = t / t_half;
        double tail = INFINITY;
        if (ratio < 0.5) {
          double r = std::pow(ratio, 2.0 / static_cast<double>(j));
          tail = t * r / (1.0 - r);
          beta = INFINITY;
        } else {
          beta = -std::log2(ratio);
          if (beta > 1.05) tail = t * static_cast<double>(j) / (beta - 1.0);
        }
        if (tail < 1e-12 * s.value) {
          s.value += tail;
          return s;
        }
      }
      t_half = t;
    }
  }
  s.finite = beta > 1.05;
  return s;
}

GapMomentReport gap_moment_diagnostic(const LazyGraph::Distance& p_of_d, int exponent, std::size_t reps,
                                      std::uint64_t seed, const RegenOptions& opt) {
  if (exponent < 1) throw InvalidParameter("gap_moment_diagnostic: exponent must be at least 1");
  if (reps < 8) throw InvalidParameter("gap_moment_diagnostic: need at least 8 samples");
  GapMomentReport rep;
  auto series = moment_series(p_of_d, exponent);
  rep.series = series.value;
  rep.series_finite = series.finite;
  rep.instability = !series.finite;

  double lambda = 0.0;
  try {
    lambda = euler::skeleton_rate_general(p_of_d, 1e-6, 10'000'000).value;
  } catch (const NumericError&) {
    lambda = 0.0;
  }
  LazyGraph g(p_of_d, RngStream(seed, 0x9a9b0ULL));
  std::int64_t v = first_point_after_zero(g, burn_for(lambda), opt);
  const std::size_t small = reps / 4;
  double acc = 0.0;
  for (std::size_t k = 0; k < reps; ++k) {
    std::int64_t next = next_skeleton_point(g, v, opt).vertex;
    acc += std::pow(static_cast<double>(next - v), exponent);
    v = next;
    if (k + 1 == small) rep.moment_small = acc / static_cast<double>(small);
  }
  rep.moment_large = acc / static_cast<double>(reps);
  rep.relative_change = std::abs(rep.moment_large - rep.moment_small) / rep.moment_large;
  rep.stable = rep.relative_change < 0.1;
  return rep;
}

}  // namespace lpp::graph
