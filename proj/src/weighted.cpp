#include "lpp/weighted.hpp"

#include <algorithm>
#include <cmath>

#include "lpp/errors.hpp"

namespace lpp::weighted {

using harness::RngStream;

WeightLaw WeightLaw::pareto(double s) {
  if (!(s > 0.0)) throw InvalidParameter("pareto weights: tail index must be positive");
  WeightLaw w;
  w.kind = Kind::Pareto;
  w.s = s;
  return w;
}

WeightLaw WeightLaw::constant(double c) {
  WeightLaw w;
  w.kind = Kind::Constant;
  w.value = c;
  return w;
}

double WeightLaw::from_uniform(double u) const {
  if (kind == Kind::Constant) return value;
  return std::exp(-std::log(u) / s);
}

double hashed_weight(const WeightLaw& law, const RngStream& key, std::int64_t i, std::int64_t j) {
  return law.from_uniform(key.uniform_at(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
}

namespace {

PathResult trace(std::int64_t n, const std::vector<double>& W, const std::vector<std::int64_t>& pred,
                 const std::vector<double>& predw) {
  PathResult r;
  r.weight = W[n];
  for (std::int64_t v = n; v > 0; v = pred[v]) {
    r.path.push_back(v);
    r.heaviest = std::max(r.heaviest, predw[v]);
  }
  r.path.push_back(0);
  std::reverse(r.path.begin(), r.path.end());
  return r;
}

}  // namespace

PathResult max_weight_path_hashed(const WeightLaw& law, const RngStream& key, std::int64_t n) {
  if (n < 1) throw InvalidParameter("max_weight_path: n must be positive");
  std::vector<double> W(n + 1, 0.0), predw(n + 1, 0.0);
  std::vector<std::int64_t> pred(n + 1, 0);
  for (std::int64_t j = 1; j <= n; ++j) {
    double best = -INFINITY;
    for (std::int64_t i = 0; i < j; ++i) {
      double u = hashed_weight(law, key, i, j);
      if (W[i] + u > best) {
        best = W[i] + u;
        pred[j] = i;
        predw[j] = u;
      }
    }
    W[j] = best;
  }
  return trace(n, W, pred, predw);
}

PathResult max_weight_path_pareto(double s, std::int64_t n, RngStream& rng) {
  if (!(s > 0.0)) throw InvalidParameter("max_weight_path: tail index must be positive");
  if (n < 1) throw InvalidParameter("max_weight_path: n must be positive");
  const double inv_s = 1.0 / s;
  auto pareto = [&](double scale) { return scale * std::exp(-std::log(rng.uniform()) * inv_s); };
  std::vector<double> W(n + 1, 0.0), predw(n + 1, 0.0);
  std::vector<std::int64_t> pred(n + 1, 0);
  for (std::int64_t j = 1; j <= n; ++j) {
    double u0 = pareto(1.0);
    double best = W[j - 1] + u0;
    pred[j] = j - 1;
    predw[j] = u0;
    auto consider = [&](std::int64_t i, double u) {
      if (W[i] + u > best) {
        best = W[i] + u;
        pred[j] = i;
        predw[j] = u;
      }
    };
    // W is increasing, so within a block [lo, hi] an edge can only win if its
    // weight exceeds best - W[hi]
    std::int64_t hi = j - 2, len = 1;
    while (hi >= 0) {
      std::int64_t lo = std::max<std::int64_t>(0, hi - len + 1);
      double tau = best - W[hi];
      if (tau <= 1.0) {
        for (std::int64_t i = hi; i >= lo; --i) consider(i, pareto(1.0));
      } else {
        double q = std::exp(-s * std::log(tau));
        std::int64_t i = hi + 1;
        for (;;) {
          i -= harness::sample_geometric(q, rng);
          if (i < lo) break;
          consider(i, pareto(tau));
        }
      }
      hi = lo - 1;
      len *= 2;
    }
    W[j] = best;
  }
  return trace(n, W, pred, predw);
}

HeavyEdgeReport heavy_edge_exponent(const WeightLaw& law, const std::vector<std::int64_t>& n_grid, std::size_t reps,
                                    std::uint64_t seed, unsigned threads) {
  if (!law.continuous()) throw InvalidParameter("heavy_edge_exponent: atomic weights, geodesic not unique");
  if (!(law.s > 2.0)) throw InvalidParameter("heavy_edge_exponent: tail index must exceed 2");
  if (n_grid.size() < 2) throw InvalidParameter("heavy_edge_exponent: need at least two grid points");
  HeavyEdgeReport r;
  r.target = 1.0 / (law.s - 1.0);
  std::vector<double> xs, ys;
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    std::int64_t n = n_grid[g];
    auto task = [&](RngStream& rng) { return std::log(max_weight_path_pareto(law.s, n, rng).heaviest); };
    auto sum = harness::run_replicas(task, reps, harness::mix64(seed ^ static_cast<std::uint64_t>(n)), threads);
    r.n.push_back(n);
    r.mean_log_h.push_back(sum.mean);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(sum.mean);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  r.slope = sxy / sxx;
  return r;
}

double pareto_bn(double s, std::int64_t n) {
  double N = 0.5 * static_cast<double>(n) * static_cast<double>(n + 1);
  return std::pow(N, 1.0 / s);
}

std::vector<double> heavy_tail_scaling(double s, std::int64_t n, std::size_t reps, std::uint64_t seed,
                                       unsigned threads) {
  if (!(s > 0.0) || !(s < 2.0)) throw InvalidParameter("heavy_tail_scaling: tail index must lie in (0,2)");
  if (n < 1) throw InvalidParameter("heavy_tail_scaling: n must be positive");
  const double bn = pareto_bn(s, n);
  WeightLaw law = WeightLaw::pareto(s);
  auto task = [&](RngStream& rng) {
    if (n <= 64) return max_weight_path_hashed(law, RngStream(rng(), 0), n).weight / bn;
    return max_weight_path_pareto(s, n, rng).weight / bn;
  };
  return harness::replica_values(task, reps, seed, threads);
}

}  // namespace lpp::weighted
