#include "lpp/pwit.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "lpp/errors.hpp"
#include "lpp/graph.hpp"

namespace lpp::pwit {

using harness::RngStream;

PwitRun simulate_pwit(double t_max, const std::vector<double>& sample_times, RngStream& rng,
                      std::int64_t population_cap) {
  if (!(t_max >= 0.0)) throw InvalidParameter("simulate_pwit: t_max must be nonnegative");
  std::vector<double> times = sample_times.empty() ? std::vector<double>{t_max} : sample_times;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0) || times[k] > t_max) throw InvalidParameter("simulate_pwit: sample time outside [0, t_max]");
    if (k && times[k] < times[k - 1]) throw InvalidParameter("simulate_pwit: sample times must be sorted");
  }
  PwitRun run;
  run.M.push_back(0.0);
  std::vector<std::int32_t> gen{0};
  std::vector<std::int64_t> Z{1};
  std::size_t next_sample = 0;
  auto snapshot = [&](double t) {
    PwitSnapshot s;
    s.t = t;
    s.Z = Z;
    s.V = static_cast<std::int64_t>(gen.size());
    s.F = static_cast<int>(Z.size()) - 1;
    run.snapshots.push_back(std::move(s));
  };
  // all particles reproduce at rate 1: total rate |V|, parent uniform
  double t = 0.0;
  for (;;) {
    t += harness::sample_exponential(static_cast<double>(gen.size()), rng);
    while (next_sample < times.size() && times[next_sample] < t) snapshot(times[next_sample++]);
    if (t > t_max) break;
    if (static_cast<std::int64_t>(gen.size()) >= population_cap)
      throw ResourceError("simulate_pwit: population cap exceeded");
    std::size_t parent = static_cast<std::size_t>(rng() % gen.size());
    std::int32_t g = gen[parent] + 1;
    gen.push_back(g);
    if (static_cast<std::size_t>(g) == Z.size()) {
      Z.push_back(0);
      run.M.push_back(t);
    }
    ++Z[static_cast<std::size_t>(g)];
  }
  return run;
}

int front_from_minima(const std::vector<double>& M, double t) {
  int f = -1;
  for (std::size_t l = 0; l < M.size(); ++l)
    if (M[l] <= t) f = static_cast<int>(l);
  return f;
}

BrwResult brw_min_displacement(std::int64_t n, std::int64_t beam, RngStream& rng) {
  if (n < 1) throw InvalidParameter("brw_min_displacement: n must be positive");
  if (beam < 1) throw InvalidParameter("brw_min_displacement: beam must be positive");
  BrwResult r;
  std::vector<double> cur{0.0}, next;
  using Item = std::pair<double, std::size_t>;  // next child position, parent
  for (std::int64_t l = 1; l <= n; ++l) {
    next.clear();
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::size_t entered = 0;
    // parents are sorted; a parent joins the heap once the running minimum passes it
    auto admit = [&](double bound) {
      while (entered < cur.size() && cur[entered] <= bound) {
        heap.emplace(cur[entered] + harness::sample_exponential(1.0, rng), entered);
        ++entered;
      }
    };
    admit(cur[0]);
    while (static_cast<std::int64_t>(next.size()) < beam) {
      admit(heap.top().first);
      auto [x, k] = heap.top();
      heap.pop();
      next.push_back(x);
      heap.emplace(x + harness::sample_exponential(1.0, rng), k);
    }
    cur.swap(next);
    r.minima.push_back(cur.front());
  }
  r.M_n = r.minima.back();
  return r;
}

double CoupledTrajectory::growth_rate() const {
  if (kappa.size() < 2) return 0.0;
  return static_cast<double>(front.back()) / static_cast<double>(kappa.back() - kappa.front());
}

CoupledTrajectory coupled_tree(double p, std::int64_t steps, RngStream& rng) {
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("coupled_tree: p must lie in (0,1]");
  if (steps < 0) throw InvalidParameter("coupled_tree: negative step count");
  const double q = 1.0 - p;
  CoupledTrajectory tr;
  tr.kappa.push_back(0);
  tr.time.push_back(0.0);
  tr.parent.push_back(-1);
  tr.L.push_back(0);
  tr.front.push_back(0);
  std::vector<std::int64_t> ranked{0};  // by L descending, newest first on ties
  double qi = 1.0;                      // q^i
  for (std::int64_t i = 1; i <= steps; ++i) {
    qi *= q;
    const double hit = 1.0 - qi;  // 1 - q^i
    tr.kappa.push_back(tr.kappa.back() + harness::sample_geometric(hit, rng));
    tr.time.push_back(tr.time.back() + harness::sample_exponential(q == 0.0 ? 1.0 : hit / p, rng));
    std::int64_t r = 1;
    if (q > 0.0) {
      double u = rng.uniform();
      r = 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u * hit) / std::log(q)));
      r = std::clamp<std::int64_t>(r, 1, i);
    }
    std::int64_t par = ranked[static_cast<std::size_t>(r - 1)];
    std::int64_t Li = tr.L[static_cast<std::size_t>(par)] + 1;
    tr.parent.push_back(par);
    tr.L.push_back(Li);
    tr.front.push_back(std::max(tr.front.back(), Li));
    auto pos = std::partition_point(ranked.begin(), ranked.end(),
                                    [&](std::int64_t v) { return tr.L[static_cast<std::size_t>(v)] > Li; });
    ranked.insert(pos, i);
  }
  return tr;
}

std::int64_t ell_n(std::int64_t n, double p) {
  if (n < 1) throw InvalidParameter("ell_n: n must be positive");
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("ell_n: p must lie in (0,1]");
  const double ln = std::lgamma(static_cast<double>(n) + 1.0), lp = std::log(p);
  std::int64_t best = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    double v = ln - std::lgamma(static_cast<double>(k) + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) +
               static_cast<double>(k) * lp;
    if (v >= 0.0) best = k;
  }
  return best;
}

double A_gamma(double gamma) {
  if (!(gamma > 0.0)) throw InvalidParameter("A_gamma: gamma must be positive");
  const double target = 1.0 / (std::exp(1.0) * gamma);
  double lo = 1.0, hi = 2.0;
  while (hi * std::log(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (mid * std::log(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double longest_at_least_poisson(std::int64_t n, double p, int m) {
  if (m < 1) throw InvalidParameter("longest_at_least_poisson: m must be positive");
  double lb = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(m) + 2.0) -
              std::lgamma(static_cast<double>(n - m)) + m * std::log(p);
  return -std::expm1(-std::exp(lb));
}

SparseReport sparse_longest(std::int64_t n, double p, std::size_t reps, std::uint64_t seed, unsigned threads) {
  if (n < 1) throw InvalidParameter("sparse_longest: n must be positive");
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("sparse_longest: p must lie in (0,1]");
  if (reps < 1) throw InvalidParameter("sparse_longest: need at least one replica");
  auto Ls = harness::replica_values(
      [&](RngStream& rng) { return static_cast<double>(graph::longest_path_stream(p, n - 1, rng)); }, reps, seed,
      threads);
  SparseReport r;
  for (double x : Ls) {
    auto k = static_cast<std::size_t>(x);
    if (k >= r.pmf.size()) r.pmf.resize(k + 1, 0.0);
    r.pmf[k] += 1.0;
    r.mean += x;
  }
  for (double& v : r.pmf) v /= static_cast<double>(reps);
  r.mean /= static_cast<double>(reps);
  r.ell_n = ell_n(n, p);
  return r;
}

namespace {

std::int64_t shortest_once(std::int64_t n, double p, RngStream& rng) {
  // vertices 0..n-1
  RngStream key(rng(), 0);
  const std::int64_t last = n - 1;
  std::vector<std::int64_t> dist(static_cast<std::size_t>(n), -1);
  dist[0] = 0;
  for (std::int64_t j = 1; j <= last; ++j) {
    std::int64_t best = -1;
    for (std::int64_t i = 0; i < j; ++i) {
      auto di = dist[static_cast<std::size_t>(i)];
      if (di < 0 || (best >= 0 && di + 1 >= best)) continue;
      if (key.uniform_at(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)) < p) best = di + 1;
    }
    dist[static_cast<std::size_t>(j)] = best;
  }
  return dist[static_cast<std::size_t>(last)];
}

}  // namespace

ShortestReport shortest_path(std::int64_t n, double p, std::size_t reps, std::uint64_t seed, unsigned threads) {
  if (n < 2) throw InvalidParameter("shortest_path: need at least two vertices");
  if (!(p >= 0.0) || p > 1.0) throw InvalidParameter("shortest_path: p must lie in [0,1]");
  if (reps < 1) throw InvalidParameter("shortest_path: need at least one replica");
  auto S = harness::replica_values([&](RngStream& rng) { return static_cast<double>(shortest_once(n, p, rng)); },
                                   reps, seed, threads);
  ShortestReport r;
  r.pmf.assign(static_cast<std::size_t>(n), 0.0);
  for (double s : S) {
    if (s < 0) r.p_inf += 1.0;
    else r.pmf[static_cast<std::size_t>(s)] += 1.0;
  }
  for (double& v : r.pmf) v /= static_cast<double>(reps);
  r.p_inf /= static_cast<double>(reps);
  return r;
}

double shortest_p1(double p) { return p; }

double shortest_p2(std::int64_t n, double p) {
  return (1.0 - p) * (1.0 - std::pow(1.0 - p * p, static_cast<double>(n - 2)));
}

}  // namespace lpp::pwit
