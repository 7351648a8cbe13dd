#include "lpp/mgs.hpp"

#include <algorithm>
#include <cmath>

#include "lpp/errors.hpp"

namespace lpp::mgs {

using harness::RngStream;

PointMeasure PointMeasure::dirac(double x) {
  PointMeasure nu;
  nu.add(x);
  return nu;
}

PointMeasure PointMeasure::from_locations(std::vector<double> xs) {
  PointMeasure nu;
  for (double x : xs) nu.add(x);
  return nu;
}

double PointMeasure::at(std::size_t k) const {
  if (k < 1 || k > size()) throw InvalidParameter("point measure: index outside 1..|nu|");
  return k <= locs_.size() ? locs_[k - 1] : -INFINITY;
}

void PointMeasure::add(double x) {
  if (std::isnan(x) || (std::isinf(x) && x > 0)) throw InvalidParameter("point measure: location must be < +inf");
  if (std::isinf(x)) {
    ++neg_inf_;
    return;
  }
  locs_.insert(std::upper_bound(locs_.begin(), locs_.end(), x, std::greater<>()), x);
}

PointMeasure PointMeasure::recentered() const {
  if (locs_.empty()) throw InvalidParameter("recentering needs a finite particle");
  PointMeasure nu = *this;
  const double top = locs_.front();
  for (double& x : nu.locs_) x -= top;
  return nu;
}

double m_value(const PointMeasure& nu, const Column& w) {
  if (nu.empty()) throw InvalidParameter("m_value: empty measure");
  const auto& x = nu.finite_locations();
  double best = -INFINITY;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] + 1.0 < best) break;
    best = std::max(best, x[k] + w(k + 1));
  }
  return best;
}

PointMeasure mgs_step(PointMeasure nu, const Column& w) {
  double m = m_value(nu, w);
  nu.add(m);
  return nu;
}

double default_ell(const ChargeLaw& F) { return F.atom_at_one() ? 0.0 : 0.7; }

void check_ell(const ChargeLaw& F, double ell) {
  if (!(ell >= 0.0) || !(ell < 1.0)) throw InvalidParameter("perfect sampling: ell must lie in [0,1)");
  if (!(F.mass_at_least(1.0 - ell) > 0.0)) throw InvalidParameter("perfect sampling: F([1-ell,1]) must be positive");
  if (!(F.mass_at_least(ell) > 0.0)) throw InvalidParameter("perfect sampling: F([ell,1]) must be positive");
}

PerfectSample perfect_sample_keyed(const Quantile& q, double ell, const RngStream& key) {
  auto w = [&](std::int64_t t, std::int64_t j) {
    return q(key.uniform_at(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(j)));
  };
  const double hi = 1.0 - ell;
  // backward search; J = distance from t to the earliest admissible T*
  std::int64_t t = 0, J = 1;
  // g(t) = first j with w_j(t) >= 1 - ell; only J = max(J, g(t)) matters
  auto adjust = [&] {
    std::int64_t g = 1;
    while (w(t, g) < hi) {
      ++g;
      if (g > kMaxDepth) throw ResourceError("perfect_sample: column budget exceeded");
    }
    J = std::max(J, g);
  };
  for (;;) {
    adjust();
    while (J > 1) {
      --J;
      --t;
      if (-t > kMaxDepth) throw ResourceError("perfect_sample: time budget exceeded");
      adjust();
    }
    --t;
    if (-t > kMaxDepth) throw ResourceError("perfect_sample: time budget exceeded");
    if (w(t, 1) >= ell) break;
    J = 1;
  }
  PerfectSample out;
  out.t_star = t;
  PointMeasure nu = PointMeasure::dirac(0.0);
  for (std::int64_t s = t + 1; s <= 0; ++s) {
    double m = m_value(nu, [&](std::size_t k) { return w(s, static_cast<std::int64_t>(k)); });
    if (s == 0) {
      out.m_bar = m - nu.top();
      break;
    }
    nu.add(m);
  }
  return out;
}

PerfectSample perfect_sample(const ChargeLaw& F, double ell, RngStream& rng) {
  check_ell(F, ell);
  RngStream key(rng(), 0);
  return perfect_sample_keyed([&](double u) { return F.from_uniform(u).as_double(); }, ell, key);
}

CFReport estimate_CF(const ChargeLaw& F, double ell, std::size_t N, std::uint64_t seed, unsigned threads) {
  check_ell(F, ell);
  if (N < 2) throw InvalidParameter("estimate_CF: need at least 2 samples");
  std::vector<double> tsq(N);
  auto vals = harness::replica_values(
      [&](RngStream& rng) {
        auto s = perfect_sample(F, ell, rng);
        tsq[rng.stream_index()] = static_cast<double>(s.t_star) * static_cast<double>(s.t_star);
        return std::max(s.m_bar, 0.0);
      },
      N, seed, threads);
  CFReport r;
  r.c = harness::summarize(vals);
  r.tstar_sq = harness::summarize(tsq);
  for (double x : tsq) r.max_depth = std::max(r.max_depth, static_cast<std::int64_t>(std::llround(std::sqrt(x))));
  return r;
}

std::vector<ComplexityRow> complexity_profile(const ChargeLaw& F, const std::vector<double>& ell_grid, std::size_t N,
                                              std::uint64_t seed, unsigned threads) {
  std::vector<ComplexityRow> rows;
  for (std::size_t k = 0; k < ell_grid.size(); ++k) {
    auto r = estimate_CF(F, ell_grid[k], N, harness::mix64(seed + k), threads);
    rows.push_back({ell_grid[k], r.tstar_sq});
  }
  return rows;
}

double glynn_rhee_sample(const GlynnRhee& gr, RngStream& rng) {
  if (!(gr.ratio >= 0.0) || !(gr.ratio < 1.0)) throw InvalidParameter("glynn_rhee: ratio must lie in [0,1)");
  if (!(gr.sup > 0.0)) throw InvalidParameter("glynn_rhee: esssup must be positive");
  if (!gr.quantile) throw InvalidParameter("glynn_rhee: missing quantile function");
  std::int64_t nu = gr.ratio == 0.0 ? 1 : harness::sample_geometric(1.0 - gr.ratio, rng);
  const double p_nu = (1.0 - gr.ratio) * std::pow(gr.ratio, static_cast<double>(nu - 1));
  RngStream key(rng(), 0);
  // X_n = s_n * m_bar(F_n / s_n)^+ with F_n = G ^ n and s_n = min(n, esssup G)
  auto X = [&](std::int64_t n) {
    if (n == 0) return 0.0;
    const double cap = static_cast<double>(n), s = std::min(cap, gr.sup);
    auto q = [&](double u) { return std::min(gr.quantile(u), cap) / s; };
    return s * std::max(perfect_sample_keyed(q, gr.ell, key).m_bar, 0.0);
  };
  return (X(nu) - X(nu - 1)) / p_nu;
}

harness::MonteCarloSummary glynn_rhee_estimate(const GlynnRhee& gr, std::size_t N, std::uint64_t seed,
                                               unsigned threads) {
  return harness::run_replicas([&](RngStream& rng) { return glynn_rhee_sample(gr, rng); }, N, seed, threads);
}

}  // namespace lpp::mgs
