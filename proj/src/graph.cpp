#include "lpp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "lpp/errors.hpp"

namespace lpp::graph {

using harness::RngStream;

EdgeLaw EdgeLaw::charges(const ChargeLaw& f) {
  EdgeLaw e;
  e.law_ = f;
  return e;
}

EdgeLaw EdgeLaw::bernoulli(double p) { return charges(ChargeLaw::bernoulli(p)); }
EdgeLaw EdgeLaw::two_atom(double p, double x) { return charges(ChargeLaw::two_atom(p, x)); }
EdgeLaw EdgeLaw::continuous(const ChargeLaw& f) {
  if (f.atom_at_one()) throw InvalidParameter("continuous edge law needs an atomless charge law");
  return charges(f);
}

EdgeLaw EdgeLaw::distance_dependent(Distance p_of_d) {
  if (!p_of_d) throw InvalidParameter("distance-dependent law needs a probability sequence");
  EdgeLaw e;
  e.law_ = ChargeLaw::bernoulli(1.0);
  e.dist_ = std::move(p_of_d);
  return e;
}

bool EdgeLaw::unit_or_absent() const {
  if (dist_) return true;
  return law_.kind() == ChargeLaw::Kind::Bernoulli || law_.kind() == ChargeLaw::Kind::One;
}

double EdgeLaw::presence(std::int64_t d) const {
  if (dist_) return dist_(d);
  return law_.mass_at_least(-1e300);
}

ExtReal EdgeLaw::charge_from_uniform(std::int64_t d, double u) const {
  if (dist_) return u < dist_(d) ? ExtReal(1.0) : ExtReal::neg_inf();
  return law_.from_uniform(u);
}

GraphWindow::GraphWindow(std::int64_t n, EdgeLaw law, RngStream key) : n_(n), law_(std::move(law)), key_(key) {
  if (n < 1) throw InvalidParameter("graph window: n must be at least 1");
}

GraphWindow GraphWindow::from_charges(std::int64_t n, std::vector<ExtReal> packed) {
  if (n < 0) throw InvalidParameter("graph window: negative size");
  if (packed.size() != static_cast<std::size_t>(n * (n + 1) / 2))
    throw InvalidParameter("graph window: packed charges must cover every pair");
  GraphWindow w;
  w.n_ = n;
  w.packed_ = std::move(packed);
  return w;
}

GraphWindow GraphWindow::from_edges(std::int64_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  std::vector<ExtReal> packed(static_cast<std::size_t>(n * (n + 1) / 2), ExtReal::neg_inf());
  for (auto [i, j] : edges) {
    if (i < 0 || i >= j || j > n) throw InvalidParameter("graph window: edge out of range");
    packed[index(i, j)] = ExtReal(1.0);
  }
  return from_charges(n, std::move(packed));
}

ExtReal GraphWindow::charge(std::int64_t i, std::int64_t j) const {
  if (!packed_.empty() || n_ == 0) return packed_[index(i, j)];
  return law_.charge_from_uniform(j - i, key_.uniform_at(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
}

double GraphWindow::max_charge() const {
  if (packed_.empty() && n_ > 0) return 1.0;
  double m = -INFINITY;
  for (auto c : packed_)
    if (c.finite()) m = std::max(m, c.value());
  return m;
}

bool GraphWindow::unit_or_absent() const {
  if (packed_.empty() && n_ > 0) return law_.unit_or_absent();
  for (auto c : packed_)
    if (c.finite() && c.value() != 1.0) return false;
  return true;
}

GraphWindow GraphWindow::materialized() const {
  std::vector<ExtReal> packed(static_cast<std::size_t>(n_ * (n_ + 1) / 2));
  for (std::int64_t j = 1; j <= n_; ++j)
    for (std::int64_t i = 0; i < j; ++i) packed[index(i, j)] = charge(i, j);
  return from_charges(n_, std::move(packed));
}

GraphWindow GraphWindow::with_charge(std::int64_t i, std::int64_t j, ExtReal c) const {
  GraphWindow w = packed_.empty() ? materialized() : *this;
  w.packed_[index(i, j)] = c;
  return w;
}

GraphWindow sample_window(std::int64_t n, const EdgeLaw& law, RngStream& rng) {
  return GraphWindow(n, law, RngStream(rng(), 0));
}

std::vector<std::int64_t> longest_path_profile(const GraphWindow& w) {
  if (!w.unit_or_absent()) throw InvalidParameter("longest_path_profile: charges must be 1 or -inf");
  const std::int64_t n = w.n();
  std::vector<std::int64_t> L(n + 1, 0), pm(n + 1, 0);
  for (std::int64_t j = 1; j <= n; ++j) {
    std::int64_t best = 0;
    for (std::int64_t i = j - 1; i >= 0; --i) {
      if (pm[i] + 1 <= best) break;
      if (L[i] + 1 > best && w.present(i, j)) best = L[i] + 1;
    }
    L[j] = best;
    pm[j] = std::max(pm[j - 1], best);
  }
  return L;
}

std::vector<ExtReal> max_charge_profile(const GraphWindow& w, std::int64_t from) {
  const std::int64_t n = w.n();
  if (from < 0 || from > n) throw InvalidParameter("max_charge_profile: start outside window");
  const double cmax = w.max_charge();
  std::vector<ExtReal> W(n + 1, ExtReal::neg_inf()), pm(n + 1, ExtReal::neg_inf());
  W[from] = 0.0;
  pm[from] = 0.0;
  for (std::int64_t j = from + 1; j <= n; ++j) {
    ExtReal best = ExtReal::neg_inf();
    for (std::int64_t i = j - 1; i >= from; --i) {
      // no edge carries more than cmax
      if (pm[i].is_neg_inf() || (best.finite() && pm[i].value() + cmax <= best.value())) break;
      if (W[i].is_neg_inf()) continue;
      best = max(best, W[i] + w.charge(i, j));
    }
    W[j] = best;
    pm[j] = max(pm[j - 1], best);
  }
  return W;
}

Geodesic geodesic(const GraphWindow& w) {
  const std::int64_t n = w.n();
  std::vector<ExtReal> W(n + 1, ExtReal::neg_inf());
  std::vector<std::int64_t> pred(n + 1, -1);
  W[0] = 0.0;
  for (std::int64_t j = 1; j <= n; ++j)
    for (std::int64_t i = 0; i < j; ++i) {
      if (W[i].is_neg_inf()) continue;
      ExtReal c = W[i] + w.charge(i, j);
      if (c > W[j]) {
        W[j] = c;
        pred[j] = i;
      }
    }
  Geodesic g;
  g.weight = W[n];
  if (W[n].is_neg_inf()) return g;
  for (std::int64_t v = n; v >= 0; v = pred[v]) {
    g.path.push_back(v);
    if (v == 0) break;
  }
  std::reverse(g.path.begin(), g.path.end());
  return g;
}

std::int64_t longest_path_stream(double p, std::int64_t n, RngStream& rng) {
  if (!(p >= 0.0) || p > 1.0) throw InvalidParameter("longest_path_stream: p must lie in [0,1]");
  if (n < 0) throw InvalidParameter("longest_path_stream: negative size");
  if (p == 0.0) return 0;
  std::vector<std::int32_t> L(static_cast<std::size_t>(n) + 1, 0), pm(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t j = 1; j <= n; ++j) {
    std::int32_t best = 0;
    std::int64_t i = j;
    for (;;) {
      i -= harness::sample_geometric(p, rng);
      if (i < 0 || pm[i] + 1 <= best) break;
      best = std::max(best, L[i] + 1);
    }
    L[j] = best;
    pm[j] = std::max(pm[j - 1], best);
  }
  return pm[n];
}

SkeletonReport skeleton_points(const GraphWindow& w) {
  const std::int64_t n = w.n();
  if (!w.unit_or_absent()) throw InvalidParameter("skeleton_points: needs a Bernoulli-type window");
  // maxpred[j]: largest predecessor of j; minsucc[i]: smallest successor of i
  std::vector<std::int64_t> maxpred(n + 1, -1), minsucc(n + 1, n + 1);
  for (std::int64_t j = 1; j <= n; ++j)
    for (std::int64_t i = j - 1; i >= 0; --i)
      if (w.present(i, j)) {
        maxpred[j] = i;
        break;
      }
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j <= n; ++j)
      if (w.present(i, j)) {
        minsucc[i] = j;
        break;
      }
  // every later vertex has a predecessor in [v, w)
  std::vector<std::int64_t> suf(n + 2, n + 1);
  for (std::int64_t v = n; v >= 1; --v) suf[v] = std::min(suf[v + 1], maxpred[v]);
  SkeletonReport r;
  std::int64_t pre = 0;  // max over u < v of minsucc[u]
  for (std::int64_t v = 0; v <= n; ++v) {
    bool from_left = pre <= v;
    bool to_right = v == n || suf[v + 1] >= v;
    if (from_left && to_right) r.points.push_back(v);
    if (v < n) pre = std::max(pre, minsucc[v]);
  }
  for (std::size_t k = 1; k < r.points.size(); ++k) r.gaps.push_back(r.points[k] - r.points[k - 1]);
  return r;
}

SkeletonReport trim(const SkeletonReport& r, std::int64_t n, std::int64_t margin) {
  SkeletonReport t;
  for (auto v : r.points)
    if (v >= margin && v <= n - margin) t.points.push_back(v);
  for (std::size_t k = 1; k < t.points.size(); ++k) t.gaps.push_back(t.points[k] - t.points[k - 1]);
  return t;
}

bool inter_skeleton_event(const GraphWindow& w) {
  const std::int64_t n = w.n();
  if (n > 63) throw InvalidParameter("inter_skeleton_event: window too large");
  std::vector<std::uint64_t> reach(n + 1, 0);
  for (std::int64_t i = n; i >= 0; --i) {
    reach[i] = std::uint64_t{1} << i;
    for (std::int64_t j = i + 1; j <= n; ++j)
      if (w.present(i, j)) reach[i] |= reach[j];
  }
  const std::uint64_t all = n == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n + 1)) - 1);
  if (reach[0] != all) return false;
  for (std::int64_t i = 0; i < n; ++i)
    if (!((reach[i] >> n) & 1)) return false;
  for (std::int64_t j = 1; j < n; ++j) {
    bool found = false;
    for (std::int64_t i = 1; i < n && !found; ++i) {
      if (i == j) continue;
      std::int64_t a = std::min(i, j), b = std::max(i, j);
      if (!((reach[a] >> b) & 1)) found = true;
    }
    if (!found) return false;
  }
  return true;
}

std::vector<harness::MonteCarloSummary> skeleton_gap_pmf(double p, int n_max, std::size_t reps, std::uint64_t seed,
                                                         unsigned threads) {
  if (!(p > 0.0) || !(p < 1.0)) throw InvalidParameter("skeleton_gap_pmf: p must lie in (0,1)");
  if (n_max < 1 || n_max > 63) throw InvalidParameter("skeleton_gap_pmf: n_max must lie in [1,63]");
  EdgeLaw law = EdgeLaw::bernoulli(p);
  std::vector<harness::MonteCarloSummary> out;
  for (int k = 1; k <= n_max; ++k) {
    auto task = [&](RngStream& rng) {
      GraphWindow w = sample_window(k, law, rng);
      return inter_skeleton_event(w) ? 1.0 : 0.0;
    };
    out.push_back(harness::run_replicas(task, reps, harness::mix64(seed + static_cast<std::uint64_t>(k)), threads));
  }
  return out;
}

}  // namespace lpp::graph
