#include "lpp/charged.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lpp/errors.hpp"
#include "lpp/graph.hpp"

namespace lpp::charged {

using harness::RngStream;
using Edge = std::pair<std::int64_t, std::int64_t>;

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidParameter("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Rational Rational::parse(const std::string& s) {
  auto to_int = [&](const std::string& t) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw InvalidParameter("not a rational number: " + s);
    }
    if (used != t.size()) throw InvalidParameter("not a rational number: " + s);
    return static_cast<std::int64_t>(v);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) return make(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw InvalidParameter("not a rational number: " + s);
    std::int64_t den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    std::string whole = s.substr(0, dot);
    bool neg = !whole.empty() && whole[0] == '-';
    std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : to_int(whole);
    std::int64_t f = to_int(frac);
    return make((neg ? -1 : 1) * (std::llabs(w) * den + f), den);
  }
  return make(to_int(s), 1);
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

bool WitnessGraph::has_edge(std::int64_t i, std::int64_t j) const {
  return std::binary_search(blue_edges.begin(), blue_edges.end(), Edge{i, j});
}

WitnessGraph make_graph(std::int64_t n, std::vector<Edge> edges) {
  if (n < 1) throw InvalidParameter("witness graph: n must be positive");
  for (auto [i, j] : edges)
    if (i < 0 || i >= j || j > n) throw InvalidParameter("witness graph: edge out of range");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  WitnessGraph g;
  g.n = n;
  g.blue_edges = std::move(edges);
  return g;
}

bool is_balanced(const std::vector<int>& v, int n) {
  const auto N = static_cast<std::int64_t>(v.size());
  if (N == 0 || v[0] != 1) return false;
  std::vector<std::int64_t> pre(v.size() + 1, 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0 && v[k] != 1) return false;
    pre[k + 1] = pre[k] + v[k];
  }
  for (std::int64_t i = 0; i < N; ++i) {
    if (pre[N] - pre[i] != (N - i) * n / N) return false;
    for (std::int64_t j = i + 1; j <= N; ++j) {
      std::int64_t s = pre[j] - pre[i], lo = (j - i) * n / N, hi = ((j - i) * n + N - 1) / N;
      if (s != lo && s != hi) return false;
    }
  }
  return true;
}

std::vector<int> balanced_sequence(int N, int n) {
  if (n < 1 || N < n) throw InvalidParameter("balanced_sequence: need 1 <= n <= N");
  // v_k = floor(k n/N + theta) - floor((k-1) n/N + theta), theta = a/(2N)
  for (std::int64_t a = 0; a < 2 * static_cast<std::int64_t>(N); ++a) {
    std::vector<int> v(static_cast<std::size_t>(N));
    for (std::int64_t k = 1; k <= N; ++k)
      v[static_cast<std::size_t>(k - 1)] =
          static_cast<int>((2 * k * n + a) / (2 * N) - (2 * (k - 1) * n + a) / (2 * N));
    if (is_balanced(v, n)) return v;
  }
  throw InternalError("balanced_sequence: no offset produced a balanced sequence");
}

WitnessGraph build_witness(const Rational& x) {
  std::vector<Edge> E;
  WitnessGraph g;
  if (x.num == 0) {
    g = make_graph(3, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    g.family = "a";
    return g;
  }
  if (x.num == 1 && x.den >= 2) {
    const std::int64_t k = x.den, n = k + 2;
    E = {{0, 1}, {1, k + 1}, {k + 1, n}};
    for (std::int64_t j = 2; j <= k + 1; ++j) E.push_back({0, j});
    for (std::int64_t j = 1; j <= k; ++j) E.push_back({j, n});
    g = make_graph(n, E);
    g.family = "b";
    return g;
  }
  if (x.num < 0 && x.den == 1) {
    const std::int64_t l = -x.num, n = 2 * l + 3;
    for (std::int64_t i = 0; i <= l; ++i) E.push_back({i, i + 1});
    for (std::int64_t i = l + 2; i < n; ++i) E.push_back({i, i + 1});
    E.push_back({0, l + 2});
    E.push_back({l + 1, n});
    g = make_graph(n, E);
    g.family = "c";
    return g;
  }
  if (x.num < 0) {
    // x = -l + s/t
    const std::int64_t t = x.den, l = (-x.num + t - 1) / t, s = x.num + l * t;
    if (t > 1000000) throw InvalidParameter("build_witness: denominator too large");
    auto v = balanced_sequence(static_cast<int>(t), static_cast<int>(t - s));
    const std::int64_t m = t * (l + 3) - (s + 1), n = 3 * m;
    std::vector<std::int64_t> a{m, m + l + 1 + v[0]};
    for (std::int64_t j = 2; j <= t; ++j) a.push_back(a.back() + l + 2 + v[static_cast<std::size_t>(j - 1)]);
    if (a.back() != 2 * m) throw InternalError("build_witness: marks do not end at 2m");
    for (std::int64_t i = 0; i < m; ++i) E.push_back({i, i + 1});
    for (std::int64_t i = 2 * m; i < n; ++i) E.push_back({i, i + 1});
    for (std::int64_t j = 1; j <= t; ++j) {
      const auto lo = a[static_cast<std::size_t>(j - 1)], hi = a[static_cast<std::size_t>(j)];
      E.push_back({lo, hi});
      std::int64_t start = lo + 1;
      if (j > 1) {
        E.push_back({lo + 1, n});
        start = lo + 2;
      }
      E.push_back({0, start});
      for (std::int64_t i = start; i + 1 < hi; ++i) E.push_back({i, i + 1});
      E.push_back({hi - 1, j < t ? hi + 1 : hi});
    }
    g = make_graph(n, E);
    g.family = "d";
    g.marks = a;
    return g;
  }
  throw InvalidParameter("build_witness: no construction for x = " + x.str());
}

namespace {

// reach[i] as a bitset over 0..n
std::vector<std::vector<std::uint64_t>> reachability(const WitnessGraph& g) {
  const auto n = g.n;
  const std::size_t words = static_cast<std::size_t>(n / 64 + 1);
  std::vector<std::vector<std::uint64_t>> reach(static_cast<std::size_t>(n + 1), std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(n + 1));
  for (auto [i, j] : g.blue_edges) out[static_cast<std::size_t>(i)].push_back(j);
  for (std::int64_t i = n; i >= 0; --i) {
    auto& r = reach[static_cast<std::size_t>(i)];
    r[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
    for (auto j : out[static_cast<std::size_t>(i)])
      for (std::size_t w = 0; w < words; ++w) r[w] |= reach[static_cast<std::size_t>(j)][w];
  }
  return reach;
}

bool test(const std::vector<std::uint64_t>& r, std::int64_t j) {
  return (r[static_cast<std::size_t>(j / 64)] >> (j % 64)) & 1;
}

struct Best {
  __int128 value = 0;
  bool any = false;
  std::vector<std::int64_t> reds;
  std::vector<std::vector<std::int64_t>> paths;  // one per red count

  void offer(__int128 v, std::int64_t red, const std::vector<std::int64_t>& path) {
    if (!any || v > value) {
      any = true;
      value = v;
      reds = {red};
      paths = {path};
    } else if (v == value && std::find(reds.begin(), reds.end(), red) == reds.end()) {
      reds.push_back(red);
      paths.push_back(path);
    }
  }
};

void enumerate(const WitnessGraph& g, const Rational& x, std::vector<std::int64_t>& path, std::int64_t blue,
               std::int64_t red, Best& best, std::vector<std::vector<std::int64_t>>* all, __int128* target) {
  const std::int64_t v = path.back();
  if (v == g.n) {
    __int128 val = static_cast<__int128>(x.den) * blue + static_cast<__int128>(x.num) * red;
    if (all) {
      if (val == *target) all->push_back(path);
    } else {
      best.offer(val, red, path);
    }
    return;
  }
  for (std::int64_t w = v + 1; w <= g.n; ++w) {
    bool b = g.has_edge(v, w);
    path.push_back(w);
    enumerate(g, x, path, blue + b, red + !b, best, all, target);
    path.pop_back();
  }
}

Best dp_best(const WitnessGraph& g, const Rational& x) {
  const std::int64_t n = g.n;
  const auto N = static_cast<std::size_t>(n + 1);
  // B[j][r]: max blue count over 0 -> j paths with r red edges
  std::vector<std::vector<std::int64_t>> B(N, std::vector<std::int64_t>(N, -1)), pred(N, std::vector<std::int64_t>(N, -1));
  B[0][0] = 0;
  for (std::int64_t j = 1; j <= n; ++j)
    for (std::int64_t i = 0; i < j; ++i) {
      const bool b = g.has_edge(i, j);
      for (std::int64_t r = 0; r + !b <= j; ++r) {
        auto bi = B[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        if (bi < 0) continue;
        auto& dst = B[static_cast<std::size_t>(j)][static_cast<std::size_t>(r + !b)];
        if (bi + b > dst) {
          dst = bi + b;
          pred[static_cast<std::size_t>(j)][static_cast<std::size_t>(r + !b)] = i;
        }
      }
    }
  Best best;
  for (std::int64_t r = 0; r <= n; ++r) {
    auto b = B[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
    if (b < 0) continue;
    std::vector<std::int64_t> path{n};
    for (std::int64_t v = n, rr = r; v > 0;) {
      std::int64_t u = pred[static_cast<std::size_t>(v)][static_cast<std::size_t>(rr)];
      rr -= !g.has_edge(u, v);
      v = u;
      path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    best.offer(static_cast<__int128>(x.den) * b + static_cast<__int128>(x.num) * r, r, path);
  }
  return best;
}

}  // namespace

bool in_h(const WitnessGraph& g) {
  const auto n = g.n;
  auto reach = reachability(g);
  for (std::int64_t j = 1; j < n; ++j) {
    if (!test(reach[0], j) || !test(reach[static_cast<std::size_t>(j)], n)) return false;
    bool found = false;
    for (std::int64_t i = 1; i < n && !found; ++i) {
      if (i == j) continue;
      found = !test(reach[static_cast<std::size_t>(std::min(i, j))], std::max(i, j));
    }
    if (!found) return false;
  }
  return true;
}

CriticalReport verify_critical(const WitnessGraph& g, const Rational& x) {
  CriticalReport rep;
  rep.member = in_h(g);
  Best best;
  if (g.n <= kEnumerationLimit) {
    std::vector<std::int64_t> path{0};
    enumerate(g, x, path, 0, 0, best, nullptr, nullptr);
    rep.enumerated = true;
  } else {
    best = dp_best(g, x);
  }
  std::vector<std::size_t> order(best.reds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return best.reds[a] < best.reds[b]; });
  for (auto k : order) {
    rep.red_counts.push_back(best.reds[k]);
    rep.certificate.push_back(best.paths[k]);
  }
  if (!rep.certificate.empty()) {
    const auto& P = rep.certificate.front();
    for (std::size_t k = 1; k < P.size(); ++k) rep.best_blue += g.has_edge(P[k - 1], P[k]);
  }
  if (rep.certificate.size() > 2) rep.certificate.resize(2);
  rep.critical = rep.member && best.reds.size() >= 2;
  return rep;
}

std::vector<std::vector<std::int64_t>> maximal_paths(const WitnessGraph& g, const Rational& x) {
  if (g.n > 20) throw InvalidParameter("maximal_paths: enumeration limited to n <= 20");
  Best best;
  std::vector<std::int64_t> path{0};
  enumerate(g, x, path, 0, 0, best, nullptr, nullptr);
  std::vector<std::vector<std::int64_t>> all;
  path = {0};
  enumerate(g, x, path, 0, 0, best, &all, &best.value);
  return all;
}

double c_at_zero(double q) {
  if (!(q > 0.0) || !(q < 1.0)) throw InvalidParameter("c_at_zero: q must lie in (0,1)");
  const double r = 1.0 - q;
  double sum = 0.0;
  for (int n = 1;; ++n) {
    double term = std::pow(r, 0.5 * n * (n - 1.0));
    sum += term;
    // later terms shrink faster than geometric with ratio r^n
    if (term * std::pow(r, n) / (1.0 - std::pow(r, n)) < 1e-17 * sum) break;
  }
  return 1.0 / sum;
}

double window_charge(double p, double x, std::int64_t n, RngStream& rng) {
  if (!(p > 0.0) || !(p < 1.0)) throw InvalidParameter("estimate_Cpx: p must lie in (0,1)");
  if (n < 1) throw InvalidParameter("estimate_Cpx: n must be positive");
  if (std::isnan(x) || (std::isinf(x) && x > 0)) throw InvalidParameter("estimate_Cpx: x must be finite or -inf");
  if (std::isinf(x)) return static_cast<double>(graph::longest_path_stream(p, n, rng));
  RngStream key(rng(), 0);
  const double cmax = std::max(1.0, x);
  std::vector<double> W(static_cast<std::size_t>(n) + 1, 0.0), pm(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t j = 1; j <= n; ++j) {
    double best = -INFINITY;
    for (std::int64_t i = j - 1; i >= 0; --i) {
      if (pm[static_cast<std::size_t>(i)] + cmax <= best) break;
      double c = key.uniform_at(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)) < p ? 1.0 : x;
      best = std::max(best, W[static_cast<std::size_t>(i)] + c);
    }
    W[static_cast<std::size_t>(j)] = best;
    pm[static_cast<std::size_t>(j)] = std::max(pm[static_cast<std::size_t>(j - 1)], best);
  }
  return W[static_cast<std::size_t>(n)];
}

harness::MonteCarloSummary estimate_Cpx(double p, double x, std::int64_t n, std::size_t reps, std::uint64_t seed,
                                        unsigned threads) {
  return harness::run_replicas([&](RngStream& rng) { return window_charge(p, x, n, rng) / static_cast<double>(n); },
                               reps, seed, threads);
}

namespace {

harness::MonteCarloSummary scaled(harness::MonteCarloSummary s, double k) {
  s.mean *= k;
  s.variance *= k * k;
  s.ci95_halfwidth *= std::abs(k);
  return s;
}

}  // namespace

ScalingReport scaling_check(double p, double x, std::int64_t n, std::size_t reps, std::uint64_t seed,
                            unsigned threads) {
  if (!(x > 0.0) || std::isinf(x)) throw InvalidParameter("scaling_check: x must be positive and finite");
  ScalingReport r;
  r.direct = estimate_Cpx(p, x, n, reps, harness::mix64(seed + 1), threads);
  r.inverse = scaled(estimate_Cpx(1.0 - p, 1.0 / x, n, reps, harness::mix64(seed + 2), threads), x);
  r.literal = scaled(estimate_Cpx(1.0 - p, x, n, reps, harness::mix64(seed + 3), threads), x);
  return r;
}

}  // namespace lpp::charged
