#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lpp/chainbounds.hpp"
#include "lpp/charged.hpp"
#include "lpp/charges.hpp"
#include "lpp/euler.hpp"
#include "lpp/graph.hpp"
#include "lpp/harness.hpp"
#include "lpp/ibm.hpp"
#include "lpp/mgs.hpp"
#include "lpp/pwit.hpp"
#include "lpp/words.hpp"

using namespace lpp;
using harness::MonteCarloSummary;
using harness::RngStream;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Verdict v = body();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("%s  [%2d] %-28s (%.1fs)  %s\n", v.pass ? "PASS" : "FAIL", id, name, secs, v.detail.c_str());
  std::fflush(stdout);
}

MonteCarloSummary proportion(double hits, double n) {
  double m = hits / n;
  MonteCarloSummary s;
  s.n = static_cast<std::size_t>(n);
  s.mean = m;
  s.variance = m * (1.0 - m) * n / (n - 1.0);
  s.ci95_halfwidth = 1.96 * std::sqrt(s.variance / n);
  return s;
}

bool within3(const MonteCarloSummary& s, double target) {
  return std::abs(s.mean - target) <= 3.0 * s.sem() + 1e-12;
}

double c3_lower(double p) {
  double num = p * std::pow(p * p - 3 * p + 3, 2) * (std::pow(p, 4) - 6 * std::pow(p, 3) + 14 * p * p - 16 * p + 8);
  double den = 3 * std::pow(p, 6) - 26 * std::pow(p, 5) + 96 * std::pow(p, 4) - 196 * std::pow(p, 3) + 235 * p * p -
               158 * p + 47;
  return num / den;
}

double c3_upper(double p) {
  return (std::pow(p, 3) - 2 * p * p + p - 1) /
         (std::pow(p, 5) - 4 * std::pow(p, 4) + 8 * std::pow(p, 3) - 9 * p * p + 6 * p - 3);
}

// brute force over all 0 -> n paths: blue edges score 1, the rest score x
bool critical_by_enumeration(const charged::WitnessGraph& g, double x) {
  double best = -INFINITY;
  std::vector<std::int64_t> reds;
  std::function<void(std::int64_t, std::int64_t, std::int64_t)> dfs = [&](std::int64_t v, std::int64_t b,
                                                                         std::int64_t r) {
    if (v == g.n) {
      double s = static_cast<double>(b) + x * static_cast<double>(r);
      if (s > best + 1e-12) {
        best = s;
        reds = {r};
      } else if (std::abs(s - best) <= 1e-12) {
        reds.push_back(r);
      }
      return;
    }
    for (std::int64_t w = v + 1; w <= g.n; ++w) {
      if (g.has_edge(v, w)) dfs(w, b + 1, r);
      else dfs(w, b, r + 1);
    }
  };
  dfs(0, 0, 0);
  std::sort(reds.begin(), reds.end());
  return reds.front() != reds.back();
}

}  // namespace

int main() {
  criterion(1, "skeleton-rate table", [] {
    Verdict v;
    const double ps[] = {0.3, 0.5, 0.6, 0.8, 0.9};
    const double inv[] = {558.46, 11.99, 4.9, 1.73, 1.26};
    for (int k = 0; k < 5; ++k) {
      double got = 1.0 / euler::skeleton_rate(ps[k]);
      double rel = std::abs(got - inv[k]) / inv[k];
      v.require(rel <= 0.005, fmt("p=%.1f 1/lambda=%.4f (rel %.2g)", ps[k], got, rel));
      if (k == 1) v.note(fmt("1/lambda(0.5)=%.4f", got));
    }
    return v;
  });

  criterion(2, "a_n exact for n <= 8", [] {
    Verdict v;
    auto a = words::a_coefficients(8);
    const std::vector<std::int64_t> want{1, 1, 1, 3, 7, 15, 29, 54, 102};
    v.require(a == want, "coefficients differ from 1,1,1,3,7,15,29,54,102");
    if (a == want) v.note("a_8=102");
    return v;
  });

  criterion(3, "dual formula for n <= 8", [] {
    Verdict v;
    auto c = words::a_coefficients_detailed(8);
    v.require(c.via_gmin == c.via_tmin_good, "minimal-good and minimal-triangular-good counts differ");
    return v;
  });

  criterion(4, "k=3 rational bounds", [] {
    Verdict v;
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
      double p = i / 10.0;
      auto b = chainbounds::bounds_C(p, 3);
      worst = std::max({worst, std::abs(b.lower - c3_lower(p)), std::abs(b.upper - c3_upper(p))});
    }
    v.require(worst <= 1e-10, fmt("max deviation %.3g", worst));
    v.note(fmt("max deviation %.2g", worst));
    return v;
  });

  criterion(5, "sandwich, gap and graph DP", [] {
    Verdict v;
    for (int i = 1; i <= 9; ++i) {
      double p = i / 10.0;
      chainbounds::Bounds prev{-INFINITY, INFINITY};
      for (int k = 2; k <= 10; ++k) {
        auto b = chainbounds::bounds_C(p, k);
        v.require(b.upper - b.lower <= std::pow(1.0 - p, k) + 1e-12, fmt("gap too wide at p=%.1f k=%.0f", p, k));
        v.require(b.lower >= prev.lower - 1e-12 && b.upper <= prev.upper + 1e-12,
                  fmt("not nested at p=%.1f k=%.0f", p, k));
        prev = b;
      }
    }
    auto b12 = chainbounds::bounds_C(0.5, 12);
    const std::int64_t n = 2000;
    auto dp = harness::run_replicas(
        [&](RngStream& rng) {
          auto w = graph::sample_window(n, graph::EdgeLaw::bernoulli(0.5), rng);
          auto L = graph::longest_path_profile(w);
          return static_cast<double>(*std::max_element(L.begin(), L.end())) / static_cast<double>(n);
        },
        100, 501);
    v.require(harness::overlaps(dp, b12.lower, b12.upper), fmt("DP %.5f +- %.5f outside sandwich", dp.mean, dp.sem()));
    v.note(fmt("DP C(0.5)=%.5f+-%.5f, [%.6f,", dp.mean, dp.sem(), b12.lower) + fmt("%.6f]", b12.upper));
    return v;
  });

  criterion(6, "Taylor expansion at p=1", [] {
    Verdict v;
    for (double p : {0.95, 0.97}) {
      double q = 1.0 - p;
      double taylor = 1 - q + q * q - 3 * q * q * q + 7 * std::pow(q, 4);
      auto b = chainbounds::bounds_C(p, 6);
      double rl = (b.lower - taylor) / std::pow(q, 5), ru = (b.upper - taylor) / std::pow(q, 5);
      v.require(std::abs(rl) <= 1.0 && std::abs(ru) <= 1.0,
                fmt("p=%.2f residual/q^5 lower %.2f upper %.2f", p, rl, ru));
    }
    return v;
  });

  criterion(7, "perfect simulation headline", [] {
    Verdict v;
    auto F = ChargeLaw::shifted_exp();
    auto r = mgs::estimate_CF(F, mgs::default_ell(F), 100000, 701);
    v.require(harness::overlaps(r.c, 0.4432 - 0.0006, 0.4432 + 0.0006), fmt("C_F=%.5f+-%.5f", r.c.mean, r.c.sem()));
    v.note(fmt("C_F=%.5f+-%.5f", r.c.mean, r.c.sem()));
    return v;
  });

  criterion(8, "four routes at p=0.5", [] {
    Verdict v;
    const double p = 0.5;
    auto b12 = chainbounds::bounds_C(p, 12);
    std::vector<std::pair<std::string, MonteCarloSummary>> routes;
    routes.emplace_back("graph", harness::run_replicas(
                                     [&](RngStream& rng) {
                                       const std::int64_t n = 100000;
                                       return static_cast<double>(graph::longest_path_stream(p, n, rng)) /
                                              static_cast<double>(n);
                                     },
                                     100, 801));
    routes.emplace_back("ibm", ibm::simulate_speed(ibm::LetterLaw::geometric(p), 200000, ibm::Configuration(), 802,
                                                   {50, 1}));
    routes.emplace_back("front", ibm::estimate_C_via_front(p, 2000000, 10000, 803, 50));
    routes.emplace_back("mgs", mgs::estimate_CF(ChargeLaw::bernoulli(p), 0.0, 100000, 804).c);
    for (const auto& [name, s] : routes) {
      v.require(harness::overlaps(s, b12.lower, b12.upper), name + fmt(" %.5f outside sandwich", s.mean));
      v.note(name + fmt("=%.5f+-%.5f", s.mean, s.sem()));
    }
    for (std::size_t a = 0; a < routes.size(); ++a)
      for (std::size_t b = a + 1; b < routes.size(); ++b)
        v.require(harness::agree(routes[a].second, routes[b].second),
                  routes[a].first + " vs " + routes[b].first + " disagree");
    return v;
  });

  criterion(9, "skeleton-gap pmf", [] {
    Verdict v;
    const double p = 0.5, q = 1.0 - p;
    const double want[] = {p, 0.0, std::pow(p, 4) * q, std::pow(p, 7) * std::pow(q, 3) + 3 * std::pow(p, 5) * q * q};
    auto pmf = graph::skeleton_gap_pmf(p, 4, 200000, 901);
    for (int k = 0; k < 4; ++k) {
      v.require(within3(pmf[k], want[k]), fmt("n=%.0f: %.5f vs %.5f", k + 1, pmf[k].mean, want[k]));
      v.note(fmt("n=%.0f %.5f", k + 1, pmf[k].mean));
    }
    return v;
  });

  criterion(10, "shortest path (10, 0.3)", [] {
    Verdict v;
    const std::int64_t n = 10;
    const double p = 0.3, N = 200000;
    auto r = pwit::shortest_path(n, p, static_cast<std::size_t>(N), 1001);
    auto s1 = proportion(std::round(r.pmf[1] * N), N), s2 = proportion(std::round(r.pmf[2] * N), N);
    double w1 = p, w2 = (1 - p) * (1 - std::pow(1 - p * p, static_cast<double>(n - 2)));
    v.require(within3(s1, w1), fmt("P(S=1)=%.5f vs %.5f", s1.mean, w1));
    v.require(within3(s2, w2), fmt("P(S=2)=%.5f vs %.5f", s2.mean, w2));
    v.note(fmt("P(S=1)=%.5f P(S=2)=%.5f (%.5f)", s1.mean, s2.mean, w2));
    return v;
  });

  criterion(11, "PWIT moments", [] {
    Verdict v;
    const std::vector<double> ts{1.0, 2.0, 3.0};
    const int lmax = 4;
    std::vector<std::vector<double>> V(3);
    std::vector<std::vector<std::vector<double>>> Z(3, std::vector<std::vector<double>>(lmax + 1));
    RngStream rng(1101, 0);
    for (int rep = 0; rep < 20000; ++rep) {
      auto r = pwit::simulate_pwit(3.0, ts, rng);
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& s = r.snapshots[i];
        V[i].push_back(static_cast<double>(s.V));
        for (int l = 0; l <= lmax; ++l)
          Z[i][l].push_back(static_cast<std::size_t>(l) < s.Z.size() ? static_cast<double>(s.Z[l]) : 0.0);
      }
    }
    for (std::size_t i = 0; i < 3; ++i) {
      double t = ts[i];
      v.require(within3(harness::summarize(V[i]), std::exp(t)), fmt("mean |V_%.0f| off", t));
      double fact = 1.0;
      for (int l = 0; l <= lmax; ++l) {
        if (l) fact *= l;
        auto s = harness::summarize(Z[i][l]);
        v.require(within3(s, std::pow(t, l) / fact), fmt("mean Z_%.0f(%.0f)=%.4f", t, l, s.mean));
      }
    }
    return v;
  });

  criterion(12, "criticality witnesses", [] {
    Verdict v;
    using charged::Rational;
    const std::vector<Rational> xs{Rational::make(0, 1),  Rational::make(1, 2),  Rational::make(1, 3),
                                   Rational::make(-1, 1), Rational::make(-2, 1), Rational::make(-11, 7)};
    int brute = 0;
    for (const auto& x : xs) {
      auto g = charged::build_witness(x);
      auto r = charged::verify_critical(g, x);
      v.require(r.member && r.critical, "x=" + x.str() + " not critical");
      v.require(charged::in_h(g), "x=" + x.str() + " witness outside h_n");
      if (g.n <= 22) {
        ++brute;
        v.require(critical_by_enumeration(g, x.value()), "x=" + x.str() + " fails brute-force enumeration");
      }
    }
    v.note(fmt("%.0f of 6 confirmed by brute force", brute));
    return v;
  });

  criterion(13, "small-p band and trend", [] {
    Verdict v;
    double prev = 0.0;
    for (double p : {0.1, 0.05, 0.02}) {
      auto steps = static_cast<std::int64_t>(20000.0 / p);
      auto s = ibm::simulate_speed(ibm::LetterLaw::geometric(p), steps, ibm::Configuration(), 1301, {20, 1});
      double r = s.mean / p, se = s.sem() / p;
      v.require(r > 1.0 && r + 3.0 * se < std::exp(1.0), fmt("p=%.2f C/p=%.4f outside (1, e)", p, r));
      v.require(r - 3.0 * se > prev, fmt("p=%.2f C/p=%.4f not above the previous value", p, r));
      prev = r + 3.0 * se;
      v.note(fmt("C(%.2f)/p=%.4f+-%.4f", p, r, se));
    }
    return v;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
