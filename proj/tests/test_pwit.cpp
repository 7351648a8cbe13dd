#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lpp/chainbounds.hpp"
#include "lpp/errors.hpp"
#include "lpp/pwit.hpp"
#include "support.hpp"

using namespace lpp;
using harness::RngStream;

TEST_SUITE("pwit") {

TEST_CASE("t_max = 0 leaves the root alone") {
  RngStream rng(1, 0);
  auto r = pwit::simulate_pwit(0.0, {}, rng);
  REQUIRE(r.snapshots.size() == 1);
  CHECK(r.snapshots[0].V == 1);
  CHECK(r.snapshots[0].F == 0);
  CHECK(r.snapshots[0].Z == std::vector<std::int64_t>{1});
}

TEST_CASE("generation counts and population moments") {
  const std::vector<double> ts{1.0, 2.0, 3.0};
  const std::size_t N = 10000;
  std::vector<std::vector<double>> Z3(3), V(3);
  RngStream rng(2, 0);
  for (std::size_t k = 0; k < N; ++k) {
    auto r = pwit::simulate_pwit(3.0, ts, rng);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& s = r.snapshots[i];
      V[i].push_back(static_cast<double>(s.V));
      Z3[i].push_back(s.Z.size() > 3 ? static_cast<double>(s.Z[3]) : 0.0);
      std::int64_t tot = 0;
      for (auto z : s.Z) tot += z;
      CHECK(tot == s.V);
      CHECK(pwit::front_from_minima(r.M, s.t) == s.F);
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    double t = ts[i];
    CHECK(testing::within_sigma(harness::summarize(V[i]), std::exp(t)));
    CHECK(testing::within_sigma(harness::summarize(Z3[i]), t * t * t / 6.0));
  }
}

TEST_CASE("population cap") {
  RngStream rng(3, 0);
  CHECK_THROWS_AS(pwit::simulate_pwit(12.0, {}, rng, 1000), ResourceError);
}

TEST_CASE("front from minima") {
  std::vector<double> M{0.0, 0.5, 0.9, 2.0};
  CHECK(pwit::front_from_minima(M, 0.0) == 0);
  CHECK(pwit::front_from_minima(M, 0.7) == 1);
  CHECK(pwit::front_from_minima(M, 5.0) == 3);
}

TEST_CASE("first BRW generation is exponential(1)") {
  auto s = harness::run_replicas(
      [](RngStream& rng) { return pwit::brw_min_displacement(1, 100, rng).M_n; }, 10000, 4);
  CHECK(testing::within_sigma(s, 1.0));
}

TEST_CASE("BRW speed band and beam monotonicity") {
  const double v = std::exp(-1.0);
  RngStream rng(5, 0);
  auto big = pwit::brw_min_displacement(2000, 10000, rng).M_n / 2000.0;
  CHECK(big >= v);
  CHECK(big <= v + 0.05);
  auto small = harness::run_replicas(
      [](RngStream& r) { return pwit::brw_min_displacement(2000, 100, r).M_n / 2000.0; }, 10, 6);
  CHECK(big <= small.mean + 2.0 * small.sem());
  CHECK(small.mean >= v);
}

TEST_CASE("minima are increasing") {
  RngStream rng(7, 0);
  auto r = pwit::brw_min_displacement(200, 200, rng);
  CHECK(std::is_sorted(r.minima.begin(), r.minima.end()));
}

TEST_CASE("coupled tree at p = 1") {
  RngStream rng(8, 0);
  auto tr = pwit::coupled_tree(1.0, 50, rng);
  for (std::size_t i = 1; i < tr.kappa.size(); ++i) {
    CHECK(tr.parent[i] == static_cast<std::int64_t>(i) - 1);
    CHECK(tr.L[i] == static_cast<std::int64_t>(i));
    CHECK(tr.kappa[i] == static_cast<std::int64_t>(i));
  }
}

TEST_CASE("coupled tree marginals") {
  const double p = 0.5, q = 0.5;
  const std::size_t N = 5000;
  std::vector<double> first_gap;
  std::vector<std::vector<double>> dt(6);
  RngStream rng(9, 0);
  for (std::size_t k = 0; k < N; ++k) {
    auto tr = pwit::coupled_tree(p, 5, rng);
    first_gap.push_back(static_cast<double>(tr.kappa[1] - tr.kappa[0]));
    for (std::size_t i = 1; i <= 5; ++i) dt[i].push_back(tr.time[i] - tr.time[i - 1]);
  }
  CHECK(testing::within_sigma(harness::summarize(first_gap), 1.0 / p));
  for (std::size_t i = 1; i <= 5; ++i) {
    double rate = (1.0 - std::pow(q, static_cast<double>(i))) / p;
    double ks = harness::ks_statistic(dt[i], [rate](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-rate * x); });
    CHECK(ks < 1.63 / std::sqrt(static_cast<double>(N)));
  }
}

TEST_CASE("coupled tree front grows at the longest-path rate") {
  auto s = harness::run_replicas(
      [](RngStream& rng) { return pwit::coupled_tree(0.5, 10000, rng).growth_rate(); }, 50, 10);
  auto b = chainbounds::bounds_C(0.5, 12);
  CHECK(harness::overlaps(s, b.lower, b.upper));
}

TEST_CASE("generations and front are consistent") {
  RngStream rng(11, 0);
  auto tr = pwit::coupled_tree(0.3, 2000, rng);
  std::int64_t mx = 0;
  for (std::size_t i = 1; i < tr.L.size(); ++i) {
    CHECK(tr.L[i] == tr.L[static_cast<std::size_t>(tr.parent[i])] + 1);
    CHECK(tr.parent[i] < static_cast<std::int64_t>(i));
    CHECK(tr.kappa[i] > tr.kappa[i - 1]);
    mx = std::max(mx, tr.L[i]);
    CHECK(tr.front[i] == mx);
  }
}

TEST_CASE("sparse regime") {
  SUBCASE("boundary of the two-edge regime against the Poisson count") {
    const std::int64_t n = 1000;
    const double p = std::pow(static_cast<double>(n), -1.5);
    auto r = pwit::sparse_longest(n, p, 2000, 12);
    double ge2 = 0.0;
    for (std::size_t k = 2; k < r.pmf.size(); ++k) ge2 += r.pmf[k];
    CHECK(testing::within_sigma(testing::bernoulli_summary(static_cast<std::size_t>(std::lround(ge2 * 2000)), 2000),
                                pwit::longest_at_least_poisson(n, p, 2)));
    CHECK(r.pmf.size() > 1);
    CHECK(r.pmf[0] < 1e-3);
  }
  SUBCASE("inside the two-edge regime") {
    const std::int64_t n = 1000000;
    const double p = std::pow(static_cast<double>(n), -1.4);
    auto r = pwit::sparse_longest(n, p, 200, 13);
    double at2 = r.pmf.size() > 2 ? r.pmf[2] : 0.0;
    double target = pwit::longest_at_least_poisson(n, p, 2) - pwit::longest_at_least_poisson(n, p, 3);
    CHECK(target > 0.9);
    CHECK(testing::within_sigma(testing::bernoulli_summary(static_cast<std::size_t>(std::lround(at2 * 200)), 200),
                                target));
  }
  SUBCASE("n^2 p small gives no edges") {
    auto r = pwit::sparse_longest(1000, 1e-8, 1000, 14);
    CHECK(r.pmf[0] > 0.98);
  }
}

TEST_CASE("ell_n by direct evaluation") {
  for (std::int64_t n : {5, 10, 30})
    for (double p : {0.1, 0.3, 0.7}) {
      std::int64_t best = 0;
      double b = 1.0;
      for (std::int64_t k = 1; k <= n; ++k) {
        b *= static_cast<double>(n - k + 1) / static_cast<double>(k);
        if (b * std::pow(p, static_cast<double>(k)) >= 1.0 - 1e-12) best = k;
      }
      CHECK(pwit::ell_n(n, p) == best);
    }
}

TEST_CASE("A(gamma) solves x log x = 1/(e gamma)") {
  for (double g : {0.1, 0.5, 1.0, 3.0}) {
    double x = pwit::A_gamma(g);
    CHECK(x > 1.0);
    CHECK(std::abs(x * std::log(x) - 1.0 / (std::exp(1.0) * g)) < 1e-10);
  }
}

TEST_CASE("shortest path") {
  SUBCASE("p = 1") {
    auto r = pwit::shortest_path(10, 1.0, 100, 15);
    CHECK(r.pmf[1] == 1.0);
    CHECK(r.p_inf == 0.0);
  }
  SUBCASE("n = 10, p = 0.3") {
    const std::size_t N = 20000;
    auto r = pwit::shortest_path(10, 0.3, N, 16);
    auto s1 = testing::bernoulli_summary(static_cast<std::size_t>(std::lround(r.pmf[1] * N)), N);
    auto s2 = testing::bernoulli_summary(static_cast<std::size_t>(std::lround(r.pmf[2] * N)), N);
    CHECK(testing::within_sigma(s1, 0.3));
    CHECK(testing::within_sigma(s2, 0.7 * (1.0 - std::pow(1.0 - 0.09, 8))));
    CHECK(pwit::shortest_p1(0.3) == doctest::Approx(0.3));
    CHECK(pwit::shortest_p2(10, 0.3) == doctest::Approx(0.37078).epsilon(1e-4));
    double tot = r.p_inf;
    for (double v : r.pmf) tot += v;
    CHECK(tot == doctest::Approx(1.0));
  }
}

}
