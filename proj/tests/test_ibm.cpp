#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lpp/chainbounds.hpp"
#include "lpp/errors.hpp"
#include "lpp/euler.hpp"
#include "lpp/ibm.hpp"
#include "support.hpp"

using namespace lpp;
using harness::RngStream;
using ibm::Configuration;
using ibm::kInf;
using ibm::LetterLaw;

namespace {

Configuration random_config(RngStream& rng, bool saturated) {
  std::vector<std::int64_t> c(1 + rng() % 6);
  for (auto& v : c) v = 1 + static_cast<std::int64_t>(rng() % 4);
  c[0] = 1 + static_cast<std::int64_t>(rng() % 3);
  return Configuration(static_cast<std::int64_t>(rng() % 7) - 3, c, saturated);
}

int random_letter(RngStream& rng, bool allow_zero = true) {
  auto r = rng() % 10;
  if (r == 0) return allow_zero ? 0 : 1;
  if (r == 1) return kInf;
  return 1 + static_cast<int>(rng() % 6);
}

std::int64_t stored_mass(const Configuration& x) {
  std::int64_t s = 0;
  for (auto c : x.counts_from_front()) s += c;
  return s;
}

}  // namespace

TEST_SUITE("ibm") {

TEST_CASE("select_bin on the worked configuration") {
  Configuration x(0, {2, 4, 1, 2});
  CHECK(ibm::select_bin(x, 1) == ExtInt(0));
  CHECK(ibm::select_bin(x, 2) == ExtInt(0));
  CHECK(ibm::select_bin(x, 3) == ExtInt(-1));
  CHECK(ibm::select_bin(x, kInf).is_neg_inf());
}

TEST_CASE("select_bin bounds") {
  RngStream rng(1, 0);
  for (int rep = 0; rep < 500; ++rep) {
    auto x = random_config(rng, true);
    int xi = 1 + static_cast<int>(rng() % 8);
    auto b = ibm::select_bin(x, xi);
    REQUIRE(b.finite());
    CHECK(b.value() <= x.front());
    CHECK(b.value() >= x.front() - xi + 1);
  }
}

TEST_CASE("unsaturated configuration runs out of balls") {
  Configuration x(0, {1}, false);
  CHECK(ibm::select_bin(x, 2).is_neg_inf());
  CHECK(ibm::apply_selection(x, 2) == x);
}

TEST_CASE("single ball, letter 1") {
  auto y = ibm::apply_selection(Configuration(4, {1}, false), 1);
  CHECK(y.front() == 5);
  CHECK(y.front_content() == 1);
}

TEST_CASE("worked word example") {
  // displayed (2,4,5,1): the rightmost letter is applied first
  auto y = ibm::apply_word(Configuration(0, {2, 1, 2, 3, 5}, false), {1, 5, 4, 2});
  CHECK(y.front() == 1);
  CHECK(y.counts_from_front() == std::vector<std::int64_t>{2, 3, 2, 2, 3, 5});
}

TEST_CASE("letter 0 is a shift and infinity is the identity") {
  Configuration x(2, {3, 1, 2});
  auto y = ibm::apply_selection(x, 0);
  CHECK(y.front() == 3);
  CHECK(y.counts_from_front() == x.counts_from_front());
  CHECK(ibm::apply_selection(x, kInf) == x);
}

TEST_CASE("Phi_0 commutes with Phi_k") {
  RngStream rng(2, 0);
  for (int rep = 0; rep < 500; ++rep) {
    auto x = random_config(rng, rep % 2 == 0);
    int k = random_letter(rng);
    CHECK(ibm::apply_word(x, {0, k}) == ibm::apply_word(x, {k, 0}));
  }
}

TEST_CASE("front moves by one exactly when the letter fits in the front bin") {
  RngStream rng(3, 0);
  for (int rep = 0; rep < 2000; ++rep) {
    auto x = random_config(rng, true);
    int a = random_letter(rng);
    auto y = ibm::apply_selection(x, a);
    bool expect = a == 0 || (a != kInf && a <= x.front_content());
    CHECK(y.front() - x.front() == (expect ? 1 : 0));
  }
}

TEST_CASE("every finite positive letter adds one ball") {
  RngStream rng(4, 0);
  for (int rep = 0; rep < 200; ++rep) {
    auto x = random_config(rng, true);
    auto y = x;
    int n = 0;
    for (int t = 0; t < 40; ++t) {
      int a = random_letter(rng, false);
      y.apply(a);
      if (a != kInf) ++n;
    }
    CHECK(stored_mass(y) == stored_mass(x) + n);
  }
}

TEST_CASE("order preservation") {
  RngStream rng(5, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    auto x = random_config(rng, rep % 2 == 0);
    std::vector<int> extra;
    for (int t = 0; t < 4; ++t) extra.push_back(random_letter(rng));
    auto y = ibm::apply_word(x, extra);
    REQUIRE(ibm::precedes(x, y));
    int b = random_letter(rng, false);
    int a = b == kInf ? random_letter(rng, false) : 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(b));
    if (a > b) std::swap(a, b);
    CHECK(ibm::precedes(ibm::apply_selection(x, b), ibm::apply_selection(y, a)));
  }
}

TEST_CASE("sandwich of the four truncated processes stays ordered") {
  for (std::uint64_t s = 0; s < 5; ++s) CHECK(ibm::sandwich_ordered(0.5, 3, 3000, s));
  CHECK(ibm::sandwich_ordered(0.2, 2, 3000, 9));
}

TEST_CASE("speed of delta_1 is one") {
  auto s = ibm::simulate_speed(LetterLaw::table(0.0, {0.0, 1.0}, 0.0), 1000, Configuration(), 6);
  CHECK(s.mean == 1.0);
  CHECK(s.variance == 0.0);
}

TEST_CASE("speed with mu(1) = mu(inf) = 1/2") {
  auto s = ibm::simulate_speed(LetterLaw::table(0.0, {0.0, 0.5}, 0.5), 10000, Configuration(), 7);
  CHECK(testing::within_sigma(s, 0.5));
}

TEST_CASE("geometric speed at p = 0.5 against the k = 3 sandwich") {
  ibm::SpeedOptions opt;
  opt.replicas = 20;
  auto s = ibm::simulate_speed(LetterLaw::geometric(0.5), 1000000, Configuration(), 8, opt);
  auto b = chainbounds::bounds_C(0.5, 3);
  CHECK(harness::overlaps(s, b.lower, b.upper));
}

TEST_CASE("speed does not depend on the initial configuration") {
  ibm::SpeedOptions opt;
  opt.replicas = 20;
  auto a = ibm::simulate_speed(LetterLaw::geometric(0.5), 200000, Configuration(), 9, opt);
  auto b = ibm::simulate_speed(LetterLaw::geometric(0.5), 200000, Configuration(0, {1, 5, 9, 2}, false), 10, opt);
  CHECK(harness::agree(a, b));
}

TEST_CASE("front estimator") {
  SUBCASE("p = 0.99 against k = 6") {
    auto s = ibm::estimate_C_via_front(0.99, 1000000, 10000, 11);
    auto b = chainbounds::bounds_C(0.99, 6);
    CHECK(harness::overlaps(s, b.lower, b.upper));
  }
  SUBCASE("p = 0.5 against k = 3") {
    auto s = ibm::estimate_C_via_front(0.5, 2000000, 10000, 12);
    auto b = chainbounds::bounds_C(0.5, 3);
    CHECK(harness::overlaps(s, b.lower, b.upper));
  }
  SUBCASE("two seeds give overlapping intervals") {
    auto a = ibm::estimate_C_via_front(0.5, 1000000, 10000, 13);
    auto b = ibm::estimate_C_via_front(0.5, 1000000, 10000, 14);
    CHECK(std::abs(a.mean - b.mean) <= a.ci95_halfwidth + b.ci95_halfwidth);
  }
  CHECK_THROWS_AS(ibm::estimate_C_via_front(1.0, 100, 0, 1), InvalidParameter);
}

TEST_CASE("renewals") {
  SUBCASE("all ones") {
    std::vector<int> xi(100, 1);
    auto r = ibm::detect_renewals(xi, 10);
    CHECK(r.size() == 90);
  }
  SUBCASE("a leading 2 is excluded") {
    std::vector<int> xi{2, 1, 1, 1, 1, 1};
    auto r = ibm::detect_renewals(xi, 2);
    CHECK(std::find(r.begin(), r.end(), 0) == r.end());
    CHECK(std::find(r.begin(), r.end(), 1) != r.end());
  }
  SUBCASE("density for geometric(0.5) letters") {
    const int horizon = 50;
    double target = 1.0;
    for (int j = 1; j <= horizon + 1; ++j) target *= 1.0 - std::pow(0.5, j);
    RngStream rng(15, 0);
    auto mu = LetterLaw::geometric(0.5);
    std::vector<int> xi(100000 + horizon);
    for (auto& a : xi) a = mu.sample(rng);
    auto r = ibm::detect_renewals(xi, horizon);
    std::vector<double> blocks(100, 0.0);
    for (auto k : r) blocks[static_cast<std::size_t>(k / 1000)] += 1.0 / 1000.0;
    CHECK(testing::within_sigma(harness::summarize(blocks), target));
    CHECK(target == doctest::Approx(euler::euler_phi(0.5).value).epsilon(1e-12));
  }
}

TEST_CASE("coupling") {
  auto mu = LetterLaw::geometric(0.5);
  SUBCASE("identical starts couple at time 0") {
    Configuration x(0, {2, 3, 1});
    auto r = ibm::coupling_check(mu, x, x, 100, 5, 16);
    for (auto t : r.coupled_from) CHECK(t == 0);
  }
  SUBCASE("different starts couple eventually") {
    auto r = ibm::coupling_check(mu, Configuration(0, {1, 1, 1}), Configuration(3, {4, 2, 7}), 5000, 4, 17);
    for (auto t : r.coupled_from) CHECK(t >= 0);
  }
  SUBCASE("1^l couples the top l bins") {
    RngStream rng(18, 0);
    for (int rep = 0; rep < 200; ++rep) {
      auto x = random_config(rng, true), y = random_config(rng, false);
      int l = 1 + rep % 6;
      std::vector<int> w(static_cast<std::size_t>(l), 1);
      CHECK(ibm::apply_word(x, w).top(l) == ibm::apply_word(y, w).top(l));
    }
  }
  SUBCASE("triangular words couple as many bins as they have ones") {
    RngStream rng(19, 0);
    for (int rep = 0; rep < 1000; ++rep) {
      std::vector<int> w;
      int len = 1 + static_cast<int>(rng() % 8);
      for (int i = 1; i <= len; ++i) w.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(i)));
      int ones = static_cast<int>(std::count(w.begin(), w.end(), 1));
      auto x = random_config(rng, rep % 2 == 0), y = random_config(rng, rep % 3 == 0);
      CHECK(ibm::apply_word(x, w).top(ones) == ibm::apply_word(y, w).top(ones));
    }
  }
  SUBCASE("mu(1) = 0 is rejected") {
    CHECK_THROWS_AS(ibm::coupling_check(LetterLaw::table(0.0, {0.0, 0.0, 1.0}, 0.0), Configuration(), Configuration(), 10,
                                        2, 1),
                    InvalidParameter);
  }
}

TEST_CASE("trim keeps the top of the configuration") {
  Configuration x(0, {1, 2, 3, 4, 5}, true);
  auto y = x;
  y.trim(4);
  CHECK(y.front() == 0);
  CHECK(y.counts_from_front() == std::vector<std::int64_t>{1, 2, 3});
  for (int a = 1; a <= 4; ++a) CHECK(ibm::select_bin(x, a) == ibm::select_bin(y, a));
}

TEST_CASE("letter law tables") {
  CHECK_THROWS_AS(LetterLaw::table(0.0, {0.0, 0.5}, 0.2), InvalidParameter);
  auto mu = LetterLaw::table(0.1, {0.0, 0.3, 0.6}, 0.0);
  CHECK(mu.mass_one() == doctest::Approx(0.3));
  CHECK(mu.max_letter() == 2);
  RngStream rng(20, 0);
  std::size_t zeros = 0;
  const std::size_t N = 100000;
  for (std::size_t i = 0; i < N; ++i) zeros += mu.sample(rng) == 0;
  CHECK(testing::within_sigma(testing::bernoulli_summary(zeros, N), 0.1));
}

}
