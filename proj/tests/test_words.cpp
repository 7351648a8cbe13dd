#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lpp/chainbounds.hpp"
#include "lpp/errors.hpp"
#include "lpp/ibm.hpp"
#include "lpp/words.hpp"

using namespace lpp;
using words::Word;
using words::WordClass;

namespace {

Word D(std::vector<int> v) { return words::from_display(std::move(v)); }

// every word with letter sum at most s
std::vector<Word> corpus(int s) {
  std::vector<Word> out;
  std::function<void(int, std::vector<int>&)> rec = [&](int left, std::vector<int>& cur) {
    if (!cur.empty()) out.push_back(words::from_applied(cur));
    for (int a = 1; a <= left; ++a) {
      cur.push_back(a);
      rec(left - a, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(s, cur);
  return out;
}

const std::vector<std::int64_t> kTable{1, 1, 1, 3, 7, 15, 29, 54, 102, 197, 375, 687, 1226};

}  // namespace

TEST_SUITE("words") {

TEST_CASE("display and applied order are reverses") {
  auto w = D({2, 4, 2, 1});
  CHECK(w.letters == std::vector<int>{1, 2, 4, 2});
  CHECK(words::display(w) == std::vector<int>{2, 4, 2, 1});
  CHECK(words::parse_applied("1,2,4,2") == w);
  CHECK(w.height() == 5);
  CHECK(w.length() == 4);
  CHECK_THROWS_AS(words::parse_applied("1,x"), InvalidParameter);
  CHECK_THROWS_AS(words::from_applied({}), InvalidParameter);
  CHECK_THROWS_AS(words::from_applied({0, 1}), InvalidParameter);
}

TEST_CASE("triangular words") {
  CHECK(words::is_triangular(D({1})));
  CHECK(words::is_triangular(D({2, 2, 1})));
  CHECK_FALSE(words::is_triangular(D({2, 2})));
  CHECK(words::is_triangular(D({2, 2, 1, 3, 2, 1})));
  CHECK(words::in_T_min(D({2, 2, 1})));
  CHECK_FALSE(words::in_T_min(D({2, 2, 1, 3, 2, 1})));
}

TEST_CASE("classification examples") {
  CHECK(words::classify(D({1})) == WordClass::Good);
  CHECK(words::classify(D({1, 3, 2})) == WordClass::Good);
  CHECK(words::classify(D({2, 1})) == WordClass::Bad);
  CHECK(words::classify(D({2})) == WordClass::Ambivalent);
  CHECK(words::classify(D({3, 2, 1})) == WordClass::Bad);
  auto bad = [](const Word& w) { return words::classify(w) == WordClass::Bad; };
  CHECK(words::is_minimal(D({2, 1}), bad));
  // after 2 the front holds at most two balls, so a following 3 never advances it
  CHECK(words::classify(D({3, 2})) == WordClass::Bad);
  for (std::int64_t c0 = 1; c0 <= 4; ++c0)
    for (std::int64_t c1 = 1; c1 <= 4; ++c1) {
      auto y = ibm::apply_selection(ibm::Configuration(0, {c0, c1}), 2);
      CHECK(ibm::apply_selection(y, 3).front() == y.front());
    }
  CHECK_FALSE(words::is_minimal(D({3, 2, 1}), bad));
}

TEST_CASE("words ending in 1 are good") {
  for (const auto& w : corpus(8))
    if (w.letters.back() == 1) CHECK(words::classify(w) == WordClass::Good);
}

TEST_CASE("coupling numbers") {
  for (int l = 1; l <= 6; ++l) CHECK(words::coupling_number(words::from_applied(std::vector<int>(l, 1))) == l);
  CHECK(words::coupling_number(D({2, 2, 1})) == 2);
  CHECK(words::coupling_number(D({2, 2})) == 0);
}

TEST_CASE("minimality examples") {
  CHECK(words::in_G_min(D({1})));
  CHECK_FALSE(words::in_G_min(D({1, 1})));
  CHECK(words::in_G_min(D({2, 4, 2, 1})));
  CHECK_FALSE(words::in_T_min_good(D({2, 4, 2, 1})));
  CHECK(words::in_T_min_good(D({2, 4, 2, 1, 1})));
  CHECK_FALSE(words::in_G_min(D({2, 4, 2, 1, 1})));
}

TEST_CASE("composition counts") {
  for (int h = 0; h <= 8; ++h)
    for (int l = 1; l <= 8; ++l) {
      std::int64_t c = 0;
      words::for_each_word(h, l, [&](const Word& w) {
        CHECK(w.height() == h);
        CHECK(w.length() == l);
        ++c;
      });
      CHECK(c == words::binomial(h + l - 1, l - 1));
    }
}

TEST_CASE("a_n against the table, both formulas") {
  auto d = words::a_coefficients_detailed(10);
  for (int n = 0; n <= 10; ++n) {
    CHECK(d.via_gmin[static_cast<std::size_t>(n)] == kTable[static_cast<std::size_t>(n)]);
    CHECK(d.via_tmin_good[static_cast<std::size_t>(n)] == kTable[static_cast<std::size_t>(n)]);
  }
  CHECK_THROWS_AS(words::a_coefficients(words::kMaxCoefficientOrder + 1), ResourceError);
  CHECK(words::a_coefficients(0) == std::vector<std::int64_t>{1});
}

TEST_CASE("minimal good words never exceed length H + 1") {
  auto d = words::a_coefficients_detailed(6);
  for (std::size_t h = 0; h < d.gmin_counts.size(); ++h)
    for (std::size_t l = h + 2; l < d.gmin_counts[h].size(); ++l) CHECK(d.gmin_counts[h][l] == 0);
}

TEST_CASE("speed series lower approximation") {
  CHECK(words::speed_series_lower(1.0, 6) == doctest::Approx(1.0));
  const double upper = chainbounds::bounds_C(0.5, 12).upper;
  double prev = 0.0;
  for (int h = 0; h <= 8; ++h) {
    double v = words::speed_series_lower(0.5, h);
    CHECK(v >= prev);
    CHECK(v <= upper);
    prev = v;
  }
}

TEST_CASE("suffix closure") {
  for (const auto& w : corpus(8)) {
    auto c = words::classify(w);
    for (int d = 1; d < w.length(); ++d) {
      auto s = words::classify(words::strict_suffix(w, d));
      if (c == WordClass::Good) CHECK(s != WordClass::Bad);
      if (c == WordClass::Bad) CHECK(s != WordClass::Good);
    }
  }
}

TEST_CASE("a letter after a coupling word decides the class") {
  for (const auto& w : corpus(7)) {
    if (words::coupling_number(w) < 1) continue;
    for (int xi = 1; xi <= 6; ++xi) {
      auto v = w.letters;
      v.push_back(xi);
      CHECK(words::classify(words::from_applied(v)) != WordClass::Ambivalent);
    }
  }
}

TEST_CASE("triangular words couple at least as many bins as they have ones") {
  for (const auto& w : corpus(8)) {
    if (!words::is_triangular(w)) continue;
    auto ones = std::count(w.letters.begin(), w.letters.end(), 1);
    CHECK(words::coupling_number(w) >= ones);
    CHECK(words::classify(w) != WordClass::Ambivalent);
  }
}

TEST_CASE("sweep agrees with full configurations") {
  harness::RngStream rng(1, 0);
  std::vector<ibm::Configuration> configs;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::int64_t> c(1 + rng() % 10);
    for (auto& v : c) v = 1 + static_cast<std::int64_t>(rng() % 5);
    configs.emplace_back(static_cast<std::int64_t>(rng() % 5), c, true);
  }
  for (const auto& w : corpus(8)) {
    auto cls = words::classify(w);
    int K = words::coupling_number(w);
    int moved = 0;
    std::vector<std::int64_t> ref;
    bool coupled = true;
    for (const auto& x : configs) {
      auto pre = x;
      auto body = std::vector<int>(w.letters.begin(), w.letters.end() - 1);
      pre = ibm::apply_word(x, body);
      auto post = ibm::apply_selection(pre, w.letters.back());
      moved += post.front() > pre.front();
      if (K > 0) {
        auto t = post.top(K);
        if (ref.empty()) ref = t;
        coupled = coupled && t == ref;
      }
    }
    if (cls == WordClass::Good) CHECK(moved == 200);
    if (cls == WordClass::Bad) CHECK(moved == 0);
    CHECK(coupled);
  }
}

}
