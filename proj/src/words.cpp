#include "lpp/words.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "lpp/errors.hpp"

namespace lpp::words {

using chainbounds::Segment;

int Word::height() const {
  int h = 0;
  for (int a : letters) h += a - 1;
  return h;
}

int Word::max_letter() const {
  int m = 0;
  for (int a : letters) m = std::max(m, a);
  return m;
}

namespace {

void validate(const Word& w) {
  if (w.letters.empty()) throw InvalidParameter("word must be nonempty");
  for (int a : w.letters)
    if (a < 1) throw InvalidParameter("word letters must be positive");
}

const std::vector<Segment>& states_of_order(int m) {
  static std::mutex mu;
  static std::vector<std::vector<Segment>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<int>(cache.size()) <= m) cache.resize(m + 1);
  auto& c = cache[m];
  if (c.empty()) {
    if (m <= 1) {
      c.push_back({});
    } else {
      for (auto& s : chainbounds::enumerate_states(m)) c.push_back(s.a);
    }
  }
  return c;
}

}  // namespace

Word from_applied(std::vector<int> applied_order) {
  Word w{std::move(applied_order)};
  validate(w);
  return w;
}

Word from_display(std::vector<int> last_applied_first) {
  std::reverse(last_applied_first.begin(), last_applied_first.end());
  return from_applied(std::move(last_applied_first));
}

std::vector<int> display(const Word& w) { return {w.letters.rbegin(), w.letters.rend()}; }

Word parse_applied(const std::string& csv) {
  std::vector<int> v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      int a = std::stoi(tok, &used);
      if (used != tok.size()) throw InvalidParameter("bad letter: " + tok);
      v.push_back(a);
    } catch (const std::logic_error&) {
      throw InvalidParameter("bad letter: " + tok);
    }
  }
  return from_applied(std::move(v));
}

Word strict_suffix(const Word& w, int dropped) {
  if (dropped < 1 || dropped >= w.length()) throw InvalidParameter("strict_suffix: bad drop count");
  return Word{std::vector<int>(w.letters.begin() + dropped, w.letters.end())};
}

const char* to_string(WordClass c) {
  switch (c) {
    case WordClass::Good: return "good";
    case WordClass::Bad: return "bad";
    default: return "ambivalent";
  }
}

bool is_triangular(const Word& w) {
  for (int i = 0; i < w.length(); ++i)
    if (w.letters[i] > i + 1) return false;
  return true;
}

std::vector<Segment> sweep(const Word& w, std::vector<bool>* last_moved) {
  validate(w);
  const auto& states = states_of_order(w.max_letter());
  std::vector<Segment> out;
  out.reserve(states.size());
  if (last_moved) last_moved->clear();
  for (const auto& s0 : states) {
    Segment s = s0;
    bool moved = false;
    for (int a : w.letters) moved = chainbounds::apply_letter(s, a);
    out.push_back(std::move(s));
    if (last_moved) last_moved->push_back(moved);
  }
  return out;
}

WordClass classify(const Word& w) {
  std::vector<bool> moved;
  sweep(w, &moved);
  bool any = false, all = true;
  for (bool m : moved) {
    any = any || m;
    all = all && m;
  }
  if (all) return WordClass::Good;
  if (!any) return WordClass::Bad;
  return WordClass::Ambivalent;
}

int coupling_number(const Word& w) {
  auto finals = sweep(w);
  std::size_t min_len = finals.front().size();
  for (auto& s : finals) min_len = std::min(min_len, s.size());
  int k = 0;
  for (std::size_t d = 1; d <= min_len; ++d) {
    int v = finals.front()[finals.front().size() - d];
    for (auto& s : finals)
      if (s[s.size() - d] != v) return k;
    k = static_cast<int>(d);
  }
  return k;
}

bool is_minimal(const Word& w, const Predicate& in_set) {
  if (!in_set(w)) return false;
  for (int d = 1; d < w.length(); ++d)
    if (in_set(strict_suffix(w, d))) return false;
  return true;
}

bool is_good(const Word& w) { return classify(w) == WordClass::Good; }

bool in_G_min(const Word& w) {
  if (!is_good(w)) return false;
  // prepending first-applied letters preserves goodness, so the longest
  // strict suffix decides
  return w.length() == 1 || !is_good(strict_suffix(w, 1));
}

bool in_T_min(const Word& w) { return is_minimal(w, is_triangular); }

bool in_T_min_good(const Word& w) { return in_T_min(w) && is_good(w); }

namespace {

void compose(int remaining, int slots, Word& w, const std::function<void(const Word&)>& f) {
  if (slots == 1) {
    w.letters.push_back(remaining + 1);
    f(w);
    w.letters.pop_back();
    return;
  }
  for (int part = 0; part <= remaining; ++part) {
    w.letters.push_back(part + 1);
    compose(remaining - part, slots - 1, w, f);
    w.letters.pop_back();
  }
}

}  // namespace

void for_each_word(int h, int l, const std::function<void(const Word&)>& f) {
  if (h < 0 || l < 1) return;
  Word w;
  w.letters.reserve(l);
  compose(h, l, w, f);
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  static std::mutex mu;
  static std::vector<std::vector<std::int64_t>> pascal;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(pascal.size()) <= n) {
    int m = static_cast<int>(pascal.size());
    std::vector<std::int64_t> row(m + 1, 1);
    for (int j = 1; j < m; ++j) row[j] = pascal[m - 1][j - 1] + pascal[m - 1][j];
    pascal.push_back(std::move(row));
  }
  return pascal[n][k];
}

Coefficients a_coefficients_detailed(int n_max) {
  if (n_max < 0) throw InvalidParameter("a_coefficients: n_max must be nonnegative");
  if (n_max > kMaxCoefficientOrder) throw ResourceError("a_coefficients: n_max beyond the configured ceiling");
  Coefficients c;
  c.gmin_counts.assign(n_max + 1, std::vector<std::int64_t>(n_max + 2, 0));
  c.tmin_good_counts.assign(n_max + 1, std::vector<std::int64_t>(n_max + 2, 0));
  for (int h = 0; h <= n_max; ++h) {
    for (int l = 1; l <= h + 1; ++l) {
      for_each_word(h, l, [&](const Word& w) {
        bool good = is_good(w);
        if (!good) return;
        if (w.length() == 1 || !is_good(strict_suffix(w, 1))) ++c.gmin_counts[h][l];
        if (in_T_min(w)) ++c.tmin_good_counts[h][l];
      });
    }
  }
  auto combine = [&](const std::vector<std::vector<std::int64_t>>& cnt) {
    std::vector<std::int64_t> a(n_max + 1, 0);
    for (int n = 0; n <= n_max; ++n) {
      std::int64_t acc = 0;
      for (int h = 0; h <= n; ++h)
        for (int l = 1; l <= n + 1; ++l) {
          std::int64_t term = binomial(l, n - h) * cnt[h][l];
          acc += (h % 2) ? -term : term;
        }
      a[n] = acc;
    }
    return a;
  };
  c.via_gmin = combine(c.gmin_counts);
  c.via_tmin_good = combine(c.tmin_good_counts);
  return c;
}

std::vector<std::int64_t> a_coefficients(int n_max) {
  auto c = a_coefficients_detailed(n_max);
  if (c.via_gmin != c.via_tmin_good) throw InternalError("a_coefficients: the two formulas disagree");
  return c.via_gmin;
}

double speed_series_lower(double p, int h_max) {
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("speed_series_lower: p must lie in (0,1]");
  if (h_max < 0) throw InvalidParameter("speed_series_lower: h_max must be nonnegative");
  if (h_max > kMaxCoefficientOrder + 2) throw ResourceError("speed_series_lower: h_max beyond the configured ceiling");
  double s = 0.0;
  for (int h = 0; h <= h_max; ++h)
    for (int l = 1; l <= h + 1; ++l) {
      std::int64_t cnt = 0;
      for_each_word(h, l, [&](const Word& w) {
        if (in_T_min(w) && is_good(w)) ++cnt;
      });
      if (cnt) s += static_cast<double>(cnt) * std::pow(p, l) * std::pow(1.0 - p, h);
    }
  return s;
}

}  // namespace lpp::words
